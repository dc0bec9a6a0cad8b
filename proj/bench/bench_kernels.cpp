// Serial reference kernels against their OpenMP counterparts on a synthetic
// corpus of the default shape.

#include "hazardscan/kernels.hpp"
#include "hazardscan/linmodel.hpp"
#include "hazardscan/log.hpp"
#include "hazardscan/synthgen.hpp"
#include "hazardscan/vocabulary.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace hazard;

namespace {

struct Workload {
    SynthCorpus corpus;
    Vocabulary vocab;
    std::vector<SparseVector> rows;
    std::vector<int> labels;
    std::vector<double> weights;
    std::vector<double> theta;
};

const Workload& workload() {
    static const Workload w = [] {
        set_warning_sink({});
        Workload w;
        SynthConfig cfg;
        cfg.n_reviews = 50000;
        w.corpus = generate(cfg);
        w.vocab = build_vocabulary(w.corpus.reviews, {});
        w.rows = vectorize_corpus(w.corpus.reviews, w.vocab);
        w.labels = w.corpus.review_labels;
        w.weights.assign(w.rows.size(), 1.0);
        std::mt19937_64 rng(1);
        std::normal_distribution<double> n(0.0, 0.1);
        for (std::size_t j = 0; j < w.vocab.size(); ++j) w.theta.push_back(n(rng));
        return w;
    }();
    return w;
}

template <auto Fn>
void doc_freq(benchmark::State& state) {
    const auto& docs = workload().corpus.reviews.documents;
    for (auto _ : state) benchmark::DoNotOptimize(Fn(docs));
    state.SetItemsProcessed(state.iterations() * static_cast<long>(docs.size()));
}

template <auto Fn>
void vectorize(benchmark::State& state) {
    const auto& w = workload();
    for (auto _ : state) benchmark::DoNotOptimize(Fn(w.vocab, w.corpus.reviews.documents));
    state.SetItemsProcessed(state.iterations() * static_cast<long>(w.rows.size()));
}

template <auto Fn>
void gradient(benchmark::State& state) {
    const auto& w = workload();
    const kernels::ObjectiveArgs args{w.theta, -1.0, 1.0};
    const kernels::DatasetView view{w.rows, w.labels, w.weights};
    for (auto _ : state) benchmark::DoNotOptimize(Fn(args, view));
    state.SetItemsProcessed(state.iterations() * static_cast<long>(w.rows.size()));
}

template <auto Fn>
void scores(benchmark::State& state) {
    const auto& w = workload();
    for (auto _ : state) benchmark::DoNotOptimize(Fn(w.theta, -1.0, w.rows));
    state.SetItemsProcessed(state.iterations() * static_cast<long>(w.rows.size()));
}

template <auto Fn>
void class_counts(benchmark::State& state) {
    const auto& w = workload();
    for (auto _ : state) benchmark::DoNotOptimize(Fn(w.rows, w.labels, w.vocab.size()));
    state.SetItemsProcessed(state.iterations() * static_cast<long>(w.rows.size()));
}

} // namespace

BENCHMARK(doc_freq<kernels::serial::document_frequencies>)->Name("document_frequencies/serial")->Unit(benchmark::kMillisecond);
BENCHMARK(doc_freq<kernels::parallel::document_frequencies>)->Name("document_frequencies/parallel")->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(vectorize<kernels::serial::vectorize_all>)->Name("vectorize_all/serial")->Unit(benchmark::kMillisecond);
BENCHMARK(vectorize<kernels::parallel::vectorize_all>)->Name("vectorize_all/parallel")->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(gradient<kernels::serial::loss_and_gradient>)->Name("loss_and_gradient/serial")->Unit(benchmark::kMillisecond);
BENCHMARK(gradient<kernels::parallel::loss_and_gradient>)->Name("loss_and_gradient/parallel")->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(scores<kernels::serial::linear_scores>)->Name("linear_scores/serial")->Unit(benchmark::kMillisecond);
BENCHMARK(scores<kernels::parallel::linear_scores>)->Name("linear_scores/parallel")->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(class_counts<kernels::serial::class_counts>)->Name("class_counts/serial")->Unit(benchmark::kMillisecond);
BENCHMARK(class_counts<kernels::parallel::class_counts>)->Name("class_counts/parallel")->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
