#include <doctest.h>

#include "hazardscan/kernels.hpp"
#include "hazardscan/vocabulary.hpp"
#include "oracles.hpp"

#include <random>

using namespace hazard;

namespace {

struct KernelData {
    std::vector<SparseVector> rows;
    std::vector<int> labels;
    std::vector<double> weights;
    std::vector<double> theta;
};

KernelData make_random_data(std::uint64_t seed, std::size_t n, std::size_t k) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0), w(0.2, 3.0), value(0.1, 4.0);
    KernelData d;
    for (std::size_t i = 0; i < n; ++i) {
        auto x = oracle::random_binary(rng, k, 0.05);
        for (auto& e : x.entries) e.value = value(rng);
        d.rows.push_back(std::move(x));
        d.labels.push_back(static_cast<int>(rng() % 2));
        d.weights.push_back(w(rng));
    }
    for (std::size_t j = 0; j < k; ++j) d.theta.push_back(u(rng));
    return d;
}

std::vector<Document> random_docs(std::uint64_t seed, std::size_t n) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> len(1, 30), word(0, 60);
    std::vector<Document> docs;
    for (std::size_t i = 0; i < n; ++i) {
        std::string t;
        for (int j = len(rng); j > 0; --j) t += "w" + std::to_string(word(rng)) + (j % 7 == 0 ? ". " : " ");
        docs.push_back({"d" + std::to_string(i), t});
    }
    return docs;
}

} // namespace

TEST_SUITE("kernels") {

TEST_CASE("document frequencies: parallel equals serial") {
    const auto docs = random_docs(1, 3000);
    const auto s = kernels::serial::document_frequencies(docs);
    for (int threads : {1, 2, 4, 7}) {
        kernels::ThreadCountScope scope(threads);
        CHECK(kernels::parallel::document_frequencies(docs) == s);
    }
}

TEST_CASE("vectorize_all: parallel equals serial") {
    const auto docs = random_docs(2, 2000);
    Corpus c{docs, CorpusKind::unlabeled};
    const auto vocab = build_vocabulary(c, {3, 0.9});
    const auto s = kernels::serial::vectorize_all(vocab, docs);
    kernels::ThreadCountScope scope(4);
    CHECK(kernels::parallel::vectorize_all(vocab, docs) == s);
}

TEST_CASE("linear scores: parallel equals serial exactly") {
    const auto d = make_random_data(3, 5000, 50);
    const auto s = kernels::serial::linear_scores(d.theta, 0.3, d.rows);
    kernels::ThreadCountScope scope(3);
    CHECK(kernels::parallel::linear_scores(d.theta, 0.3, d.rows) == s);
}

TEST_CASE("loss and gradient: parallel matches serial and ignores thread count") {
    for (std::size_t n : {1u, 7u, 600u, 5000u, 40000u}) {
        const auto d = make_random_data(4 + n, n, 40);
        const kernels::ObjectiveArgs args{d.theta, -0.2, 0.7};
        const kernels::DatasetView view{d.rows, d.labels, d.weights};
        const auto s = kernels::serial::loss_and_gradient(args, view);

        kernels::LossGradient reference;
        {
            kernels::ThreadCountScope scope(1);
            reference = kernels::parallel::loss_and_gradient(args, view);
        }
        CHECK(reference.loss == doctest::Approx(s.loss).epsilon(1e-12));
        for (std::size_t j = 0; j < s.grad.size(); ++j)
            CHECK(reference.grad[j] == doctest::Approx(s.grad[j]).epsilon(1e-11).scale(1.0));

        for (int threads : {2, 4, 8}) {
            kernels::ThreadCountScope scope(threads);
            const auto p = kernels::parallel::loss_and_gradient(args, view);
            CHECK(p.loss == reference.loss);
            CHECK(p.grad == reference.grad);
        }
    }
}

TEST_CASE("loss matches the dense textbook objective") {
    const auto d = make_random_data(9, 300, 12);
    std::vector<std::vector<double>> dense;
    for (const auto& x : d.rows) dense.push_back(oracle::densify(x));
    const kernels::ObjectiveArgs args{d.theta, 0.4, 0.3};
    const auto s = kernels::serial::loss_and_gradient(args, {d.rows, d.labels, d.weights});
    CHECK(s.loss == doctest::Approx(oracle::objective(d.theta, 0.4, 0.3, dense, d.labels, d.weights)).epsilon(1e-12));
}

TEST_CASE("class counts: parallel equals serial") {
    const auto d = make_random_data(5, 8000, 100);
    const auto s = kernels::serial::class_counts(d.rows, d.labels, 100);
    for (int threads : {1, 3, 6}) {
        kernels::ThreadCountScope scope(threads);
        const auto p = kernels::parallel::class_counts(d.rows, d.labels, 100);
        CHECK(p.positive == s.positive);
        CHECK(p.negative == s.negative);
    }
}

TEST_CASE("reduction blocks depend only on the row count") {
    CHECK(kernels::reduction_block_size(10) == 512);
    CHECK(kernels::reduction_block_size(100000) == 1563);
    CHECK((100000 + 1562) / 1563 <= 64);
}

TEST_CASE("sigmoid and softplus stay finite at extreme margins") {
    CHECK(sigmoid(0.0) == 0.5);
    CHECK(sigmoid(800.0) == 1.0);
    CHECK(sigmoid(-800.0) >= 0.0);
    CHECK(softplus(800.0) == doctest::Approx(800.0));
    CHECK(softplus(-800.0) >= 0.0);
    CHECK(softplus(0.0) == doctest::Approx(std::log(2.0)));
}

} // TEST_SUITE
