#include "hazardscan/kernels.hpp"
#include "hazardscan/tokenize.hpp"
#include "hazardscan/vocabulary.hpp"

#include <algorithm>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace hazard::kernels {

namespace {

std::vector<std::string> unique_terms(const Document& doc) {
    auto terms = ngram_terms(tokenize(doc.text));
    std::sort(terms.begin(), terms.end());
    terms.erase(std::unique(terms.begin(), terms.end()), terms.end());
    return terms;
}

double row_margin(std::span<const double> theta, double intercept, const SparseVector& x) {
    double z = intercept;
    for (const auto& e : x.entries) z += theta[e.index] * e.value;
    return z;
}

// Adds row i's weighted loss to `loss` and its gradient to `grad`.
void accumulate_row(const ObjectiveArgs& args, const DatasetView& data, std::size_t i, double& loss,
                    std::span<double> grad) {
    const SparseVector& x = data.rows[i];
    const double z = row_margin(args.theta, args.intercept, x);
    const double y = data.labels[i] ? 1.0 : 0.0;
    const double w = data.weights[i];
    loss += w * (softplus(z) - y * z);
    const double residual = w * (sigmoid(z) - y);
    for (const auto& e : x.entries) grad[e.index] += residual * e.value;
    grad[grad.size() - 1] += residual;
}

void finish_objective(const ObjectiveArgs& args, std::size_t n, LossGradient& out) {
    const double inv_n = 1.0 / static_cast<double>(n);
    out.loss *= inv_n;
    for (auto& g : out.grad) g *= inv_n;
    double sq = 0.0;
    for (std::size_t j = 0; j < args.theta.size(); ++j) {
        sq += args.theta[j] * args.theta[j];
        out.grad[j] += args.lambda * args.theta[j];
    }
    out.loss += 0.5 * args.lambda * sq;
}

} // namespace

std::size_t reduction_block_size(std::size_t n) {
    constexpr std::size_t min_block = 512;
    constexpr std::size_t max_blocks = 64;
    return std::max(min_block, (n + max_blocks - 1) / max_blocks);
}

int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

ThreadCountScope::ThreadCountScope([[maybe_unused]] int threads) : previous_(max_threads()) {
#ifdef _OPENMP
    omp_set_num_threads(std::max(1, threads));
#endif
}

ThreadCountScope::~ThreadCountScope() {
#ifdef _OPENMP
    omp_set_num_threads(previous_);
#endif
}

// ---------------------------------------------------------------------------
// serial reference

namespace serial {

TermCounts document_frequencies(std::span<const Document> docs) {
    TermCounts counts;
    for (const auto& doc : docs)
        for (auto& term : unique_terms(doc)) ++counts[std::move(term)];
    return counts;
}

std::vector<SparseVector> vectorize_all(const Vocabulary& vocab, std::span<const Document> docs) {
    std::vector<SparseVector> out;
    out.reserve(docs.size());
    for (const auto& doc : docs) out.push_back(vocab.vectorize(doc));
    return out;
}

std::vector<double> linear_scores(std::span<const double> theta, double intercept, std::span<const SparseVector> rows) {
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& x : rows) out.push_back(row_margin(theta, intercept, x));
    return out;
}

LossGradient loss_and_gradient(const ObjectiveArgs& args, const DatasetView& data) {
    LossGradient out;
    out.grad.assign(args.theta.size() + 1, 0.0);
    for (std::size_t i = 0; i < data.rows.size(); ++i) accumulate_row(args, data, i, out.loss, out.grad);
    finish_objective(args, data.rows.size(), out);
    return out;
}

ClassCounts class_counts(std::span<const SparseVector> rows, std::span<const int> labels, std::size_t k) {
    ClassCounts out{std::vector<std::size_t>(k, 0), std::vector<std::size_t>(k, 0)};
    for (std::size_t i = 0; i < rows.size(); ++i) {
        auto& target = labels[i] ? out.positive : out.negative;
        for (const auto& e : rows[i].entries) ++target[e.index];
    }
    return out;
}

} // namespace serial

// ---------------------------------------------------------------------------
// OpenMP

namespace parallel {

TermCounts document_frequencies(std::span<const Document> docs) {
    TermCounts merged;
    const auto n = static_cast<std::ptrdiff_t>(docs.size());
#pragma omp parallel
    {
        TermCounts local;
#pragma omp for schedule(dynamic, 256) nowait
        for (std::ptrdiff_t i = 0; i < n; ++i)
            for (auto& term : unique_terms(docs[static_cast<std::size_t>(i)])) ++local[std::move(term)];
#pragma omp critical(hazard_df_merge)
        {
            if (merged.empty()) {
                merged = std::move(local);
            } else {
                for (auto& [term, c] : local) merged[term] += c;
            }
        }
    }
    return merged;
}

std::vector<SparseVector> vectorize_all(const Vocabulary& vocab, std::span<const Document> docs) {
    std::vector<SparseVector> out(docs.size());
    const auto n = static_cast<std::ptrdiff_t>(docs.size());
#pragma omp parallel for schedule(dynamic, 256)
    for (std::ptrdiff_t i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = vocab.vectorize(docs[static_cast<std::size_t>(i)]);
    return out;
}

std::vector<double> linear_scores(std::span<const double> theta, double intercept, std::span<const SparseVector> rows) {
    std::vector<double> out(rows.size());
    const auto n = static_cast<std::ptrdiff_t>(rows.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i)
        out[static_cast<std::size_t>(i)] = row_margin(theta, intercept, rows[static_cast<std::size_t>(i)]);
    return out;
}

LossGradient loss_and_gradient(const ObjectiveArgs& args, const DatasetView& data) {
    const std::size_t n = data.rows.size();
    const std::size_t width = args.theta.size() + 1;
    const std::size_t block = reduction_block_size(n);
    const std::size_t blocks = (n + block - 1) / block;

    std::vector<double> block_loss(blocks, 0.0);
    std::vector<std::vector<double>> block_grad(blocks);
    const auto nb = static_cast<std::ptrdiff_t>(blocks);
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t b = 0; b < nb; ++b) {
        const auto ub = static_cast<std::size_t>(b);
        auto& grad = block_grad[ub];
        grad.assign(width, 0.0);
        const std::size_t end = std::min(n, (ub + 1) * block);
        for (std::size_t i = ub * block; i < end; ++i) accumulate_row(args, data, i, block_loss[ub], grad);
    }

    LossGradient out;
    out.grad.assign(width, 0.0);
    for (std::size_t b = 0; b < blocks; ++b) {
        out.loss += block_loss[b];
        for (std::size_t j = 0; j < width; ++j) out.grad[j] += block_grad[b][j];
    }
    finish_objective(args, n, out);
    return out;
}

ClassCounts class_counts(std::span<const SparseVector> rows, std::span<const int> labels, std::size_t k) {
    ClassCounts out{std::vector<std::size_t>(k, 0), std::vector<std::size_t>(k, 0)};
    const auto n = static_cast<std::ptrdiff_t>(rows.size());
#pragma omp parallel
    {
        std::vector<std::size_t> pos(k, 0), neg(k, 0);
#pragma omp for schedule(static) nowait
        for (std::ptrdiff_t i = 0; i < n; ++i) {
            const auto ui = static_cast<std::size_t>(i);
            auto& target = labels[ui] ? pos : neg;
            for (const auto& e : rows[ui].entries) ++target[e.index];
        }
#pragma omp critical(hazard_class_count_merge)
        for (std::size_t j = 0; j < k; ++j) {
            out.positive[j] += pos[j];
            out.negative[j] += neg[j];
        }
    }
    return out;
}

} // namespace parallel

} // namespace hazard::kernels
