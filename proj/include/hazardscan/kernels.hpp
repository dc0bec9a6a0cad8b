#pragma once

// Data-parallel inner loops. Every kernel has a straightforward serial
// reference and an OpenMP version; the library calls the parallel one and the
// tests hold the two against each other.
//
// Parallel results do not depend on the thread count. Integer counts are
// merged exactly. Floating-point reductions use a fixed block partition of the
// rows that depends only on the row count, and the blocks are summed in order.

#include "hazardscan/corpus.hpp"
#include "hazardscan/sparse.hpp"

#include <cmath>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace hazard {

class Vocabulary;

inline double sigmoid(double z) {
    if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
    const double e = std::exp(z);
    return e / (1.0 + e);
}

/// log(1 + e^z) without overflow.
inline double softplus(double z) {
    return z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
}

namespace kernels {

using TermCounts = std::unordered_map<std::string, std::size_t>;

/// Objective value and gradient; grad has k+1 entries, the last being the
/// intercept.
struct LossGradient {
    double loss = 0.0;
    std::vector<double> grad;
};

struct ClassCounts {
    std::vector<std::size_t> positive;
    std::vector<std::size_t> negative;
};

/// View of a weighted, labeled design matrix. All spans share one length.
struct DatasetView {
    std::span<const SparseVector> rows;
    std::span<const int> labels;
    std::span<const double> weights;
};

/// Weighted mean log loss plus (lambda/2)|theta|^2. The intercept is not
/// penalized.
struct ObjectiveArgs {
    std::span<const double> theta;
    double intercept = 0.0;
    double lambda = 0.0;
};

/// Rows per reduction block for `n` rows. Depends only on `n`.
std::size_t reduction_block_size(std::size_t n);

namespace serial {

TermCounts document_frequencies(std::span<const Document> docs);
std::vector<SparseVector> vectorize_all(const Vocabulary& vocab, std::span<const Document> docs);
std::vector<double> linear_scores(std::span<const double> theta, double intercept, std::span<const SparseVector> rows);
LossGradient loss_and_gradient(const ObjectiveArgs& args, const DatasetView& data);
ClassCounts class_counts(std::span<const SparseVector> rows, std::span<const int> labels, std::size_t k);

} // namespace serial

namespace parallel {

TermCounts document_frequencies(std::span<const Document> docs);
std::vector<SparseVector> vectorize_all(const Vocabulary& vocab, std::span<const Document> docs);
std::vector<double> linear_scores(std::span<const double> theta, double intercept, std::span<const SparseVector> rows);
LossGradient loss_and_gradient(const ObjectiveArgs& args, const DatasetView& data);
ClassCounts class_counts(std::span<const SparseVector> rows, std::span<const int> labels, std::size_t k);

} // namespace parallel

/// Number of OpenMP threads the parallel kernels will use (1 without OpenMP).
int max_threads();

/// Sets the OpenMP thread count for the lifetime of the scope.
class ThreadCountScope {
public:
    explicit ThreadCountScope(int threads);
    ~ThreadCountScope();
    ThreadCountScope(const ThreadCountScope&) = delete;
    ThreadCountScope& operator=(const ThreadCountScope&) = delete;

private:
    int previous_;
};

} // namespace kernels
} // namespace hazard
