#pragma once

#include "hazardscan/kernels.hpp"
#include "hazardscan/sparse.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace hazard {

class Vocabulary;

/// Logistic regression coefficients over k features.
struct LinearModel {
    std::vector<double> theta;
    double intercept = 0.0;
    double lambda = 0.0;
    bool trained = false;

    std::size_t dimension() const { return theta.size(); }

    friend bool operator==(const LinearModel&, const LinearModel&) = default;
};

/// Rows with a binary label and a positive instance weight, all of one
/// dimension.
struct WeightedDataset {
    std::size_t dimension = 0;
    std::vector<SparseVector> rows;
    std::vector<int> labels;
    std::vector<double> weights;

    std::size_t size() const { return rows.size(); }
    bool empty() const { return rows.empty(); }
    void add(SparseVector x, int label, double weight);
    std::size_t count(int label) const;
    kernels::DatasetView view() const { return {rows, labels, weights}; }
};

struct ClassWeights {
    double positive;
    double negative;
};

/// Inverse class-frequency weights: (n+p)/(2p) for positives, (n+p)/(2n) for
/// negatives.
ClassWeights class_weights(std::size_t positives, std::size_t negatives);

struct FitParams {
    double lambda = 1.0;
    double learning_rate = 0.1;
    int epochs = 200;
    /// Stop once an epoch improves the objective by less than this.
    double tolerance = 1e-8;
};

/// Full-batch gradient descent from theta = 0 on
///   (1/N) sum_i w_i * logloss_i + (lambda/2) |theta|^2.
/// A step that would raise the objective is retried at half the step size,
/// and the smaller step is kept for the remaining epochs. When
/// `objective_trace` is given it receives the objective before the first
/// epoch and after every accepted step.
LinearModel fit(const WeightedDataset& data, const FitParams& params, std::vector<double>* objective_trace = nullptr);

double predict_proba(const LinearModel& model, const SparseVector& x);

/// Probabilities for many rows; uses the parallel scoring kernel.
std::vector<double> predict_proba(const LinearModel& model, std::span<const SparseVector> rows);

/// Objective and its gradient w.r.t. (theta, intercept) at `model`, with
/// model.lambda as the penalty.
kernels::LossGradient loss_and_gradient(const LinearModel& model, const WeightedDataset& data);

void write_model(std::ostream& out, const LinearModel& model);
LinearModel read_model(std::istream& in);
void save_model(const std::filesystem::path& path, const LinearModel& model);
LinearModel load_model(const std::filesystem::path& path);

struct TermCoefficient {
    std::string term;
    double coefficient;
};

/// The `count` largest coefficients, descending, ties by index.
std::vector<TermCoefficient> top_terms(const LinearModel& model, const Vocabulary& vocab, std::size_t count);
void write_top_terms_csv(std::ostream& out, const std::vector<TermCoefficient>& terms);

} // namespace hazard
