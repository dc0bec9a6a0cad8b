#pragma once

#include "hazardscan/corpus.hpp"
#include "hazardscan/informed_prior.hpp"
#include "hazardscan/linmodel.hpp"
#include "hazardscan/pu_train.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace hazard {

class Vocabulary;

struct ConfusionMetrics {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
};

/// Precision, recall and F1 with score >= threshold predicted positive.
/// Precision is 0 when nothing is predicted positive; recall is 0 without
/// gold positives; F1 is 0 when precision + recall is 0.
ConfusionMetrics confusion_metrics(std::span<const double> scores, std::span<const int> gold, double threshold = 0.5);

/// Probability that a random positive outscores a random negative, ties
/// counting one half. Computed from average ranks in O(n log n).
double roc_auc(std::span<const double> scores, std::span<const int> gold);

struct RocPoint {
    double fpr;
    double tpr;
};

/// ROC curve from (0,0) to (1,1), one point per distinct score.
std::vector<RocPoint> roc_curve(std::span<const double> scores, std::span<const int> gold);

enum class Method { baseline, informed };
std::string to_string(Method m);
Method parse_method(std::string_view name);

struct GridPoint {
    std::optional<int> tau = 5;
    std::size_t num_negatives = 20000;
};

struct MetricSummary {
    double mean = 0.0;
    double std_error = 0.0;
};

/// Mean and standard error (sample standard deviation / sqrt(n)); the error
/// is 0 for a single value.
MetricSummary summarize(std::span<const double> values);

struct TrialResult {
    std::uint64_t seed = 0;
    double auc = 0.0;
    ConfusionMetrics metrics;
};

struct EvalReport {
    Method method = Method::baseline;
    GridPoint grid;
    std::vector<TrialResult> trials;
    MetricSummary auc, f1, precision, recall;
    /// ROC curve of the first trial.
    std::vector<RocPoint> roc;
};

struct TrialOptions {
    std::vector<Method> methods{Method::informed};
    std::vector<GridPoint> grid{GridPoint{}};
    int trials = 3;
    std::uint64_t base_seed = 0;
    FitParams fit;
    double threshold = 0.5;
};

/// Pre-vectorized inputs for repeated experiments.
struct ExperimentData {
    const Corpus* positives = nullptr;
    const Corpus* unlabeled = nullptr;
    std::vector<SparseVector> positive_rows;
    std::vector<SparseVector> unlabeled_rows;
    std::vector<SparseVector> eval_rows;
    std::vector<int> eval_labels;

    static ExperimentData prepare(const Corpus& positives, const Corpus& unlabeled, const LabeledReviews& eval,
                                  const Vocabulary& vocab);
};

/// For each grid point and method, runs `trials` pipelines with seeds
/// base_seed + t and evaluates them on the fixed evaluation set. Reports come
/// back grid-major, methods in the order requested.
std::vector<EvalReport> run_trials(const ExperimentData& data, const TrialOptions& options);
std::vector<EvalReport> run_trials(const Corpus& positives, const Corpus& unlabeled, const Vocabulary& vocab,
                                   const LabeledReviews& eval, const TrialOptions& options);

/// Columns: method,tau,num_neg,auc,auc_se,f1,f1_se,precision,precision_se,recall,recall_se.
void write_results_csv(std::ostream& out, const std::vector<EvalReport>& reports);
void write_roc_csv(std::ostream& out, const std::vector<RocPoint>& roc);

/// One line per method describing whether mean AUC is non-decreasing in tau
/// across the numeric tau values present.
std::vector<std::string> describe_tau_trend(const std::vector<EvalReport>& reports);

std::string tau_label(std::optional<int> tau);

} // namespace hazard
