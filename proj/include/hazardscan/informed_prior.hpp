#pragma once

#include "hazardscan/corpus.hpp"
#include "hazardscan/kernels.hpp"
#include "hazardscan/linmodel.hpp"
#include "hazardscan/pu_train.hpp"
#include "hazardscan/sparse.hpp"

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace hazard {

class Vocabulary;

/// Hard labels assigned by a classifier to every unlabeled review. The
/// feature rows stay with the caller; entry i here describes row i there.
struct PredictedCorpus {
    std::vector<std::string> ids;
    std::vector<double> probabilities;
    std::vector<int> labels;
    double threshold = 0.5;

    std::size_t size() const { return labels.size(); }
    std::size_t positives() const;
};

/// Per feature j: n_j1 and n_j0, the number of unlabeled documents containing
/// j that were predicted positive and negative.
using FeatureClassCounts = kernels::ClassCounts;

/// Per-feature replacement values derived from the smoothed class-conditional
/// probabilities of the predicted corpus.
///
/// Features with theta_j >= 0 form the positive group and use p_j1; the rest
/// use p_j0. Within a group the conditionals are normalized to sum to one,
/// then every normalized value is scaled by rho so that the factors over all
/// k features average exactly one.
struct PriorTransform {
    std::vector<bool> positive_group;
    std::vector<std::size_t> n1;
    std::vector<std::size_t> n0;
    std::vector<double> p1;
    std::vector<double> p0;
    /// Group-normalized conditional of the feature's own group.
    std::vector<double> p_hat;
    std::vector<double> factor;
    double rho = 1.0;

    std::size_t dimension() const { return factor.size(); }
    std::size_t positive_count() const;
    std::size_t negative_count() const { return dimension() - positive_count(); }
};

struct SmoothedConditional {
    double positive;
    double negative;
};

/// Laplace-smoothed p(y=c | x_j=1): (1+n_jc) / (2+n_j1+n_j0).
SmoothedConditional smoothed_conditional(std::size_t n1, std::size_t n0);

/// Labels every row at `threshold`; a probability equal to the threshold is
/// labeled positive.
PredictedCorpus predict_unlabeled(const LinearModel& model, const Corpus& unlabeled,
                                  std::span<const SparseVector> rows, double threshold = 0.5);
PredictedCorpus predict_unlabeled(const LinearModel& model, const Corpus& unlabeled, const Vocabulary& vocab,
                                  double threshold = 0.5);

FeatureClassCounts feature_class_counts(std::span<const SparseVector> rows, const PredictedCorpus& predicted,
                                        std::size_t k);

PriorTransform compute_transform(const LinearModel& model, const FeatureClassCounts& counts);

/// Replaces each stored 1 with the feature's factor. The input must be binary.
SparseVector apply_transform(const SparseVector& x, const PriorTransform& transform);
std::vector<SparseVector> apply_transform(std::span<const SparseVector> rows, const PriorTransform& transform);

/// Probabilities from `model`, transforming the binary rows first when a
/// transform is given.
std::vector<double> score_rows(const LinearModel& model, const PriorTransform* transform,
                               std::span<const SparseVector> rows);

struct InformedFit {
    TrainingSet training;
    LinearModel baseline;
    PredictedCorpus predicted;
    PriorTransform transform;
    LinearModel informed;
};

/// Baseline fit, prediction over all of `unlabeled`, transform, refit on the
/// transformed baseline training rows with the same fit parameters.
InformedFit fit_informed(const Corpus& positives, std::span<const SparseVector> positive_rows,
                         const Corpus& unlabeled, std::span<const SparseVector> unlabeled_rows, const PUConfig& cfg,
                         const FitParams& params, double threshold = 0.5);
InformedFit fit_informed(const Corpus& positives, const Corpus& unlabeled, const Vocabulary& vocab,
                         const PUConfig& cfg, const FitParams& params, double threshold = 0.5);

/// CSV columns: term,group,n_j1,n_j0,p,p_hat,factor. `p` is the conditional
/// of the feature's group.
void write_transform_csv(std::ostream& out, const PriorTransform& transform, const Vocabulary& vocab);
PriorTransform read_transform_csv(std::istream& in, const Vocabulary& vocab);

} // namespace hazard
