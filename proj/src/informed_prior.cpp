#include "hazardscan/informed_prior.hpp"
#include "hazardscan/csv.hpp"
#include "hazardscan/error.hpp"
#include "hazardscan/vocabulary.hpp"

#include <algorithm>
#include <istream>
#include <ostream>

#include <fmt/format.h>

namespace hazard {

std::size_t PredictedCorpus::positives() const {
    return static_cast<std::size_t>(std::count(labels.begin(), labels.end(), 1));
}

std::size_t PriorTransform::positive_count() const {
    return static_cast<std::size_t>(std::count(positive_group.begin(), positive_group.end(), true));
}

SmoothedConditional smoothed_conditional(std::size_t n1, std::size_t n0) {
    const double denom = 2.0 + static_cast<double>(n1) + static_cast<double>(n0);
    return {(1.0 + static_cast<double>(n1)) / denom, (1.0 + static_cast<double>(n0)) / denom};
}

PredictedCorpus predict_unlabeled(const LinearModel& model, const Corpus& unlabeled,
                                  std::span<const SparseVector> rows, double threshold) {
    if (rows.size() != unlabeled.size()) throw Error("predict_unlabeled: rows do not match the corpus");
    PredictedCorpus out;
    out.threshold = threshold;
    out.probabilities = predict_proba(model, rows);
    out.labels.reserve(rows.size());
    out.ids.reserve(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        out.ids.push_back(unlabeled.documents[i].id);
        out.labels.push_back(out.probabilities[i] >= threshold ? 1 : 0);
    }
    return out;
}

PredictedCorpus predict_unlabeled(const LinearModel& model, const Corpus& unlabeled, const Vocabulary& vocab,
                                  double threshold) {
    const auto rows = vectorize_corpus(unlabeled, vocab);
    return predict_unlabeled(model, unlabeled, rows, threshold);
}

FeatureClassCounts feature_class_counts(std::span<const SparseVector> rows, const PredictedCorpus& predicted,
                                        std::size_t k) {
    if (rows.size() != predicted.size()) throw Error("feature_class_counts: rows do not match the predictions");
    for (const auto& x : rows)
        if (x.dimension != k) throw Error(fmt::format("feature_class_counts: row dimension {} != {}", x.dimension, k));
    return kernels::parallel::class_counts(rows, predicted.labels, k);
}

PriorTransform compute_transform(const LinearModel& model, const FeatureClassCounts& counts) {
    const std::size_t k = model.dimension();
    if (k == 0) throw Error("compute_transform: empty vocabulary");
    if (counts.positive.size() != k || counts.negative.size() != k)
        throw Error("compute_transform: counts do not cover every feature");

    PriorTransform t;
    t.positive_group.resize(k);
    t.n1 = counts.positive;
    t.n0 = counts.negative;
    t.p1.resize(k);
    t.p0.resize(k);
    t.p_hat.resize(k);
    t.factor.resize(k);

    double sum_pos = 0.0, sum_neg = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
        t.positive_group[j] = model.theta[j] >= 0.0;
        const auto p = smoothed_conditional(t.n1[j], t.n0[j]);
        t.p1[j] = p.positive;
        t.p0[j] = p.negative;
        if (t.positive_group[j])
            sum_pos += p.positive;
        else
            sum_neg += p.negative;
    }
    for (std::size_t j = 0; j < k; ++j)
        t.p_hat[j] = t.positive_group[j] ? t.p1[j] / sum_pos : t.p0[j] / sum_neg;

    // Each non-empty group's normalized values sum to one, so the sum in the
    // denominator of rho is the number of non-empty groups.
    const std::size_t groups = (t.positive_count() > 0 ? 1 : 0) + (t.negative_count() > 0 ? 1 : 0);
    t.rho = static_cast<double>(k) / static_cast<double>(groups);
    for (std::size_t j = 0; j < k; ++j) t.factor[j] = t.rho * t.p_hat[j];
    return t;
}

SparseVector apply_transform(const SparseVector& x, const PriorTransform& transform) {
    if (x.dimension != transform.dimension())
        throw Error(fmt::format("apply_transform: vector dimension {} != transform dimension {}", x.dimension,
                                transform.dimension()));
    if (!x.is_binary()) throw Error("apply_transform: input vector is not binary");
    SparseVector out = x;
    for (auto& e : out.entries) e.value = transform.factor[e.index];
    return out;
}

std::vector<SparseVector> apply_transform(std::span<const SparseVector> rows, const PriorTransform& transform) {
    std::vector<SparseVector> out;
    out.reserve(rows.size());
    for (const auto& x : rows) out.push_back(apply_transform(x, transform));
    return out;
}

std::vector<double> score_rows(const LinearModel& model, const PriorTransform* transform,
                               std::span<const SparseVector> rows) {
    if (!transform) return predict_proba(model, rows);
    const auto transformed = apply_transform(rows, *transform);
    return predict_proba(model, transformed);
}

InformedFit fit_informed(const Corpus& positives, std::span<const SparseVector> positive_rows,
                         const Corpus& unlabeled, std::span<const SparseVector> unlabeled_rows, const PUConfig& cfg,
                         const FitParams& params, double threshold) {
    InformedFit out;
    out.training = build_training_set(positives, positive_rows, unlabeled, unlabeled_rows, cfg);
    out.baseline = fit(out.training.data, params);
    out.predicted = predict_unlabeled(out.baseline, unlabeled, unlabeled_rows, threshold);
    const auto counts = feature_class_counts(unlabeled_rows, out.predicted, out.baseline.dimension());
    out.transform = compute_transform(out.baseline, counts);

    WeightedDataset transformed;
    transformed.dimension = out.training.data.dimension;
    transformed.rows = apply_transform(out.training.data.rows, out.transform);
    transformed.labels = out.training.data.labels;
    transformed.weights = out.training.data.weights;
    out.informed = fit(transformed, params);
    return out;
}

InformedFit fit_informed(const Corpus& positives, const Corpus& unlabeled, const Vocabulary& vocab,
                         const PUConfig& cfg, const FitParams& params, double threshold) {
    const auto prows = vectorize_corpus(positives, vocab);
    const auto urows = vectorize_corpus(unlabeled, vocab);
    return fit_informed(positives, prows, unlabeled, urows, cfg, params, threshold);
}

void write_transform_csv(std::ostream& out, const PriorTransform& t, const Vocabulary& vocab) {
    if (vocab.size() != t.dimension()) throw Error("write_transform_csv: vocabulary and transform differ in size");
    out << "term,group,n_j1,n_j0,p,p_hat,factor\n";
    for (std::size_t j = 0; j < t.dimension(); ++j) {
        const bool pos = t.positive_group[j];
        out << fmt::format("{},{},{},{},{:.17g},{:.17g},{:.17g}\n", csv::escape(vocab.term(static_cast<FeatureIndex>(j))),
                           pos ? '+' : '-', t.n1[j], t.n0[j], pos ? t.p1[j] : t.p0[j], t.p_hat[j], t.factor[j]);
    }
}

PriorTransform read_transform_csv(std::istream& in, const Vocabulary& vocab) {
    const auto table = csv::read(in, "transform");
    const auto c_term = table.column("term"), c_group = table.column("group"), c_n1 = table.column("n_j1"),
               c_n0 = table.column("n_j0"), c_phat = table.column("p_hat"), c_factor = table.column("factor");
    const std::size_t k = vocab.size();
    if (table.rows.size() != k)
        throw Error(fmt::format("transform: {} rows for a vocabulary of {} terms", table.rows.size(), k));

    PriorTransform t;
    t.positive_group.resize(k);
    t.n1.resize(k);
    t.n0.resize(k);
    t.p1.resize(k);
    t.p0.resize(k);
    t.p_hat.resize(k);
    t.factor.resize(k);
    for (std::size_t j = 0; j < k; ++j) {
        const auto& row = table.rows[j];
        if (row[c_term] != vocab.term(static_cast<FeatureIndex>(j)))
            throw Error(fmt::format("transform row {}: term '{}' does not match vocabulary term '{}'", j + 1,
                                    row[c_term], vocab.term(static_cast<FeatureIndex>(j))));
        if (row[c_group] != "+" && row[c_group] != "-")
            throw Error(fmt::format("transform row {}: group must be + or -", j + 1));
        try {
            t.positive_group[j] = row[c_group] == "+";
            t.n1[j] = std::stoull(row[c_n1]);
            t.n0[j] = std::stoull(row[c_n0]);
            t.p_hat[j] = std::stod(row[c_phat]);
            t.factor[j] = std::stod(row[c_factor]);
        } catch (const std::exception&) {
            throw Error(fmt::format("transform row {}: bad number", j + 1));
        }
        if (!(t.factor[j] > 0.0)) throw Error(fmt::format("transform row {}: factor must be positive", j + 1));
        const auto p = smoothed_conditional(t.n1[j], t.n0[j]);
        t.p1[j] = p.positive;
        t.p0[j] = p.negative;
    }
    const std::size_t groups = (t.positive_count() > 0 ? 1 : 0) + (t.negative_count() > 0 ? 1 : 0);
    t.rho = k == 0 ? 1.0 : static_cast<double>(k) / static_cast<double>(groups);
    return t;
}

} // namespace hazard
