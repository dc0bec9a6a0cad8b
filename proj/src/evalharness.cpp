#include "hazardscan/evalharness.hpp"
#include "hazardscan/error.hpp"
#include "hazardscan/vocabulary.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <ostream>

#include <fmt/format.h>

namespace hazard {

namespace {

void check_lengths(std::span<const double> scores, std::span<const int> gold) {
    if (scores.size() != gold.size())
        throw Error(fmt::format("metrics: {} scores but {} labels", scores.size(), gold.size()));
    if (scores.empty()) throw Error("metrics: no items");
    for (int g : gold)
        if (g != 0 && g != 1) throw Error("metrics: labels must be 0 or 1");
}

std::vector<std::size_t> order_by_score_desc(std::span<const double> scores) {
    std::vector<std::size_t> order(scores.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
    return order;
}

TrialResult evaluate_model(const LinearModel& model, const PriorTransform* transform, const ExperimentData& data,
                           double threshold, std::uint64_t seed, std::vector<RocPoint>* roc) {
    const auto scores = score_rows(model, transform, data.eval_rows);
    TrialResult r;
    r.seed = seed;
    r.auc = roc_auc(scores, data.eval_labels);
    r.metrics = confusion_metrics(scores, data.eval_labels, threshold);
    if (roc) *roc = roc_curve(scores, data.eval_labels);
    return r;
}

void finalize(EvalReport& report) {
    std::vector<double> auc, f1, p, r;
    for (const auto& t : report.trials) {
        auc.push_back(t.auc);
        f1.push_back(t.metrics.f1);
        p.push_back(t.metrics.precision);
        r.push_back(t.metrics.recall);
    }
    report.auc = summarize(auc);
    report.f1 = summarize(f1);
    report.precision = summarize(p);
    report.recall = summarize(r);
}

} // namespace

ConfusionMetrics confusion_metrics(std::span<const double> scores, std::span<const int> gold, double threshold) {
    check_lengths(scores, gold);
    std::size_t tp = 0, fp = 0, fn = 0;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        const bool predicted = scores[i] >= threshold;
        if (predicted && gold[i]) ++tp;
        else if (predicted) ++fp;
        else if (gold[i]) ++fn;
    }
    ConfusionMetrics m;
    m.precision = tp + fp > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fp) : 0.0;
    m.recall = tp + fn > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fn) : 0.0;
    m.f1 = m.precision + m.recall > 0.0 ? 2.0 * m.precision * m.recall / (m.precision + m.recall) : 0.0;
    return m;
}

double roc_auc(std::span<const double> scores, std::span<const int> gold) {
    check_lengths(scores, gold);
    const std::size_t n = scores.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

    // Twice the rank sum of the positives, with tied scores sharing the
    // average rank; every quantity stays an exact integer.
    std::uint64_t twice_rank_sum = 0;
    std::uint64_t positives = 0;
    for (std::size_t i = 0; i < n;) {
        std::size_t j = i;
        while (j < n && scores[order[j]] == scores[order[i]]) ++j;
        const std::uint64_t twice_avg_rank = (i + 1) + j;  // ranks i+1..j
        for (std::size_t t = i; t < j; ++t)
            if (gold[order[t]]) {
                twice_rank_sum += twice_avg_rank;
                ++positives;
            }
        i = j;
    }
    const std::uint64_t negatives = n - positives;
    if (positives == 0 || negatives == 0) throw Error("roc_auc: both classes must be present");
    const std::uint64_t numerator = twice_rank_sum - positives * (positives + 1);
    return static_cast<double>(numerator) / static_cast<double>(2 * positives * negatives);
}

std::vector<RocPoint> roc_curve(std::span<const double> scores, std::span<const int> gold) {
    check_lengths(scores, gold);
    const auto order = order_by_score_desc(scores);
    const double pos = static_cast<double>(std::count(gold.begin(), gold.end(), 1));
    const double neg = static_cast<double>(gold.size()) - pos;
    if (pos == 0 || neg == 0) throw Error("roc_curve: both classes must be present");
    std::vector<RocPoint> curve{{0.0, 0.0}};
    double tp = 0, fp = 0;
    for (std::size_t i = 0; i < order.size();) {
        std::size_t j = i;
        while (j < order.size() && scores[order[j]] == scores[order[i]]) {
            (gold[order[j]] ? tp : fp) += 1.0;
            ++j;
        }
        curve.push_back({fp / neg, tp / pos});
        i = j;
    }
    return curve;
}

std::string to_string(Method m) { return m == Method::baseline ? "baseline" : "informed"; }

Method parse_method(std::string_view name) {
    if (name == "baseline") return Method::baseline;
    if (name == "informed") return Method::informed;
    throw Error(fmt::format("unknown method '{}' (expected baseline or informed)", name));
}

std::string tau_label(std::optional<int> tau) { return tau ? std::to_string(*tau) : "none"; }

MetricSummary summarize(std::span<const double> values) {
    MetricSummary s;
    if (values.empty()) return s;
    const double n = static_cast<double>(values.size());
    s.mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
    if (values.size() > 1) {
        double ss = 0.0;
        for (double v : values) ss += (v - s.mean) * (v - s.mean);
        s.std_error = std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
    }
    return s;
}

ExperimentData ExperimentData::prepare(const Corpus& positives, const Corpus& unlabeled, const LabeledReviews& eval,
                                       const Vocabulary& vocab) {
    ExperimentData d;
    d.positives = &positives;
    d.unlabeled = &unlabeled;
    d.positive_rows = vectorize_corpus(positives, vocab);
    d.unlabeled_rows = vectorize_corpus(unlabeled, vocab);
    d.eval_rows = vectorize_corpus(eval.reviews, vocab);
    d.eval_labels = eval.labels;
    return d;
}

std::vector<EvalReport> run_trials(const ExperimentData& data, const TrialOptions& options) {
    if (options.trials < 1) throw Error("run_trials: trials must be at least 1");
    if (options.methods.empty()) throw Error("run_trials: no methods requested");
    if (!data.positives || !data.unlabeled) throw Error("run_trials: experiment data not prepared");
    const bool want_informed =
        std::find(options.methods.begin(), options.methods.end(), Method::informed) != options.methods.end();

    std::vector<EvalReport> reports;
    for (const auto& point : options.grid) {
        std::map<Method, EvalReport> by_method;
        for (auto m : options.methods) {
            by_method[m].method = m;
            by_method[m].grid = point;
        }
        for (int t = 0; t < options.trials; ++t) {
            PUConfig cfg{point.tau, point.num_negatives, options.base_seed + static_cast<std::uint64_t>(t)};
            auto* roc_base = t == 0 && by_method.count(Method::baseline) ? &by_method[Method::baseline].roc : nullptr;
            if (want_informed) {
                // the informed pipeline fits the baseline on the same sample
                const auto result = fit_informed(*data.positives, data.positive_rows, *data.unlabeled,
                                                 data.unlabeled_rows, cfg, options.fit, options.threshold);
                auto& inf = by_method[Method::informed];
                inf.trials.push_back(evaluate_model(result.informed, &result.transform, data, options.threshold,
                                                    cfg.seed, t == 0 ? &inf.roc : nullptr));
                if (by_method.count(Method::baseline))
                    by_method[Method::baseline].trials.push_back(
                        evaluate_model(result.baseline, nullptr, data, options.threshold, cfg.seed, roc_base));
            } else {
                const auto set = build_training_set(*data.positives, data.positive_rows, *data.unlabeled,
                                                    data.unlabeled_rows, cfg);
                const auto model = fit(set.data, options.fit);
                by_method[Method::baseline].trials.push_back(
                    evaluate_model(model, nullptr, data, options.threshold, cfg.seed, roc_base));
            }
        }
        for (auto m : options.methods) {
            auto& report = by_method[m];
            finalize(report);
            reports.push_back(std::move(report));
        }
    }
    return reports;
}

std::vector<EvalReport> run_trials(const Corpus& positives, const Corpus& unlabeled, const Vocabulary& vocab,
                                   const LabeledReviews& eval, const TrialOptions& options) {
    const auto data = ExperimentData::prepare(positives, unlabeled, eval, vocab);
    return run_trials(data, options);
}

void write_results_csv(std::ostream& out, const std::vector<EvalReport>& reports) {
    out << "method,tau,num_neg,auc,auc_se,f1,f1_se,precision,precision_se,recall,recall_se\n";
    for (const auto& r : reports)
        out << fmt::format("{},{},{},{:.6f},{:.6f},{:.6f},{:.6f},{:.6f},{:.6f},{:.6f},{:.6f}\n", to_string(r.method),
                           tau_label(r.grid.tau), r.grid.num_negatives, r.auc.mean, r.auc.std_error, r.f1.mean,
                           r.f1.std_error, r.precision.mean, r.precision.std_error, r.recall.mean,
                           r.recall.std_error);
}

void write_roc_csv(std::ostream& out, const std::vector<RocPoint>& roc) {
    out << "fpr,tpr\n";
    for (const auto& p : roc) out << fmt::format("{:.6f},{:.6f}\n", p.fpr, p.tpr);
}

std::vector<std::string> describe_tau_trend(const std::vector<EvalReport>& reports) {
    std::vector<std::string> lines;
    for (auto method : {Method::baseline, Method::informed}) {
        // keyed by (num_neg, tau) so each s value gets its own trend
        std::map<std::size_t, std::map<int, double>> series;
        for (const auto& r : reports)
            if (r.method == method && r.grid.tau) series[r.grid.num_negatives][*r.grid.tau] = r.auc.mean;
        for (const auto& [s, by_tau] : series) {
            if (by_tau.size() < 2) continue;
            bool nondecreasing = true;
            double prev = -1.0;
            std::string trail;
            for (const auto& [tau, auc] : by_tau) {
                if (auc < prev) nondecreasing = false;
                prev = auc;
                trail += fmt::format("{}tau={}:{:.4f}", trail.empty() ? "" : " ", tau, auc);
            }
            lines.push_back(fmt::format("{} s={}: AUC {} in tau ({})", to_string(method), s,
                                        nondecreasing ? "non-decreasing" : "not monotone", trail));
        }
    }
    return lines;
}

} // namespace hazard
