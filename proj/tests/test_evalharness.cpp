#include <doctest.h>

#include "hazardscan/error.hpp"
#include "hazardscan/evalharness.hpp"
#include "hazardscan/synthgen.hpp"
#include "hazardscan/vocabulary.hpp"
#include "oracles.hpp"

#include <cmath>
#include <random>
#include <sstream>

using namespace hazard;

TEST_SUITE("evalharness") {

TEST_CASE("confusion metrics on a small fixture") {
    // TP=3, FP=1, FN=1, TN=1
    const std::vector<double> scores{0.9, 0.8, 0.7, 0.6, 0.2, 0.1};
    const std::vector<int> gold{1, 1, 1, 0, 1, 0};
    const auto m = confusion_metrics(scores, gold);
    CHECK(m.precision == 0.75);
    CHECK(m.recall == 0.75);
    CHECK(m.f1 == 0.75);
}

TEST_CASE("threshold ties count as positive and zero denominators give zero") {
    const std::vector<double> scores{0.5, 0.4};
    const std::vector<int> gold{1, 0};
    const auto m = confusion_metrics(scores, gold, 0.5);
    CHECK(m.precision == 1.0);
    CHECK(m.recall == 1.0);

    const auto none = confusion_metrics(scores, gold, 0.99);
    CHECK(none.precision == 0.0);
    CHECK(none.recall == 0.0);
    CHECK(none.f1 == 0.0);

    const std::vector<int> no_pos{0, 0};
    CHECK(confusion_metrics(scores, no_pos).recall == 0.0);

    const auto all = confusion_metrics(scores, gold, 0.0);
    CHECK(all.recall == 1.0);
    CHECK(all.precision == 0.5);
}

TEST_CASE("AUC fixture") {
    const std::vector<double> scores{0.9, 0.8, 0.3, 0.2};
    const std::vector<int> gold{1, 0, 1, 0};
    CHECK(roc_auc(scores, gold) == 0.75);
    const std::vector<double> tied{0.5, 0.5};
    const std::vector<int> one_each{1, 0};
    CHECK(roc_auc(tied, one_each) == 0.5);
}

TEST_CASE("AUC equals exhaustive pair counting") {
    std::mt19937_64 rng(123);
    int checked = 0;
    while (checked < 200) {
        const std::size_t n = 2 + rng() % 7;
        std::vector<double> scores(n);
        std::vector<int> gold(n);
        int pos = 0;
        for (std::size_t i = 0; i < n; ++i) {
            scores[i] = static_cast<double>(rng() % 5) / 4.0;  // coarse, so ties are common
            gold[i] = static_cast<int>(rng() % 2);
            pos += gold[i];
        }
        if (pos == 0 || pos == static_cast<int>(n)) continue;
        ++checked;
        const double auc = roc_auc(scores, gold);
        CHECK(auc == oracle::auc_pair_count(scores, gold));

        std::vector<double> negated(scores), squashed(scores);
        for (auto& s : negated) s = -s;
        for (auto& s : squashed) s = std::exp(3.0 * s) - 7.0;
        CHECK(roc_auc(negated, gold) == doctest::Approx(1.0 - auc).epsilon(1e-15));
        CHECK(roc_auc(squashed, gold) == auc);
    }
}

TEST_CASE("AUC needs both classes") {
    const std::vector<double> scores{0.1, 0.2};
    const std::vector<int> gold{1, 1};
    CHECK_THROWS_AS(roc_auc(scores, gold), Error);
}

TEST_CASE("ROC curve runs from the origin to (1,1) monotonically") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> scores;
    std::vector<int> gold;
    for (int i = 0; i < 300; ++i) {
        gold.push_back(i % 3 == 0);
        scores.push_back(u(rng) + 0.3 * gold.back());
    }
    const auto roc = roc_curve(scores, gold);
    REQUIRE(roc.size() >= 2);
    CHECK(roc.front().fpr == 0.0);
    CHECK(roc.front().tpr == 0.0);
    CHECK(roc.back().fpr == 1.0);
    CHECK(roc.back().tpr == 1.0);
    double area = 0.0;
    for (std::size_t i = 1; i < roc.size(); ++i) {
        CHECK(roc[i].fpr >= roc[i - 1].fpr);
        CHECK(roc[i].tpr >= roc[i - 1].tpr);
        area += (roc[i].fpr - roc[i - 1].fpr) * (roc[i].tpr + roc[i - 1].tpr) / 2.0;
    }
    CHECK(area == doctest::Approx(roc_auc(scores, gold)).epsilon(1e-12));
}

TEST_CASE("summaries") {
    const std::vector<double> v{0.7, 0.8, 0.9};
    const auto s = summarize(v);
    CHECK(s.mean == doctest::Approx(0.8));
    CHECK(s.std_error == doctest::Approx(0.1 / std::sqrt(3.0)));
    const std::vector<double> one{0.42};
    CHECK(summarize(one).std_error == 0.0);
    CHECK(summarize(one).mean == 0.42);
}

TEST_CASE("method names and tau labels") {
    CHECK(parse_method("baseline") == Method::baseline);
    CHECK(parse_method("informed") == Method::informed);
    CHECK(to_string(Method::informed) == "informed");
    CHECK_THROWS_AS(parse_method("magic"), Error);
    CHECK(tau_label(std::nullopt) == "none");
    CHECK(tau_label(4) == "4");
}

TEST_CASE("trials on a small synthetic corpus") {
    SynthConfig cfg;
    cfg.seed = 4;
    cfg.n_complaints = 300;
    cfg.n_reviews = 6000;
    cfg.hazard_rate = 0.03;
    cfg.eval_positives = 60;
    cfg.eval_negatives = 240;
    const auto s = generate(cfg);
    const auto vocab = build_vocabulary(s.reviews, {10, 0.95});
    const auto data = ExperimentData::prepare(s.complaints, s.reviews, s.eval, vocab);

    TrialOptions opts;
    opts.methods = {Method::baseline, Method::informed};
    opts.grid = {GridPoint{std::nullopt, 2000}, GridPoint{5, 2000}};
    opts.trials = 2;
    opts.base_seed = 10;
    const auto reports = run_trials(data, opts);
    REQUIRE(reports.size() == 4);
    CHECK(reports[0].method == Method::baseline);
    CHECK(reports[1].method == Method::informed);
    CHECK_FALSE(reports[0].grid.tau.has_value());
    CHECK(reports[2].grid.tau == 5);
    for (const auto& r : reports) {
        REQUIRE(r.trials.size() == 2);
        CHECK(r.trials[0].seed == 10);
        CHECK(r.trials[1].seed == 11);
        CHECK(r.auc.mean > 0.5);
        CHECK(r.auc.mean <= 1.0);
        CHECK_FALSE(r.roc.empty());
    }

    std::ostringstream a, b;
    write_results_csv(a, reports);
    write_results_csv(b, run_trials(data, opts));
    CHECK(a.str() == b.str());
    CHECK(a.str().rfind("method,tau,num_neg,auc,auc_se,f1,f1_se,precision,precision_se,recall,recall_se\n", 0) == 0);
    CHECK(a.str().find("\nbaseline,none,2000,") != std::string::npos);

    opts.trials = 1;
    for (const auto& r : run_trials(data, opts)) CHECK(r.auc.std_error == 0.0);
    opts.trials = 0;
    CHECK_THROWS_AS(run_trials(data, opts), Error);
}

} // TEST_SUITE
