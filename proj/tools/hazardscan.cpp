// hazardscan: command-line front end for the hazard-report pipeline.

#include "hazardscan/corpus.hpp"
#include "hazardscan/error.hpp"
#include "hazardscan/evalharness.hpp"
#include "hazardscan/informed_prior.hpp"
#include "hazardscan/linmodel.hpp"
#include "hazardscan/pu_train.hpp"
#include "hazardscan/recall_match.hpp"
#include "hazardscan/synthgen.hpp"
#include "hazardscan/vocabulary.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace hazard;

namespace {

/// Error raised inside a named pipeline stage.
class StageError : public std::runtime_error {
public:
    StageError(const std::string& stage, const std::string& what)
        : std::runtime_error(fmt::format("{}: {}", stage, what)) {}
};

template <class Fn>
auto stage(const std::string& name, Fn&& fn) -> decltype(fn()) {
    try {
        return fn();
    } catch (const StageError&) {
        throw;
    } catch (const std::exception& e) {
        throw StageError(name, e.what());
    }
}

std::ofstream open_out(const fs::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(fmt::format("cannot write '{}'", path.string()));
    return out;
}

std::ifstream open_in(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(fmt::format("cannot read '{}'", path.string()));
    return in;
}

std::optional<int> parse_tau(const std::string& text) {
    if (text == "none") return std::nullopt;
    try {
        std::size_t used = 0;
        int v = std::stoi(text, &used);
        if (used == text.size() && v >= 1 && v <= 5) return v;
    } catch (const std::exception&) {
    }
    throw Error(fmt::format("tau must be 1..5 or 'none', got '{}'", text));
}

std::string join(const std::vector<std::string>& items, const char* sep = ",") {
    std::string out;
    for (const auto& s : items) out += (out.empty() ? "" : sep) + s;
    return out;
}

/// key=value lines, sorted by key, enough to rerun the command.
struct ConfigEcho {
    std::map<std::string, std::string> values;

    template <class T>
    void set(const std::string& key, const T& value) {
        if constexpr (std::is_floating_point_v<T>)
            values[key] = fmt::format("{:.17g}", value);
        else
            values[key] = fmt::format("{}", value);
    }

    void write(const fs::path& dir) const {
        auto out = open_out(dir / "config.txt");
        for (const auto& [k, v] : values) out << k << '=' << v << '\n';
    }
};

struct VocabOptions {
    std::size_t min_df = 50;
    double max_df_ratio = 0.95;
    std::string vocab_path;

    void add(CLI::App* cmd, bool allow_file) {
        cmd->add_option("--min-df", min_df, "Minimum review document frequency")->capture_default_str();
        cmd->add_option("--max-df-ratio", max_df_ratio, "Maximum document frequency as a fraction of reviews")
            ->capture_default_str();
        if (allow_file) cmd->add_option("--vocab", vocab_path, "Prebuilt vocabulary (skips building)");
    }

    void echo(ConfigEcho& e) const {
        e.set("min_df", min_df);
        e.set("max_df_ratio", max_df_ratio);
        if (!vocab_path.empty()) e.set("vocab", vocab_path);
    }

    Vocabulary resolve(const Corpus& reviews) const {
        if (!vocab_path.empty()) return stage("load vocabulary", [&] { return Vocabulary::load(vocab_path); });
        return stage("build vocabulary", [&] { return build_vocabulary(reviews, {min_df, max_df_ratio}); });
    }
};

struct FitOptions {
    FitParams params;
    double threshold = 0.5;

    void add(CLI::App* cmd) {
        cmd->add_option("--lambda", params.lambda, "L2 regularization strength")->capture_default_str();
        cmd->add_option("--lr", params.learning_rate, "Gradient descent step size")->capture_default_str();
        cmd->add_option("--epochs", params.epochs, "Maximum gradient descent epochs")->capture_default_str();
        cmd->add_option("--threshold", threshold, "Probability threshold for a hazardous label")->capture_default_str();
    }

    void echo(ConfigEcho& e) const {
        e.set("lambda", params.lambda);
        e.set("lr", params.learning_rate);
        e.set("epochs", params.epochs);
        e.set("tolerance", params.tolerance);
        e.set("threshold", threshold);
    }
};

// ---------------------------------------------------------------------------

struct SynthCommand {
    SynthConfig cfg;
    std::string out_dir;

    void add(CLI::App& app) {
        auto* cmd = app.add_subcommand("synth", "Generate a synthetic corpus with a planted selection bias");
        cmd->add_option("--out", out_dir, "Output directory")->required();
        cmd->add_option("--seed", cfg.seed, "Random seed")->capture_default_str();
        cmd->add_option("--n-complaints", cfg.n_complaints)->capture_default_str();
        cmd->add_option("--n-reviews", cfg.n_reviews)->capture_default_str();
        cmd->add_option("--hazard-rate", cfg.hazard_rate, "Fraction of truly hazardous reviews")->capture_default_str();
        cmd->add_option("--n-products", cfg.n_products)->capture_default_str();
        cmd->add_option("--recalled-fraction", cfg.recalled_fraction)->capture_default_str();
        cmd->add_option("--recalled-multiplier", cfg.recalled_hazard_multiplier,
                        "Hazard rate of recalled products relative to others")
            ->capture_default_str();
        cmd->add_option("--eval-positives", cfg.eval_positives)->capture_default_str();
        cmd->add_option("--eval-negatives", cfg.eval_negatives)->capture_default_str();
        cmd->callback([this] { run(); });
    }

    void run() {
        fs::create_directories(out_dir);
        const auto corpus = stage("generate", [&] { return generate(cfg); });
        stage("write corpus", [&] { write_synth(out_dir, corpus); });
        ConfigEcho e;
        e.set("command", "synth");
        e.set("seed", cfg.seed);
        e.set("n_complaints", cfg.n_complaints);
        e.set("n_reviews", cfg.n_reviews);
        e.set("hazard_rate", cfg.hazard_rate);
        e.set("n_products", cfg.n_products);
        e.set("recalled_fraction", cfg.recalled_fraction);
        e.set("recalled_multiplier", cfg.recalled_hazard_multiplier);
        e.set("eval_positives", cfg.eval_positives);
        e.set("eval_negatives", cfg.eval_negatives);
        e.set("bias_tokens", join(corpus.bias_tokens));
        e.write(out_dir);
        std::size_t hidden = 0;
        for (int l : corpus.review_labels) hidden += l;
        std::cout << fmt::format("wrote {} complaints, {} reviews ({} hazardous), {} eval reviews, {} products, {} recalls to {}\n",
                                 corpus.complaints.size(), corpus.reviews.size(), hidden, corpus.eval.reviews.size(),
                                 corpus.products.size(), corpus.recalls.size(), out_dir);
    }
};

struct BuildVocabCommand {
    std::string reviews_path, out_dir;
    VocabOptions vocab;

    void add(CLI::App& app) {
        auto* cmd = app.add_subcommand("build-vocab", "Build the unigram/bigram vocabulary from reviews");
        cmd->add_option("--reviews", reviews_path, "Reviews file (JSON Lines)")->required();
        cmd->add_option("--out", out_dir, "Output directory")->required();
        vocab.add(cmd, false);
        cmd->callback([this] { run(); });
    }

    void run() {
        fs::create_directories(out_dir);
        const auto reviews = stage("load reviews", [&] { return load_corpus(reviews_path, CorpusKind::unlabeled); });
        const auto v = vocab.resolve(reviews);
        stage("write vocabulary", [&] { v.save(fs::path(out_dir) / "vocab.txt"); });
        ConfigEcho e;
        e.set("command", "build-vocab");
        e.set("reviews", reviews_path);
        vocab.echo(e);
        e.write(out_dir);
        std::cout << fmt::format("{} terms from {} reviews\n", v.size(), v.total_docs());
    }
};

struct TrainCommand {
    std::string complaints_path, reviews_path, out_dir, method = "informed", tau = "5";
    std::size_t num_neg = 20000;
    std::uint64_t seed = 0;
    std::size_t top = 20;
    VocabOptions vocab;
    FitOptions fitopt;

    void add(CLI::App& app) {
        auto* cmd = app.add_subcommand("train", "Train a baseline or informed-prior classifier");
        cmd->add_option("--complaints", complaints_path, "Complaints file (positives)")->required();
        cmd->add_option("--reviews", reviews_path, "Reviews file (unlabeled)")->required();
        cmd->add_option("--out", out_dir, "Output directory")->required();
        cmd->add_option("--method", method, "baseline or informed")->capture_default_str();
        cmd->add_option("--tau", tau, "Minimum star rating for negatives, or 'none'")->capture_default_str();
        cmd->add_option("--num-neg", num_neg, "Number of negatives to sample")->capture_default_str();
        cmd->add_option("--seed", seed, "Random seed")->capture_default_str();
        cmd->add_option("--top", top, "Terms in the top-coefficient report")->capture_default_str();
        vocab.add(cmd, true);
        fitopt.add(cmd);
        cmd->callback([this] { run(); });
    }

    void run() {
        const Method m = stage("parse options", [&] { return parse_method(method); });
        const PUConfig cfg{stage("parse options", [&] { return parse_tau(tau); }), num_neg, seed};
        fs::create_directories(out_dir);
        const fs::path dir(out_dir);

        const auto complaints =
            stage("load complaints", [&] { return load_corpus(complaints_path, CorpusKind::positive_labeled); });
        const auto reviews = stage("load reviews", [&] { return load_corpus(reviews_path, CorpusKind::unlabeled); });
        const auto v = vocab.resolve(reviews);
        stage("write vocabulary", [&] { v.save(dir / "vocab.txt"); });
        const auto prows = stage("vectorize", [&] { return vectorize_corpus(complaints, v); });
        const auto urows = stage("vectorize", [&] { return vectorize_corpus(reviews, v); });

        auto write_top = [&](const LinearModel& model, const char* name) {
            auto out = open_out(dir / name);
            write_top_terms_csv(out, top_terms(model, v, top));
        };

        TrainingSet training;
        if (m == Method::baseline) {
            training = stage("sample training set", [&] { return build_training_set(complaints, prows, reviews, urows, cfg); });
            const auto model = stage("fit baseline", [&] { return fit(training.data, fitopt.params); });
            stage("write outputs", [&] {
                save_model(dir / "baseline_model.txt", model);
                write_top(model, "top_terms.csv");
            });
        } else {
            const auto result = stage("fit informed", [&] {
                return fit_informed(complaints, prows, reviews, urows, cfg, fitopt.params, fitopt.threshold);
            });
            training = result.training;
            stage("write outputs", [&] {
                save_model(dir / "baseline_model.txt", result.baseline);
                save_model(dir / "informed_model.txt", result.informed);
                auto out = open_out(dir / "transform.csv");
                write_transform_csv(out, result.transform, v);
                write_top(result.baseline, "top_terms_baseline.csv");
                write_top(result.informed, "top_terms.csv");
            });
            std::cout << fmt::format("predicted {} of {} reviews hazardous with the baseline; rho={:.6g}\n",
                                     result.predicted.positives(), result.predicted.size(), result.transform.rho);
        }
        stage("write outputs", [&] {
            auto out = open_out(dir / "sampled_ids.txt");
            write_sampled_ids(out, training);
        });

        ConfigEcho e;
        e.set("command", "train");
        e.set("complaints", complaints_path);
        e.set("reviews", reviews_path);
        e.set("method", method);
        e.set("tau", tau);
        e.set("num_neg", num_neg);
        e.set("seed", seed);
        e.set("top", top);
        vocab.echo(e);
        fitopt.echo(e);
        e.write(dir);
        std::cout << fmt::format("trained {} model on {} positives and {} negatives over {} features\n", method,
                                 training.positives, training.sampled_ids.size(), v.size());
    }
};

struct PredictCommand {
    std::string model_path, vocab_path, transform_path, reviews_path, out_dir;
    double threshold = 0.5;

    void add(CLI::App& app) {
        auto* cmd = app.add_subcommand("predict", "Score a reviews file with a trained model");
        cmd->add_option("--model", model_path, "Model file")->required();
        cmd->add_option("--vocab", vocab_path, "Vocabulary file")->required();
        cmd->add_option("--transform", transform_path, "Transform CSV (informed models)");
        cmd->add_option("--reviews", reviews_path, "Reviews file to score")->required();
        cmd->add_option("--out", out_dir, "Output directory")->required();
        cmd->add_option("--threshold", threshold, "Probability threshold for a hazardous label")->capture_default_str();
        cmd->callback([this] { run(); });
    }

    void run() {
        fs::create_directories(out_dir);
        const auto model = stage("load model", [&] { return load_model(model_path); });
        const auto v = stage("load vocabulary", [&] { return Vocabulary::load(vocab_path); });
        std::optional<PriorTransform> transform;
        if (!transform_path.empty())
            transform = stage("load transform", [&] {
                auto in = open_in(transform_path);
                return read_transform_csv(in, v);
            });
        const auto reviews = stage("load reviews", [&] { return load_corpus(reviews_path, CorpusKind::unlabeled); });
        const auto rows = stage("vectorize", [&] { return vectorize_corpus(reviews, v); });
        const auto scores = stage("score", [&] { return score_rows(model, transform ? &*transform : nullptr, rows); });

        std::vector<ReviewPrediction> predictions;
        predictions.reserve(reviews.size());
        std::size_t flagged = 0;
        for (std::size_t i = 0; i < reviews.size(); ++i) {
            const auto& d = reviews.documents[i];
            const bool hazardous = scores[i] >= threshold;
            flagged += hazardous;
            predictions.push_back({d.id, d.product_id.value_or(""), d.date, scores[i], hazardous});
        }
        stage("write outputs", [&] {
            auto out = open_out(fs::path(out_dir) / "predictions.csv");
            write_predictions_csv(out, predictions);
        });
        ConfigEcho e;
        e.set("command", "predict");
        e.set("model", model_path);
        e.set("vocab", vocab_path);
        e.set("transform", transform_path);
        e.set("reviews", reviews_path);
        e.set("threshold", threshold);
        e.write(out_dir);
        std::cout << fmt::format("{} of {} reviews flagged hazardous\n", flagged, reviews.size());
    }
};

struct EvaluateCommand {
    std::string complaints_path, reviews_path, eval_path, out_dir, method = "both";
    std::vector<std::string> taus{"5"};
    std::vector<std::size_t> num_negs{20000};
    int trials = 3;
    std::uint64_t seed = 0;
    VocabOptions vocab;
    FitOptions fitopt;

    void add(CLI::App& app) {
        auto* cmd = app.add_subcommand("evaluate", "Multi-trial evaluation over a tau / num-neg grid");
        cmd->add_option("--complaints", complaints_path, "Complaints file (positives)")->required();
        cmd->add_option("--reviews", reviews_path, "Reviews file (unlabeled)")->required();
        cmd->add_option("--eval", eval_path, "Labeled reviews for evaluation")->required();
        cmd->add_option("--out", out_dir, "Output directory")->required();
        cmd->add_option("--method", method, "baseline, informed or both")->capture_default_str();
        cmd->add_option("--tau", taus, "Comma-separated tau grid; 'none' disables the filter")
            ->delimiter(',')
            ->capture_default_str();
        cmd->add_option("--num-neg", num_negs, "Comma-separated grid of negative sample sizes")
            ->delimiter(',')
            ->capture_default_str();
        cmd->add_option("--trials", trials, "Trials per grid point")->capture_default_str();
        cmd->add_option("--seed", seed, "Base seed; trial t uses seed + t")->capture_default_str();
        vocab.add(cmd, true);
        fitopt.add(cmd);
        cmd->callback([this] { run(); });
    }

    void run() {
        TrialOptions opts;
        stage("parse options", [&] {
            if (method == "both")
                opts.methods = {Method::informed, Method::baseline};
            else
                opts.methods = {parse_method(method)};
            opts.grid.clear();
            for (const auto& t : taus)
                for (auto s : num_negs) opts.grid.push_back({parse_tau(t), s});
            opts.trials = trials;
            opts.base_seed = seed;
            opts.fit = fitopt.params;
            opts.threshold = fitopt.threshold;
        });
        fs::create_directories(out_dir);
        const fs::path dir(out_dir);

        const auto complaints =
            stage("load complaints", [&] { return load_corpus(complaints_path, CorpusKind::positive_labeled); });
        const auto reviews = stage("load reviews", [&] { return load_corpus(reviews_path, CorpusKind::unlabeled); });
        const auto eval = stage("load eval set", [&] { return load_labeled_reviews(eval_path); });
        const auto v = vocab.resolve(reviews);
        const auto data = stage("vectorize", [&] { return ExperimentData::prepare(complaints, reviews, eval, v); });
        const auto reports = stage("run trials", [&] { return run_trials(data, opts); });

        stage("write outputs", [&] {
            auto out = open_out(dir / "results.csv");
            write_results_csv(out, reports);
            for (const auto& r : reports) {
                auto roc = open_out(dir / fmt::format("roc_{}_tau{}_s{}.csv", to_string(r.method), tau_label(r.grid.tau),
                                                      r.grid.num_negatives));
                write_roc_csv(roc, r.roc);
            }
        });

        ConfigEcho e;
        e.set("command", "evaluate");
        e.set("complaints", complaints_path);
        e.set("reviews", reviews_path);
        e.set("eval", eval_path);
        e.set("method", method);
        e.set("tau", join(taus));
        std::vector<std::string> s;
        for (auto n : num_negs) s.push_back(std::to_string(n));
        e.set("num_neg", join(s));
        e.set("trials", trials);
        e.set("seed", seed);
        vocab.echo(e);
        fitopt.echo(e);
        e.write(dir);

        for (const auto& r : reports)
            std::cout << fmt::format("{:<8} tau={:<4} s={:<6} AUC {:.4f}±{:.4f}  F1 {:.4f}±{:.4f}  P {:.4f}±{:.4f}  R {:.4f}±{:.4f}\n",
                                     to_string(r.method), tau_label(r.grid.tau), r.grid.num_negatives, r.auc.mean,
                                     r.auc.std_error, r.f1.mean, r.f1.std_error, r.precision.mean,
                                     r.precision.std_error, r.recall.mean, r.recall.std_error);
        for (const auto& line : describe_tau_trend(reports)) std::cout << "trend: " << line << '\n';
    }
};

struct MatchRecallsCommand {
    std::string recalls_path, products_path, out_dir;
    std::vector<std::string> keywords = default_category_keywords();

    void add(CLI::App& app) {
        auto* cmd = app.add_subcommand("match-recalls", "Match recall records to reviewed products by title terms");
        cmd->add_option("--recalls", recalls_path, "Recalls file")->required();
        cmd->add_option("--products", products_path, "Products file")->required();
        cmd->add_option("--keywords", keywords, "Comma-separated category keywords")->delimiter(',')->capture_default_str();
        cmd->add_option("--out", out_dir, "Output directory")->required();
        cmd->callback([this] { run(); });
    }

    void run() {
        fs::create_directories(out_dir);
        const auto recalls = stage("load recalls", [&] { return load_recalls(recalls_path); });
        const auto products = stage("load products", [&] { return load_products(products_path); });
        const auto matches = stage("match", [&] { return match_recalls(recalls, products, keywords); });
        stage("write outputs", [&] {
            auto out = open_out(fs::path(out_dir) / "matches.csv");
            write_matches_csv(out, matches);
        });
        ConfigEcho e;
        e.set("command", "match-recalls");
        e.set("recalls", recalls_path);
        e.set("products", products_path);
        e.set("keywords", join(keywords));
        e.write(out_dir);
        std::cout << fmt::format("{} candidate matches (unverified)\n", matches.size());
    }
};

struct LeadTimeCommand {
    std::string predictions_path, matches_path, recalls_path, out_dir;
    std::size_t min_reviews = 10;
    bool verified_only = false;

    void add(CLI::App& app) {
        auto* cmd = app.add_subcommand("leadtime", "Days between hazardous reviews and recalls, plus hazard rates");
        cmd->add_option("--predictions", predictions_path, "predictions.csv from `predict`")->required();
        cmd->add_option("--matches", matches_path, "matches.csv from `match-recalls`")->required();
        cmd->add_option("--recalls", recalls_path, "Recalls file")->required();
        cmd->add_option("--out", out_dir, "Output directory")->required();
        cmd->add_option("--min-reviews", min_reviews, "Drop products with fewer reviews")->capture_default_str();
        cmd->add_flag("--verified-only", verified_only, "Use only matches flagged as verified");
        cmd->callback([this] { run(); });
    }

    void run() {
        fs::create_directories(out_dir);
        const fs::path dir(out_dir);
        const auto predictions = stage("load predictions", [&] {
            auto in = open_in(predictions_path);
            return read_predictions_csv(in, predictions_path);
        });
        auto matches = stage("load matches", [&] {
            auto in = open_in(matches_path);
            return read_matches_csv(in, matches_path);
        });
        if (verified_only) std::erase_if(matches, [](const ProductMatch& m) { return !m.verified; });
        const auto recalls = stage("load recalls", [&] { return load_recalls(recalls_path); });
        const auto report = stage("lead time", [&] { return lead_time(predictions, matches, recalls, min_reviews); });

        std::set<std::string> recalled;
        for (const auto& m : matches) recalled.insert(m.product_id);
        std::optional<HazardRates> rates;
        try {
            rates = hazard_rates(predictions, recalled);
        } catch (const Error& err) {
            std::cerr << "note: hazard rates skipped: " << err.what() << '\n';
        }

        stage("write outputs", [&] {
            auto off = open_out(dir / "offsets.csv");
            write_offsets_csv(off, report);
            auto cum = open_out(dir / "cumulative.csv");
            write_cumulative_csv(cum, report);
            if (rates) {
                auto wl = open_out(dir / "watchlist.csv");
                write_watchlist_csv(wl, *rates);
            }
        });
        ConfigEcho e;
        e.set("command", "leadtime");
        e.set("predictions", predictions_path);
        e.set("matches", matches_path);
        e.set("recalls", recalls_path);
        e.set("min_reviews", min_reviews);
        e.set("verified_only", verified_only);
        e.write(dir);

        for (const auto& o : report.offsets)
            std::cout << fmt::format("{} {} review {} recall {} offset {} days\n", o.product_id, o.review_id,
                                     o.review_date.iso(), o.recall_date.iso(), o.offset_days);
        std::cout << fmt::format("products with a hazardous review before the recall: {} of {} ({:.1f}%); {} excluded "
                                 "with fewer than {} reviews\n",
                                 report.detected_before_recall, report.products.size(),
                                 100.0 * report.fraction_detected_before_recall(), report.excluded.size(), min_reviews);
        if (rates)
            std::cout << fmt::format("hazardous review rate: recalled {:.2f}%, other {:.2f}%\n", 100.0 * rates->rate_recalled,
                                     100.0 * rates->rate_other);
    }
};

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Detect product-hazard reports in consumer reviews"};
    app.require_subcommand(1);

    SynthCommand synth;
    BuildVocabCommand build_vocab;
    TrainCommand train;
    PredictCommand predict;
    EvaluateCommand evaluate;
    MatchRecallsCommand match;
    LeadTimeCommand leadtime;
    synth.add(app);
    build_vocab.add(app);
    train.add(app);
    predict.add(app);
    evaluate.add(app);
    match.add(app);
    leadtime.add(app);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        const auto* sub = app.get_subcommands().empty() ? nullptr : app.get_subcommands().front();
        std::cerr << "hazardscan " << (sub ? sub->get_name() : "") << ": error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
