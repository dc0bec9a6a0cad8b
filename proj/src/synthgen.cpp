#include "hazardscan/synthgen.hpp"
#include "hazardscan/error.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>

#include <fmt/format.h>

namespace hazard {

std::vector<ProductType> SynthConfig::default_product_types() {
    return {
        {"crib", 0.35, 0.05, {"crib", "mattress"}},
        {"diaper", 0.30, 0.05, {"diaper", "pampers"}},
        {"nightlight", 0.20, 0.05, {"nightlight", "bulb"}},
        {"stroller", 0.10, 0.40, {"stroller", "wheel"}},
        {"bottle", 0.05, 0.45, {"bottle", "nipple"}},
    };
}

std::vector<std::string> SynthConfig::default_hazard_vocab() {
    return {"dangerous", "fire",  "burned", "smoke",    "choking", "injured", "hospital",
            "emergency", "sharp", "shock",  "exploded", "melted",  "pinched", "hazard",
            "unsafe",    "burn",  "choked", "injury",   "sparks",  "bleeding"};
}

std::vector<std::string> SynthConfig::default_benign_negative_vocab() {
    return {"broke",    "cheap", "refund", "returned", "disappointed", "flimsy",
            "useless",  "waste", "poor",   "stopped",  "junk",         "worst"};
}

std::vector<std::string> SynthConfig::default_filler_vocab() {
    std::vector<std::string> words;
    words.reserve(400);
    for (int i = 0; i < 400; ++i) words.push_back(fmt::format("w{:03d}", i));
    return words;
}

void validate(const SynthConfig& cfg) {
    if (cfg.product_types.empty()) throw Error("synth: no product types");
    double cs = 0.0, rs = 0.0;
    for (const auto& t : cfg.product_types) {
        if (t.complaint_share < 0.0 || t.review_share < 0.0) throw Error(fmt::format("synth: negative share for '{}'", t.name));
        if (t.tokens.empty()) throw Error(fmt::format("synth: product type '{}' has no tokens", t.name));
        cs += t.complaint_share;
        rs += t.review_share;
    }
    if (std::abs(cs - 1.0) > 1e-9) throw Error(fmt::format("synth: complaint shares sum to {}, not 1", cs));
    if (std::abs(rs - 1.0) > 1e-9) throw Error(fmt::format("synth: review shares sum to {}, not 1", rs));
    if (!(cfg.hazard_rate >= 0.0 && cfg.hazard_rate < 1.0)) throw Error("synth: hazard_rate must be in [0, 1)");
    if (cfg.hazard_vocab.empty() || cfg.filler_vocab.empty() || cfg.benign_negative_vocab.empty())
        throw Error("synth: vocabularies must be non-empty");
    if (!(cfg.mean_doc_length >= 1.0)) throw Error("synth: mean_doc_length must be at least 1");
    if (cfg.n_products == 0) throw Error("synth: need at least one product");
    if (!(cfg.recalled_fraction >= 0.0 && cfg.recalled_fraction <= 1.0))
        throw Error("synth: recalled_fraction must be in [0, 1]");
    const double recalled_rate =
        cfg.hazard_rate * cfg.recalled_hazard_multiplier / (1.0 + cfg.recalled_fraction * (cfg.recalled_hazard_multiplier - 1.0));
    if (!(cfg.recalled_hazard_multiplier > 0.0) || recalled_rate >= 1.0)
        throw Error("synth: recalled_hazard_multiplier gives a hazard probability of 1 or more");

    std::set<std::string> seen;
    auto add_all = [&](const std::vector<std::string>& words, const std::string& what) {
        for (const auto& w : words)
            if (!seen.insert(w).second) throw Error(fmt::format("synth: word '{}' in {} appears in another list", w, what));
    };
    add_all(cfg.hazard_vocab, "hazard_vocab");
    add_all(cfg.benign_negative_vocab, "benign_negative_vocab");
    add_all(cfg.filler_vocab, "filler_vocab");
    for (const auto& t : cfg.product_types) add_all(t.tokens, "product type " + t.name);
}

namespace {

// Zipf-like weights 1/(r+1) so lists have frequent and rare words.
std::discrete_distribution<std::size_t> zipf(std::size_t n) {
    std::vector<double> w(n);
    for (std::size_t r = 0; r < n; ++r) w[r] = 1.0 / static_cast<double>(r + 1);
    return {w.begin(), w.end()};
}

enum class DocKind { complaint, hazardous_review, benign_review };

struct SynthProduct {
    std::string id;
    std::size_t type;
    bool recalled;
};

class Generator {
public:
    explicit Generator(const SynthConfig& cfg)
        : cfg_(cfg),
          rng_(cfg.seed),
          length_(1.0 / cfg.mean_doc_length),
          hazard_word_(zipf(cfg.hazard_vocab.size())),
          negative_word_(zipf(cfg.benign_negative_vocab.size())),
          filler_word_(zipf(cfg.filler_vocab.size())),
          hazardous_rating_(cfg.hazardous_ratings.begin(), cfg.hazardous_ratings.end()),
          benign_rating_(cfg.benign_ratings.begin(), cfg.benign_ratings.end()) {
        std::vector<double> cs, rs;
        for (const auto& t : cfg.product_types) {
            cs.push_back(t.complaint_share);
            rs.push_back(t.review_share);
        }
        complaint_type_ = {cs.begin(), cs.end()};
        review_type_ = {rs.begin(), rs.end()};
        const double m = cfg.recalled_hazard_multiplier;
        other_rate_ = cfg.hazard_rate / (1.0 + cfg.recalled_fraction * (m - 1.0));
        recalled_rate_ = other_rate_ * m;
    }

    SynthCorpus run() {
        SynthCorpus out;
        make_products(out);

        out.complaints.kind = CorpusKind::positive_labeled;
        for (std::size_t i = 0; i < cfg_.n_complaints; ++i) {
            Document d;
            d.id = fmt::format("c{:07d}", i + 1);
            d.source = Source::complaint;
            d.text = text(DocKind::complaint, complaint_type_(rng_), 5);
            d.date = random_date(2008, 2014);
            out.complaints.documents.push_back(std::move(d));
        }

        out.reviews.kind = CorpusKind::unlabeled;
        for (std::size_t i = 0; i < cfg_.n_reviews; ++i) {
            auto [doc, label] = review(fmt::format("r{:07d}", i + 1), std::nullopt);
            out.reviews.documents.push_back(std::move(doc));
            out.review_labels.push_back(label);
        }

        out.eval.reviews.kind = CorpusKind::unlabeled;
        for (std::size_t i = 0; i < cfg_.eval_positives + cfg_.eval_negatives; ++i) {
            const int want = i < cfg_.eval_positives ? 1 : 0;
            auto [doc, label] = review(fmt::format("e{:07d}", i + 1), want);
            out.eval.reviews.documents.push_back(std::move(doc));
            out.eval.labels.push_back(label);
        }

        for (const auto& t : cfg_.product_types)
            if (t.complaint_share > t.review_share) out.bias_tokens.insert(out.bias_tokens.end(), t.tokens.begin(), t.tokens.end());
        out.hazard_tokens = cfg_.hazard_vocab;
        return out;
    }

private:
    void make_products(SynthCorpus& out) {
        products_by_type_.assign(cfg_.product_types.size(), {});
        popularity_.assign(cfg_.product_types.size(), {});
        std::uniform_int_distribution<int> brand(1, 60), model(100, 999);
        std::bernoulli_distribution recalled(cfg_.recalled_fraction);
        std::uniform_int_distribution<int> recall_day(0, 6 * 365);
        const Date recall_epoch(2010, 1, 1);

        for (std::size_t i = 0; i < cfg_.n_products; ++i) {
            const std::size_t type = review_type_(rng_);
            const auto& noun = cfg_.product_types[type].name;
            const std::string brand_name = fmt::format("brand{}", brand(rng_));
            const std::string model_name = fmt::format("model{}", model(rng_));
            SynthProduct p{fmt::format("p{:05d}", i + 1), type, recalled(rng_)};
            out.products.push_back({p.id, fmt::format("{} {} {}", brand_name, model_name, noun)});
            if (p.recalled) {
                out.recalled_products.insert(p.id);
                RecallRecord r;
                r.recall_id = fmt::format("R{:05d}", out.recalls.size() + 1);
                r.recall_date = Date(recall_epoch.days() + std::chrono::days{recall_day(rng_)});
                r.title = fmt::format("{} Recalls {} {}s", brand_name, model_name, noun);
                r.reason = fmt::format("The {} can pose a hazard to children.", noun);
                out.recalls.push_back(std::move(r));
            }
            // popularity decays with position inside the type: a long tail
            popularity_[type].push_back(1.0 / static_cast<double>(products_by_type_[type].size() + 1));
            products_by_type_[type].push_back(std::move(p));
        }
        for (std::size_t t = 0; t < popularity_.size(); ++t) {
            if (products_by_type_[t].empty()) {
                // a type with no products still gets reviews; give it one
                products_by_type_[t].push_back({fmt::format("p{:05d}x", t), t, false});
                popularity_[t].push_back(1.0);
                out.products.push_back({products_by_type_[t].back().id, cfg_.product_types[t].name});
            }
            product_pick_.emplace_back(popularity_[t].begin(), popularity_[t].end());
        }
    }

    // `want` forces the hidden label (used for the evaluation split).
    std::pair<Document, int> review(std::string id, std::optional<int> want) {
        const std::size_t type = review_type_(rng_);
        const auto& product = products_by_type_[type][product_pick_[type](rng_)];
        int label;
        if (want) {
            label = *want;
        } else {
            std::bernoulli_distribution hazardous(product.recalled ? recalled_rate_ : other_rate_);
            label = hazardous(rng_) ? 1 : 0;
        }
        Document d;
        d.id = std::move(id);
        d.source = Source::review;
        d.star_rating = static_cast<int>(label ? hazardous_rating_(rng_) : benign_rating_(rng_)) + 1;
        d.text = text(label ? DocKind::hazardous_review : DocKind::benign_review, type, *d.star_rating);
        d.date = random_date(2008, 2014);
        d.product_id = product.id;
        return {std::move(d), label};
    }

    std::string text(DocKind kind, std::size_t type, int rating) {
        double hazard = 0.0, negative = 0.0;
        switch (kind) {
        case DocKind::complaint: hazard = cfg_.complaint_hazard_share; break;
        case DocKind::hazardous_review:
            hazard = cfg_.review_hazard_share;
            negative = cfg_.negative_word_share;
            break;
        case DocKind::benign_review:
            hazard = cfg_.benign_hazard_noise;
            negative = rating <= 2 ? cfg_.negative_word_share : cfg_.negative_word_share / 10.0;
            break;
        }
        const double type_share = cfg_.type_token_share;
        const auto& type_tokens = cfg_.product_types[type].tokens;
        std::uniform_real_distribution<double> u(0.0, 1.0);
        std::uniform_int_distribution<std::size_t> type_word(0, type_tokens.size() - 1);

        const std::size_t n = 1 + length_(rng_);
        std::string out;
        for (std::size_t i = 0; i < n; ++i) {
            const double r = u(rng_);
            const std::string* word;
            if (r < hazard) word = &cfg_.hazard_vocab[hazard_word_(rng_)];
            else if (r < hazard + negative) word = &cfg_.benign_negative_vocab[negative_word_(rng_)];
            else if (r < hazard + negative + type_share) word = &type_tokens[type_word(rng_)];
            else word = &cfg_.filler_vocab[filler_word_(rng_)];
            if (!out.empty()) out.push_back(' ');
            out += *word;
        }
        return out;
    }

    Date random_date(int first_year, int last_year) {
        const Date lo(first_year, 1, 1), hi(last_year, 12, 31);
        std::uniform_int_distribution<long> day(0, offset_days(hi, lo));
        return Date(lo.days() + std::chrono::days{day(rng_)});
    }

    const SynthConfig& cfg_;
    std::mt19937_64 rng_;
    std::geometric_distribution<std::size_t> length_;
    std::discrete_distribution<std::size_t> hazard_word_, negative_word_, filler_word_;
    std::discrete_distribution<std::size_t> hazardous_rating_, benign_rating_;
    std::discrete_distribution<std::size_t> complaint_type_, review_type_;
    std::vector<std::vector<SynthProduct>> products_by_type_;
    std::vector<std::vector<double>> popularity_;
    std::vector<std::discrete_distribution<std::size_t>> product_pick_;
    double other_rate_ = 0.0;
    double recalled_rate_ = 0.0;
};

} // namespace

SynthCorpus generate(const SynthConfig& cfg) {
    validate(cfg);
    return Generator(cfg).run();
}

void write_synth(const std::filesystem::path& dir, const SynthCorpus& corpus) {
    std::filesystem::create_directories(dir);
    auto open = [&](const char* name) {
        std::ofstream out(dir / name, std::ios::binary);
        if (!out) throw Error(fmt::format("cannot write '{}'", (dir / name).string()));
        return out;
    };
    {
        auto out = open("complaints.jsonl");
        write_corpus(out, corpus.complaints);
    }
    {
        auto out = open("reviews.jsonl");
        write_corpus(out, corpus.reviews);
    }
    {
        auto out = open("eval.jsonl");
        write_labeled_reviews(out, corpus.eval);
    }
    {
        auto out = open("products.jsonl");
        write_products(out, corpus.products);
    }
    {
        auto out = open("recalls.jsonl");
        write_recalls(out, corpus.recalls);
    }
    {
        auto out = open("review_labels.csv");
        out << "id,label\n";
        for (std::size_t i = 0; i < corpus.reviews.size(); ++i)
            out << corpus.reviews.documents[i].id << ',' << corpus.review_labels[i] << '\n';
    }
}

} // namespace hazard
