#include <doctest.h>

#include "hazardscan/error.hpp"
#include "hazardscan/synthgen.hpp"
#include "hazardscan/tokenize.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

using namespace hazard;

namespace {

SynthConfig small_config(std::uint64_t seed) {
    SynthConfig cfg;
    cfg.seed = seed;
    cfg.n_complaints = 2000;
    cfg.n_reviews = 10000;
    cfg.eval_positives = 50;
    cfg.eval_negatives = 200;
    cfg.n_products = 200;
    return cfg;
}

bool mentions_any(const Document& d, const std::vector<std::string>& words) {
    const auto toks = tokenize(d.text);
    for (const auto& t : toks)
        if (std::find(words.begin(), words.end(), t) != words.end()) return true;
    return false;
}

/// P(a document of a given type contains at least one of its type words):
/// length is 1 + Geometric(1/mean), each token a type word with prob s.
double mention_probability(const SynthConfig& cfg) {
    const double p = 1.0 / cfg.mean_doc_length, s = cfg.type_token_share;
    return 1.0 - (1.0 - s) * p / (1.0 - (1.0 - p) * (1.0 - s));
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

} // namespace

TEST_SUITE("synthgen") {

TEST_CASE("zero hazard rate plants no positives") {
    auto cfg = small_config(1);
    cfg.n_reviews = 1000;
    cfg.hazard_rate = 0.0;
    const auto s = generate(cfg);
    CHECK(s.reviews.size() == 1000);
    CHECK(std::accumulate(s.review_labels.begin(), s.review_labels.end(), 0) == 0);
}

TEST_CASE("same seed, same bytes") {
    const auto dir = std::filesystem::temp_directory_path() / "hazardscan_synth_det";
    std::filesystem::remove_all(dir);
    write_synth(dir / "a", generate(small_config(9)));
    write_synth(dir / "b", generate(small_config(9)));
    write_synth(dir / "c", generate(small_config(10)));
    for (const char* f : {"complaints.jsonl", "reviews.jsonl", "eval.jsonl", "products.jsonl", "recalls.jsonl",
                          "review_labels.csv"}) {
        CAPTURE(f);
        CHECK(slurp(dir / "a" / f) == slurp(dir / "b" / f));
    }
    CHECK(slurp(dir / "a" / "reviews.jsonl") != slurp(dir / "c" / "reviews.jsonl"));
    std::filesystem::remove_all(dir);
}

TEST_CASE("hidden labels stay out of the review records") {
    const auto s = generate(small_config(2));
    std::ostringstream out;
    write_corpus(out, s.reviews);
    CHECK(out.str().find("label") == std::string::npos);
    CHECK(s.review_labels.size() == s.reviews.size());
    CHECK(s.complaints.kind == CorpusKind::positive_labeled);
    CHECK_NOTHROW(validate(s.complaints));
    CHECK_NOTHROW(validate(s.reviews));

    std::set<std::string> ids;
    for (const auto& d : s.reviews.documents) ids.insert(d.id);
    for (const auto& d : s.eval.reviews.documents) CHECK(ids.count(d.id) == 0);
}

TEST_CASE("complaint-to-review share ratio carries into document frequency") {
    // type A: complaint share 0.6, review share 0.1
    for (std::uint64_t seed : {0, 1, 2}) {
        auto cfg = small_config(seed);
        cfg.n_reviews = 20000;
        cfg.hazard_rate = 0.05;
        cfg.product_types = {{"alpha", 0.6, 0.1, {"alphaword", "alphathing"}},
                             {"beta", 0.4, 0.9, {"betaword", "betathing"}}};
        const auto s = generate(cfg);
        const auto& a = cfg.product_types[0].tokens;
        std::size_t in_complaints = 0, in_hazardous = 0, hazardous = 0;
        for (const auto& d : s.complaints.documents) in_complaints += mentions_any(d, a);
        for (std::size_t i = 0; i < s.reviews.size(); ++i) {
            if (!s.review_labels[i]) continue;
            ++hazardous;
            in_hazardous += mentions_any(s.reviews.documents[i], a);
        }
        REQUIRE(in_hazardous > 0);
        const double ratio = (static_cast<double>(in_complaints) / static_cast<double>(s.complaints.size())) /
                             (static_cast<double>(in_hazardous) / static_cast<double>(hazardous));
        CAPTURE(seed);
        CAPTURE(ratio);
        CHECK(ratio >= 4.0);
        CHECK(ratio <= 8.0);
    }
}

TEST_CASE("bias-type mentions match their shares within four sigma") {
    const auto cfg = small_config(5);
    const auto s = generate(cfg);
    const double q = mention_probability(cfg);
    auto check_rate = [&](const std::vector<Document>& docs, double share, const std::vector<std::string>& words) {
        std::size_t hits = 0;
        for (const auto& d : docs) hits += mentions_any(d, words);
        const double n = static_cast<double>(docs.size()), f = share * q;
        const double sigma = std::sqrt(n * f * (1.0 - f));
        CAPTURE(hits);
        CAPTURE(n * f);
        CHECK(std::abs(static_cast<double>(hits) - n * f) <= 4.0 * sigma);
    };
    for (const auto& type : cfg.product_types) {
        CAPTURE(type.name);
        check_rate(s.complaints.documents, type.complaint_share, type.tokens);
        check_rate(s.reviews.documents, type.review_share, type.tokens);
    }
}

TEST_CASE("hazardous reviews are rated lower") {
    const auto s = generate(small_config(3));
    double sum[2] = {0, 0}, n[2] = {0, 0};
    for (std::size_t i = 0; i < s.reviews.size(); ++i) {
        const int l = s.review_labels[i];
        sum[l] += *s.reviews.documents[i].star_rating;
        n[l] += 1;
    }
    REQUIRE(n[1] > 0);
    CHECK(sum[1] / n[1] < sum[0] / n[0]);
}

TEST_CASE("planted hazard rate within 20 percent") {
    for (std::uint64_t seed : {0, 1, 2}) {
        auto cfg = small_config(seed);
        cfg.n_reviews = 100000;
        const auto s = generate(cfg);
        const double rate = std::accumulate(s.review_labels.begin(), s.review_labels.end(), 0.0) / 100000.0;
        CAPTURE(rate);
        CHECK(std::abs(rate - cfg.hazard_rate) <= 0.2 * cfg.hazard_rate);
    }
}

TEST_CASE("planted tokens and recalls") {
    const auto s = generate(small_config(4));
    CHECK(s.hazard_tokens.front() == "dangerous");
    CHECK(std::find(s.bias_tokens.begin(), s.bias_tokens.end(), "crib") != s.bias_tokens.end());
    CHECK(std::find(s.bias_tokens.begin(), s.bias_tokens.end(), "stroller") == s.bias_tokens.end());
    CHECK(s.recalls.size() == s.recalled_products.size());
    CHECK(s.eval.reviews.size() == 250);
    CHECK(std::accumulate(s.eval.labels.begin(), s.eval.labels.end(), 0) == 50);
}

TEST_CASE("invalid configurations are rejected") {
    auto bad_shares = small_config(0);
    bad_shares.product_types[0].complaint_share += 0.1;
    CHECK_THROWS_AS(generate(bad_shares), Error);

    auto overlap = small_config(0);
    overlap.filler_vocab.push_back("dangerous");
    CHECK_THROWS_AS(validate(overlap), Error);

    auto rate = small_config(0);
    rate.hazard_rate = 1.0;
    CHECK_THROWS_AS(validate(rate), Error);
    CHECK_NOTHROW(validate(SynthConfig{}));
}

} // TEST_SUITE
