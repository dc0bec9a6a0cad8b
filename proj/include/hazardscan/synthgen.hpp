#pragma once

#include "hazardscan/corpus.hpp"

#include <array>
#include <cstdint>
#include <filesystem>
#include <set>
#include <string>
#include <vector>

namespace hazard {

struct ProductType {
    std::string name;
    /// Share of complaints about this type.
    double complaint_share;
    /// Share of reviews about this type.
    double review_share;
    /// Words that mark a document as being about this type.
    std::vector<std::string> tokens;
};

/// Generator settings. A complaint-share above the review-share plants a
/// selection bias: that type's words look hazardous in the training data.
struct SynthConfig {
    std::uint64_t seed = 0;
    std::size_t n_complaints = 2000;
    std::size_t n_reviews = 100000;
    /// Fraction of reviews that are truly hazardous.
    double hazard_rate = 0.01;

    std::vector<ProductType> product_types = default_product_types();
    std::vector<std::string> hazard_vocab = default_hazard_vocab();
    std::vector<std::string> benign_negative_vocab = default_benign_negative_vocab();
    std::vector<std::string> filler_vocab = default_filler_vocab();

    /// Document length is 1 + Geometric, with this mean.
    double mean_doc_length = 40.0;

    /// Token mixture per document kind.
    double complaint_hazard_share = 0.20;
    double review_hazard_share = 0.12;
    double type_token_share = 0.10;
    /// Share of hazard words in benign reviews. Off by default, so benign
    /// reviews draw only filler, benign-negative and type words.
    double benign_hazard_noise = 0.0;
    /// Complaint-style words in hazardous and in low-rated benign reviews.
    double negative_word_share = 0.08;

    /// P(rating = 1..5) for hazardous and benign reviews.
    std::array<double, 5> hazardous_ratings{0.45, 0.25, 0.15, 0.10, 0.05};
    std::array<double, 5> benign_ratings{0.04, 0.05, 0.11, 0.25, 0.55};

    std::size_t n_products = 1000;
    double recalled_fraction = 0.10;
    /// Hazard rate of recalled products relative to the others.
    double recalled_hazard_multiplier = 2.0;

    std::size_t eval_positives = 500;
    std::size_t eval_negatives = 2000;

    static std::vector<ProductType> default_product_types();
    static std::vector<std::string> default_hazard_vocab();
    static std::vector<std::string> default_benign_negative_vocab();
    static std::vector<std::string> default_filler_vocab();
};

/// Throws hazard::Error on shares that do not sum to one, overlapping
/// vocabularies or out-of-range rates.
void validate(const SynthConfig& cfg);

struct SynthCorpus {
    Corpus complaints;
    Corpus reviews;
    /// Hidden truth for `reviews`, parallel to its documents. Never written
    /// into the review records themselves.
    std::vector<int> review_labels;
    /// Held-out labeled reviews, disjoint from `reviews`.
    LabeledReviews eval;
    /// Words of product types over-represented among complaints.
    std::vector<std::string> bias_tokens;
    /// Hazard words, most frequent first.
    std::vector<std::string> hazard_tokens;
    std::vector<Product> products;
    std::vector<RecallRecord> recalls;
    std::set<std::string> recalled_products;
};

SynthCorpus generate(const SynthConfig& cfg);

/// Writes complaints.jsonl, reviews.jsonl, eval.jsonl, products.jsonl,
/// recalls.jsonl and the review_labels.csv sidecar into `dir`.
void write_synth(const std::filesystem::path& dir, const SynthCorpus& corpus);

} // namespace hazard
