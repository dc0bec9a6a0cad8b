#pragma once

#include "hazardscan/corpus.hpp"
#include "hazardscan/date.hpp"

#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace hazard {

/// Baby-category keywords used to pre-filter recall titles.
const std::vector<std::string>& default_category_keywords();

/// Title words that never count as shared evidence.
const std::set<std::string>& match_stop_words();

struct ProductMatch {
    std::string recall_id;
    std::string product_id;
    /// Sorted, at least two entries.
    std::vector<std::string> shared_terms;
    /// Set only by a human reviewer; match_recalls never sets it.
    bool verified = false;

    friend bool operator==(const ProductMatch&, const ProductMatch&) = default;
};

/// True when the normalized title contains a normalized keyword as a
/// substring, so "stroller" matches "Tandem Strollers".
bool has_category_keyword(std::string_view title, const std::vector<std::string>& keywords);

/// Distinct title tokens minus the stop words, sorted.
std::vector<std::string> title_terms(std::string_view title);

/// Pairs each keyword-bearing recall with every product sharing at least two
/// title terms with it. Output follows recall order, then product order.
std::vector<ProductMatch> match_recalls(const std::vector<RecallRecord>& recalls, const std::vector<Product>& products,
                                        const std::vector<std::string>& category_keywords);

void write_matches_csv(std::ostream& out, const std::vector<ProductMatch>& matches);
std::vector<ProductMatch> read_matches_csv(std::istream& in, const std::string& name = "matches");

/// Classifier output for one review.
struct ReviewPrediction {
    std::string review_id;
    std::string product_id;
    std::optional<Date> date;
    double score = 0.0;
    bool hazardous = false;
};

void write_predictions_csv(std::ostream& out, const std::vector<ReviewPrediction>& predictions);
std::vector<ReviewPrediction> read_predictions_csv(std::istream& in, const std::string& name = "predictions");

struct ReviewOffset {
    std::string product_id;
    std::string review_id;
    Date review_date;
    Date recall_date;
    /// review_date - recall_date; negative when the review came first.
    long offset_days = 0;
};

struct CumulativePoint {
    std::string product_id;
    Date date;
    std::size_t cum_count = 0;
};

struct LeadTimeReport {
    std::vector<ReviewOffset> offsets;
    std::vector<CumulativePoint> cumulative;
    /// Matched products with at least min_reviews reviews.
    std::vector<std::string> products;
    /// Matched products dropped for having fewer than min_reviews reviews.
    std::vector<std::string> excluded;
    std::size_t detected_before_recall = 0;

    double fraction_detected_before_recall() const;
};

/// Offsets of hazardous reviews of matched products from the product's
/// earliest recall date. Products with fewer than `min_reviews` reviews in
/// total are excluded.
LeadTimeReport lead_time(const std::vector<ReviewPrediction>& predictions, const std::vector<ProductMatch>& matches,
                         const std::vector<RecallRecord>& recalls, std::size_t min_reviews = 10);

void write_offsets_csv(std::ostream& out, const LeadTimeReport& report);
void write_cumulative_csv(std::ostream& out, const LeadTimeReport& report);

struct ProductHazard {
    std::string product_id;
    std::size_t reviews = 0;
    std::size_t hazardous = 0;
    double max_score = 0.0;
    bool recalled = false;
};

struct HazardRates {
    double rate_recalled = 0.0;
    double rate_other = 0.0;
    std::size_t recalled_reviews = 0;
    std::size_t other_reviews = 0;
    /// Every product, most hazardous reviews first, then highest score, then id.
    std::vector<ProductHazard> watchlist;
};

/// Fraction of reviews flagged hazardous among recalled and other products.
/// Throws when either group has no reviews.
HazardRates hazard_rates(const std::vector<ReviewPrediction>& predictions, const std::set<std::string>& recalled);

void write_watchlist_csv(std::ostream& out, const HazardRates& rates);

} // namespace hazard
