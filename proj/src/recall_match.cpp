#include "hazardscan/recall_match.hpp"
#include "hazardscan/csv.hpp"
#include "hazardscan/error.hpp"
#include "hazardscan/tokenize.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>

#include <fmt/format.h>

namespace hazard {

namespace {

std::string normalized(std::string_view text) {
    std::string out;
    for (const auto& tok : tokenize(text)) {
        if (!out.empty()) out.push_back(' ');
        out += tok;
    }
    return out;
}

std::vector<std::string> split_terms(const std::string& joined) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= joined.size()) {
        auto end = joined.find(';', start);
        if (end == std::string::npos) end = joined.size();
        if (end > start) out.push_back(joined.substr(start, end - start));
        start = end + 1;
    }
    return out;
}

} // namespace

const std::vector<std::string>& default_category_keywords() {
    static const std::vector<std::string> keywords{"stroller", "car seat",        "crib",     "child carrier",
                                                   "bath seat", "infant carrier", "bassinet", "pacifier",
                                                   "rattle",   "swing",           "walker",   "dresser"};
    return keywords;
}

const std::set<std::string>& match_stop_words() {
    static const std::set<std::string> words{"recall", "recalls", "recalled", "due", "to", "and", "of", "the", "for"};
    return words;
}

bool has_category_keyword(std::string_view title, const std::vector<std::string>& keywords) {
    const auto t = normalized(title);
    return std::any_of(keywords.begin(), keywords.end(), [&](const std::string& kw) {
        const auto k = normalized(kw);
        return !k.empty() && t.find(k) != std::string::npos;
    });
}

std::vector<std::string> title_terms(std::string_view title) {
    std::set<std::string> terms;
    for (auto& tok : tokenize(title))
        if (!match_stop_words().count(tok)) terms.insert(std::move(tok));
    return {terms.begin(), terms.end()};
}

std::vector<ProductMatch> match_recalls(const std::vector<RecallRecord>& recalls, const std::vector<Product>& products,
                                        const std::vector<std::string>& category_keywords) {
    std::vector<std::vector<std::string>> product_terms;
    product_terms.reserve(products.size());
    for (const auto& p : products) product_terms.push_back(title_terms(p.title));

    std::vector<ProductMatch> matches;
    for (const auto& recall : recalls) {
        if (!has_category_keyword(recall.title, category_keywords)) continue;
        const auto recall_terms = title_terms(recall.title);
        for (std::size_t i = 0; i < products.size(); ++i) {
            std::vector<std::string> shared;
            std::set_intersection(recall_terms.begin(), recall_terms.end(), product_terms[i].begin(),
                                  product_terms[i].end(), std::back_inserter(shared));
            if (shared.size() >= 2) matches.push_back({recall.recall_id, products[i].product_id, std::move(shared), false});
        }
    }
    return matches;
}

void write_matches_csv(std::ostream& out, const std::vector<ProductMatch>& matches) {
    out << "recall_id,product_id,shared_terms,verified\n";
    for (const auto& m : matches) {
        std::string terms;
        for (const auto& t : m.shared_terms) terms += (terms.empty() ? "" : ";") + t;
        out << fmt::format("{},{},{},{}\n", csv::escape(m.recall_id), csv::escape(m.product_id), csv::escape(terms),
                           m.verified ? 1 : 0);
    }
}

std::vector<ProductMatch> read_matches_csv(std::istream& in, const std::string& name) {
    const auto table = csv::read(in, name);
    const auto c_recall = table.column("recall_id"), c_product = table.column("product_id"),
               c_terms = table.column("shared_terms"), c_verified = table.column("verified");
    std::vector<ProductMatch> out;
    for (const auto& row : table.rows) {
        ProductMatch m{row[c_recall], row[c_product], split_terms(row[c_terms]), false};
        const auto& v = row[c_verified];
        if (v == "1" || v == "true") m.verified = true;
        else if (v != "0" && v != "false" && !v.empty())
            throw Error(fmt::format("{}: bad verified flag '{}'", name, v));
        out.push_back(std::move(m));
    }
    return out;
}

void write_predictions_csv(std::ostream& out, const std::vector<ReviewPrediction>& predictions) {
    out << "review_id,product_id,date,score,hazardous\n";
    for (const auto& p : predictions)
        out << fmt::format("{},{},{},{:.17g},{}\n", csv::escape(p.review_id), csv::escape(p.product_id),
                           p.date ? p.date->iso() : "", p.score, p.hazardous ? 1 : 0);
}

std::vector<ReviewPrediction> read_predictions_csv(std::istream& in, const std::string& name) {
    const auto table = csv::read(in, name);
    const auto c_id = table.column("review_id"), c_product = table.column("product_id"), c_date = table.column("date"),
               c_score = table.column("score"), c_flag = table.column("hazardous");
    std::vector<ReviewPrediction> out;
    out.reserve(table.rows.size());
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const auto& row = table.rows[i];
        ReviewPrediction p;
        p.review_id = row[c_id];
        p.product_id = row[c_product];
        if (!row[c_date].empty()) {
            p.date = Date::parse(row[c_date]);
            if (!p.date) throw Error(fmt::format("{} row {}: bad date '{}'", name, i + 1, row[c_date]));
        }
        try {
            p.score = std::stod(row[c_score]);
        } catch (const std::exception&) {
            throw Error(fmt::format("{} row {}: bad score '{}'", name, i + 1, row[c_score]));
        }
        if (row[c_flag] != "0" && row[c_flag] != "1")
            throw Error(fmt::format("{} row {}: hazardous must be 0 or 1", name, i + 1));
        p.hazardous = row[c_flag] == "1";
        out.push_back(std::move(p));
    }
    return out;
}

double LeadTimeReport::fraction_detected_before_recall() const {
    return products.empty() ? 0.0 : static_cast<double>(detected_before_recall) / static_cast<double>(products.size());
}

LeadTimeReport lead_time(const std::vector<ReviewPrediction>& predictions, const std::vector<ProductMatch>& matches,
                         const std::vector<RecallRecord>& recalls, std::size_t min_reviews) {
    std::map<std::string, Date> recall_dates;
    for (const auto& r : recalls) recall_dates.emplace(r.recall_id, r.recall_date);

    // earliest recall per matched product
    std::map<std::string, Date> product_recall;
    for (const auto& m : matches) {
        auto it = recall_dates.find(m.recall_id);
        if (it == recall_dates.end())
            throw Error(fmt::format("lead_time: match references unknown recall '{}'", m.recall_id));
        auto [pos, inserted] = product_recall.emplace(m.product_id, it->second);
        if (!inserted) pos->second = std::min(pos->second, it->second);
    }

    std::map<std::string, std::size_t> review_counts;
    for (const auto& p : predictions) {
        if (p.product_id.empty())
            throw Error(fmt::format("lead_time: review '{}' references no product", p.review_id));
        ++review_counts[p.product_id];
    }

    LeadTimeReport report;
    std::set<std::string> kept;
    for (const auto& [product, _] : product_recall) {
        auto it = review_counts.find(product);
        const std::size_t n = it == review_counts.end() ? 0 : it->second;
        if (n >= min_reviews) {
            kept.insert(product);
            report.products.push_back(product);
        } else {
            report.excluded.push_back(product);
        }
    }

    std::map<std::string, std::vector<Date>> hazard_dates;
    for (const auto& p : predictions) {
        if (!p.hazardous || !kept.count(p.product_id)) continue;
        if (!p.date) throw Error(fmt::format("lead_time: hazardous review '{}' has no date", p.review_id));
        const Date recall = product_recall.at(p.product_id);
        report.offsets.push_back({p.product_id, p.review_id, *p.date, recall, offset_days(*p.date, recall)});
        hazard_dates[p.product_id].push_back(*p.date);
    }
    std::stable_sort(report.offsets.begin(), report.offsets.end(), [](const ReviewOffset& a, const ReviewOffset& b) {
        if (a.product_id != b.product_id) return a.product_id < b.product_id;
        return a.review_date < b.review_date;
    });

    for (auto& [product, dates] : hazard_dates) {
        std::sort(dates.begin(), dates.end());
        std::size_t cum = 0;
        for (std::size_t i = 0; i < dates.size(); ++i) {
            ++cum;
            if (i + 1 < dates.size() && dates[i + 1] == dates[i]) continue;
            report.cumulative.push_back({product, dates[i], cum});
        }
        if (dates.front() < product_recall.at(product)) ++report.detected_before_recall;
    }
    return report;
}

void write_offsets_csv(std::ostream& out, const LeadTimeReport& report) {
    out << "product_id,review_id,offset_days\n";
    for (const auto& o : report.offsets)
        out << fmt::format("{},{},{}\n", csv::escape(o.product_id), csv::escape(o.review_id), o.offset_days);
}

void write_cumulative_csv(std::ostream& out, const LeadTimeReport& report) {
    out << "product_id,date,cum_count\n";
    for (const auto& c : report.cumulative)
        out << fmt::format("{},{},{}\n", csv::escape(c.product_id), c.date.iso(), c.cum_count);
}

HazardRates hazard_rates(const std::vector<ReviewPrediction>& predictions, const std::set<std::string>& recalled) {
    std::map<std::string, ProductHazard> by_product;
    std::size_t hazard_recalled = 0, hazard_other = 0;
    HazardRates rates;
    for (const auto& p : predictions) {
        auto& entry = by_product[p.product_id];
        if (entry.reviews == 0) {
            entry.product_id = p.product_id;
            entry.recalled = recalled.count(p.product_id) > 0;
            entry.max_score = p.score;
        }
        ++entry.reviews;
        entry.max_score = std::max(entry.max_score, p.score);
        if (p.hazardous) ++entry.hazardous;
        if (entry.recalled) {
            ++rates.recalled_reviews;
            hazard_recalled += p.hazardous;
        } else {
            ++rates.other_reviews;
            hazard_other += p.hazardous;
        }
    }
    if (rates.recalled_reviews == 0) throw Error("hazard_rates: no reviews of recalled products");
    if (rates.other_reviews == 0) throw Error("hazard_rates: no reviews of non-recalled products");
    rates.rate_recalled = static_cast<double>(hazard_recalled) / static_cast<double>(rates.recalled_reviews);
    rates.rate_other = static_cast<double>(hazard_other) / static_cast<double>(rates.other_reviews);

    for (auto& [_, entry] : by_product) rates.watchlist.push_back(std::move(entry));
    std::stable_sort(rates.watchlist.begin(), rates.watchlist.end(), [](const ProductHazard& a, const ProductHazard& b) {
        if (a.hazardous != b.hazardous) return a.hazardous > b.hazardous;
        if (a.max_score != b.max_score) return a.max_score > b.max_score;
        return a.product_id < b.product_id;
    });
    return rates;
}

void write_watchlist_csv(std::ostream& out, const HazardRates& rates) {
    out << "product_id,reviews,hazardous,max_score,recalled\n";
    for (const auto& p : rates.watchlist)
        out << fmt::format("{},{},{},{:.6f},{}\n", csv::escape(p.product_id), p.reviews, p.hazardous, p.max_score,
                           p.recalled ? 1 : 0);
}

} // namespace hazard
