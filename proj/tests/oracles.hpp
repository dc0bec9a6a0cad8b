#pragma once

// Independent reference computations for tests. Nothing here calls into the
// library's kernels; each oracle follows the textbook definition directly.

#include "hazardscan/sparse.hpp"

#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace oracle {

/// Fraction of (positive, negative) pairs ranked correctly, ties count 1/2.
inline double auc_pair_count(const std::vector<double>& scores, const std::vector<int>& gold) {
    std::uint64_t twice_wins = 0, pairs = 0;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        if (!gold[i]) continue;
        for (std::size_t j = 0; j < scores.size(); ++j) {
            if (gold[j]) continue;
            ++pairs;
            if (scores[i] > scores[j]) twice_wins += 2;
            else if (scores[i] == scores[j]) twice_wins += 1;
        }
    }
    return static_cast<double>(twice_wins) / static_cast<double>(2 * pairs);
}

/// Days since 1970-01-01 of a proleptic Gregorian date (H. Hinnant's
/// days_from_civil).
inline long days_from_civil(long y, unsigned m, unsigned d) {
    y -= m <= 2;
    const long era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<long>(doe) - 719468;
}

/// Weighted mean log loss + (lambda/2)|theta|^2 over dense rows.
inline double objective(const std::vector<double>& theta, double intercept, double lambda,
                        const std::vector<std::vector<double>>& rows, const std::vector<int>& labels,
                        const std::vector<double>& weights) {
    double total = 0.0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        double z = intercept;
        for (std::size_t j = 0; j < theta.size(); ++j) z += theta[j] * rows[i][j];
        const double p = 1.0 / (1.0 + std::exp(-z));
        total += weights[i] * -(labels[i] ? std::log(p) : std::log(1.0 - p));
    }
    double sq = 0.0;
    for (double t : theta) sq += t * t;
    return total / static_cast<double>(rows.size()) + 0.5 * lambda * sq;
}

inline std::vector<double> densify(const hazard::SparseVector& x) {
    std::vector<double> out(x.dimension, 0.0);
    for (const auto& e : x.entries) out[e.index] = e.value;
    return out;
}

/// Unigrams and bigrams of whitespace-separated lowercase text, counted once
/// per document.
inline std::map<std::string, std::size_t> hand_doc_freq(const std::vector<std::string>& docs) {
    std::map<std::string, std::size_t> df;
    for (const auto& doc : docs) {
        std::vector<std::string> toks;
        std::string cur;
        for (char c : doc + " ") {
            if (c == ' ') {
                if (!cur.empty()) toks.push_back(cur);
                cur.clear();
            } else {
                cur.push_back(c);
            }
        }
        std::set<std::string> terms(toks.begin(), toks.end());
        for (std::size_t i = 1; i < toks.size(); ++i) terms.insert(toks[i - 1] + " " + toks[i]);
        for (const auto& t : terms) ++df[t];
    }
    return df;
}

/// Random binary sparse vector of dimension k with density `p`.
inline hazard::SparseVector random_binary(std::mt19937_64& rng, std::size_t k, double p) {
    std::bernoulli_distribution on(p);
    hazard::SparseVector x;
    x.dimension = k;
    for (std::size_t j = 0; j < k; ++j)
        if (on(rng)) x.entries.push_back({static_cast<hazard::FeatureIndex>(j), 1.0});
    return x;
}

} // namespace oracle
