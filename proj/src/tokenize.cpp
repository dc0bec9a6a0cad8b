#include "hazardscan/tokenize.hpp"

namespace hazard {

namespace {

constexpr bool is_alnum_ascii(unsigned char c) {
    return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

constexpr char to_lower_ascii(unsigned char c) {
    return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : static_cast<char>(c);
}

} // namespace

std::vector<std::string> tokenize(std::string_view text) {
    std::vector<std::string> tokens;
    std::string current;
    for (unsigned char c : text) {
        if (is_alnum_ascii(c)) {
            current.push_back(to_lower_ascii(c));
        } else if (!current.empty()) {
            tokens.push_back(std::move(current));
            current.clear();
        }
    }
    if (!current.empty()) tokens.push_back(std::move(current));
    return tokens;
}

std::vector<std::string> ngram_terms(const std::vector<std::string>& tokens) {
    std::vector<std::string> terms;
    terms.reserve(tokens.size() * 2);
    terms.insert(terms.end(), tokens.begin(), tokens.end());
    for (std::size_t i = 1; i < tokens.size(); ++i) {
        std::string bigram;
        bigram.reserve(tokens[i - 1].size() + 1 + tokens[i].size());
        bigram.append(tokens[i - 1]).push_back(' ');
        bigram.append(tokens[i]);
        terms.push_back(std::move(bigram));
    }
    return terms;
}

} // namespace hazard
