#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace hazard {

/// Lowercases ASCII letters and splits on every maximal run of
/// non-alphanumeric bytes. Bytes outside ASCII count as separators.
std::vector<std::string> tokenize(std::string_view text);

/// Unigrams followed by adjacent-token bigrams ("night light"), in text order,
/// duplicates included.
std::vector<std::string> ngram_terms(const std::vector<std::string>& tokens);

} // namespace hazard
