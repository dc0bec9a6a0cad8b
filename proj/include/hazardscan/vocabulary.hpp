#pragma once

#include "hazardscan/corpus.hpp"
#include "hazardscan/sparse.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace hazard {

struct VocabularyParams {
    std::size_t min_df = 50;
    double max_df_ratio = 0.95;
};

/// Unigram/bigram vocabulary with document frequencies. Terms are indexed
/// 0..k-1 in lexicographic order. Immutable once built.
class Vocabulary {
public:
    Vocabulary() = default;
    Vocabulary(std::vector<std::string> terms, std::vector<std::size_t> doc_freq, std::size_t total_docs,
               VocabularyParams params);

    std::size_t size() const { return terms_.size(); }
    const std::string& term(FeatureIndex j) const { return terms_.at(j); }
    const std::vector<std::string>& terms() const { return terms_; }
    std::size_t doc_freq(FeatureIndex j) const { return doc_freq_.at(j); }
    const std::vector<std::size_t>& doc_freqs() const { return doc_freq_; }
    std::size_t total_docs() const { return total_docs_; }
    const VocabularyParams& params() const { return params_; }

    std::optional<FeatureIndex> lookup(const std::string& term) const;

    /// Binary vector: (j, 1.0) for every vocabulary term present in the text.
    SparseVector vectorize(std::string_view text) const;
    SparseVector vectorize(const Document& doc) const { return vectorize(doc.text); }

    void write(std::ostream& out) const;
    static Vocabulary read(std::istream& in);
    void save(const std::filesystem::path& path) const;
    static Vocabulary load(const std::filesystem::path& path);

    friend bool operator==(const Vocabulary& a, const Vocabulary& b) {
        return a.terms_ == b.terms_ && a.doc_freq_ == b.doc_freq_ && a.total_docs_ == b.total_docs_ &&
               a.params_.min_df == b.params_.min_df && a.params_.max_df_ratio == b.params_.max_df_ratio;
    }

private:
    std::vector<std::string> terms_;
    std::vector<std::size_t> doc_freq_;
    std::size_t total_docs_ = 0;
    VocabularyParams params_;
    std::unordered_map<std::string, FeatureIndex> index_;
};

/// Keeps unigrams and bigrams with min_df <= df <= max_df_ratio * |corpus|,
/// counting each term once per document.
Vocabulary build_vocabulary(const Corpus& corpus, VocabularyParams params = {});

/// Vectorizes every document, in corpus order.
std::vector<SparseVector> vectorize_corpus(const Corpus& corpus, const Vocabulary& vocab);

} // namespace hazard
