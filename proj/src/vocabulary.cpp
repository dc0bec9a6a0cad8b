#include "hazardscan/vocabulary.hpp"
#include "hazardscan/error.hpp"
#include "hazardscan/kernels.hpp"
#include "hazardscan/tokenize.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

namespace hazard {

Vocabulary::Vocabulary(std::vector<std::string> terms, std::vector<std::size_t> doc_freq, std::size_t total_docs,
                       VocabularyParams params)
    : terms_(std::move(terms)), doc_freq_(std::move(doc_freq)), total_docs_(total_docs), params_(params) {
    if (terms_.size() != doc_freq_.size()) throw Error("vocabulary: term and frequency lists differ in length");
    index_.reserve(terms_.size());
    for (std::size_t j = 0; j < terms_.size(); ++j) {
        if (!index_.emplace(terms_[j], static_cast<FeatureIndex>(j)).second)
            throw Error(fmt::format("vocabulary: duplicate term '{}'", terms_[j]));
    }
}

std::optional<FeatureIndex> Vocabulary::lookup(const std::string& term) const {
    auto it = index_.find(term);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

SparseVector Vocabulary::vectorize(std::string_view text) const {
    SparseVector x;
    x.dimension = terms_.size();
    std::vector<FeatureIndex> hits;
    for (const auto& term : ngram_terms(tokenize(text)))
        if (auto j = lookup(term)) hits.push_back(*j);
    std::sort(hits.begin(), hits.end());
    hits.erase(std::unique(hits.begin(), hits.end()), hits.end());
    x.entries.reserve(hits.size());
    for (auto j : hits) x.entries.push_back({j, 1.0});
    return x;
}

// Format: "#vocab total_docs=N min_df=M max_df_ratio=R" then one
// tab-separated "term<TAB>index<TAB>doc_freq" line per term.
void Vocabulary::write(std::ostream& out) const {
    out << fmt::format("#vocab total_docs={} min_df={} max_df_ratio={:.17g}\n", total_docs_, params_.min_df,
                       params_.max_df_ratio);
    for (std::size_t j = 0; j < terms_.size(); ++j) out << terms_[j] << '\t' << j << '\t' << doc_freq_[j] << '\n';
}

Vocabulary Vocabulary::read(std::istream& in) {
    std::string header;
    if (!std::getline(in, header) || header.rfind("#vocab ", 0) != 0) throw Error("vocabulary: missing header line");
    std::size_t total = 0;
    VocabularyParams params;
    {
        std::istringstream hs(header.substr(7));
        std::string kv;
        int seen = 0;
        while (hs >> kv) {
            auto eq = kv.find('=');
            if (eq == std::string::npos) throw Error(fmt::format("vocabulary: bad header field '{}'", kv));
            auto key = kv.substr(0, eq);
            auto value = kv.substr(eq + 1);
            try {
                if (key == "total_docs") total = std::stoull(value), ++seen;
                else if (key == "min_df") params.min_df = std::stoull(value), ++seen;
                else if (key == "max_df_ratio") params.max_df_ratio = std::stod(value), ++seen;
            } catch (const std::exception&) {
                throw Error(fmt::format("vocabulary: bad header value '{}'", kv));
            }
        }
        if (seen != 3) throw Error("vocabulary: header needs total_docs, min_df and max_df_ratio");
    }

    std::vector<std::string> terms;
    std::vector<std::size_t> df;
    std::string line;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        auto t1 = line.find('\t');
        auto t2 = t1 == std::string::npos ? t1 : line.find('\t', t1 + 1);
        if (t2 == std::string::npos) throw Error(fmt::format("vocabulary line {}: expected 3 tab-separated fields", lineno));
        try {
            auto index = std::stoull(line.substr(t1 + 1, t2 - t1 - 1));
            if (index != terms.size())
                throw Error(fmt::format("vocabulary line {}: index {} breaks the dense 0..k-1 order", lineno, index));
            terms.push_back(line.substr(0, t1));
            df.push_back(std::stoull(line.substr(t2 + 1)));
        } catch (const Error&) {
            throw;
        } catch (const std::exception&) {
            throw Error(fmt::format("vocabulary line {}: bad number", lineno));
        }
    }
    return Vocabulary(std::move(terms), std::move(df), total, params);
}

void Vocabulary::save(const std::filesystem::path& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(fmt::format("cannot write '{}'", path.string()));
    write(out);
}

Vocabulary Vocabulary::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(fmt::format("cannot read '{}'", path.string()));
    return read(in);
}

Vocabulary build_vocabulary(const Corpus& corpus, VocabularyParams params) {
    if (corpus.empty()) throw Error("build_vocabulary: corpus is empty");
    if (params.min_df < 1) throw Error("build_vocabulary: min_df must be at least 1");
    if (!(params.max_df_ratio > 0.0 && params.max_df_ratio <= 1.0))
        throw Error("build_vocabulary: max_df_ratio must be in (0, 1]");

    const auto counts = kernels::parallel::document_frequencies(corpus.documents);
    const double max_df = params.max_df_ratio * static_cast<double>(corpus.size());

    std::vector<std::pair<std::string, std::size_t>> kept;
    for (const auto& [term, df] : counts)
        if (df >= params.min_df && static_cast<double>(df) <= max_df) kept.emplace_back(term, df);
    std::sort(kept.begin(), kept.end());

    std::vector<std::string> terms;
    std::vector<std::size_t> df;
    terms.reserve(kept.size());
    df.reserve(kept.size());
    for (auto& [t, c] : kept) {
        terms.push_back(std::move(t));
        df.push_back(c);
    }
    return Vocabulary(std::move(terms), std::move(df), corpus.size(), params);
}

std::vector<SparseVector> vectorize_corpus(const Corpus& corpus, const Vocabulary& vocab) {
    return kernels::parallel::vectorize_all(vocab, corpus.documents);
}

} // namespace hazard
