#pragma once

#include "hazardscan/date.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace hazard {

enum class Source { complaint, review };
enum class CorpusKind { positive_labeled, unlabeled };

/// One text record: a complaint narrative or a product review.
struct Document {
    std::string id;
    std::string text;
    Source source = Source::review;
    std::optional<int> star_rating;
    std::optional<Date> date;
    std::optional<std::string> product_id;

    friend bool operator==(const Document&, const Document&) = default;
};

struct RecallRecord {
    std::string recall_id;
    Date recall_date;
    std::string title;
    std::optional<std::string> reason;

    friend bool operator==(const RecallRecord&, const RecallRecord&) = default;
};

struct Product {
    std::string product_id;
    std::string title;

    friend bool operator==(const Product&, const Product&) = default;
};

/// Ordered collection of documents with unique ids. Positive-labeled corpora
/// hold complaints only.
struct Corpus {
    std::vector<Document> documents;
    CorpusKind kind = CorpusKind::unlabeled;

    std::size_t size() const { return documents.size(); }
    bool empty() const { return documents.empty(); }

    friend bool operator==(const Corpus&, const Corpus&) = default;
};

/// Reviews with a gold hazard label, used for evaluation.
struct LabeledReviews {
    Corpus reviews;
    std::vector<int> labels;
};

/// Checks the Document invariants; throws hazard::Error naming the field.
void validate(const Document& doc);

/// Checks id uniqueness and the complaint-only rule for positive corpora.
void validate(const Corpus& corpus);

Corpus load_corpus(const std::filesystem::path& path, CorpusKind kind);
Corpus read_corpus(std::istream& in, CorpusKind kind, const std::string& name = "<stream>");
void write_corpus(std::ostream& out, const Corpus& corpus);
void save_corpus(const std::filesystem::path& path, const Corpus& corpus);

/// Review records carrying an extra integer "label" field (0 or 1).
LabeledReviews load_labeled_reviews(const std::filesystem::path& path);
void write_labeled_reviews(std::ostream& out, const LabeledReviews& data);

std::vector<RecallRecord> load_recalls(const std::filesystem::path& path);
std::vector<RecallRecord> read_recalls(std::istream& in, const std::string& name = "<stream>");
void write_recalls(std::ostream& out, const std::vector<RecallRecord>& recalls);

std::vector<Product> load_products(const std::filesystem::path& path);
void write_products(std::ostream& out, const std::vector<Product>& products);

} // namespace hazard
