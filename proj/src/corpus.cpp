#include "hazardscan/corpus.hpp"
#include "hazardscan/error.hpp"
#include "hazardscan/log.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <mutex>
#include <unordered_set>

#include <fmt/format.h>
#include <json.hpp>

namespace hazard {

using json = nlohmann::json;

namespace {

std::mutex sink_mutex;
WarningSink current_sink = [](std::string_view msg) { std::cerr << "warning: " << msg << '\n'; };

bool is_blank(std::string_view s) {
    return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
}

std::string trim(std::string_view s) {
    auto b = s.find_first_not_of(" \t\r\n\f\v");
    if (b == std::string_view::npos) return {};
    auto e = s.find_last_not_of(" \t\r\n\f\v");
    return std::string(s.substr(b, e - b + 1));
}

// Calls fn(record, line_number) for every non-blank line.
template <class Fn>
void for_each_record(std::istream& in, const std::string& name, Fn&& fn) {
    std::string line;
    std::size_t lineno = 0;
    std::size_t records = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (is_blank(line)) continue;
        json rec;
        try {
            rec = json::parse(line);
        } catch (const json::parse_error& e) {
            throw ParseError(name, lineno, "<record>", fmt::format("malformed JSON: {}", e.what()));
        }
        if (!rec.is_object()) throw ParseError(name, lineno, "<record>", "record is not a JSON object");
        fn(rec, lineno);
        ++records;
    }
    if (records == 0) warn(fmt::format("{}: no records", name));
}

class Fields {
public:
    Fields(const json& rec, const std::string& name, std::size_t line) : rec_(rec), name_(name), line_(line) {}

    [[noreturn]] void fail(const std::string& field, const std::string& what) const {
        throw ParseError(name_, line_, field, what);
    }

    bool has(const char* key) const { return rec_.contains(key) && !rec_.at(key).is_null(); }

    std::string str(const char* key) const {
        if (!has(key)) fail(key, "missing required field");
        const auto& v = rec_.at(key);
        if (!v.is_string()) fail(key, "expected a string");
        return v.get<std::string>();
    }

    std::optional<std::string> opt_str(const char* key) const {
        if (!has(key)) return std::nullopt;
        return str(key);
    }

    std::optional<int> opt_int(const char* key) const {
        if (!has(key)) return std::nullopt;
        const auto& v = rec_.at(key);
        if (!v.is_number_integer()) fail(key, "expected an integer");
        return v.get<int>();
    }

    std::optional<Date> opt_date(const char* key) const {
        auto s = opt_str(key);
        if (!s) return std::nullopt;
        auto d = Date::parse(*s);
        if (!d) fail(key, fmt::format("invalid ISO-8601 date '{}'", *s));
        return d;
    }

    Date date(const char* key) const {
        if (!has(key)) fail(key, "missing required field");
        return *opt_date(key);
    }

private:
    const json& rec_;
    const std::string& name_;
    std::size_t line_;
};

Document parse_document(const json& rec, CorpusKind kind, const std::string& name, std::size_t line) {
    Fields f(rec, name, line);
    Document doc;
    doc.id = f.str("id");
    doc.text = f.str("text");
    doc.date = f.opt_date("date");
    if (kind == CorpusKind::positive_labeled) {
        doc.source = Source::complaint;
        if (f.has("star_rating")) f.fail("star_rating", "complaint records carry no star rating");
        if (f.has("product_id")) f.fail("product_id", "complaint records carry no product id");
    } else {
        doc.source = Source::review;
        doc.star_rating = f.opt_int("star_rating");
        doc.product_id = f.opt_str("product_id");
    }
    try {
        validate(doc);
    } catch (const ParseError&) {
        throw;
    } catch (const Error& e) {
        // validate() reports "field: message"
        std::string msg = e.what();
        auto colon = msg.find(':');
        f.fail(msg.substr(0, colon), colon == std::string::npos ? msg : trim(msg.substr(colon + 1)));
    }
    return doc;
}

json document_json(const Document& doc) {
    json rec;
    rec["id"] = doc.id;
    rec["text"] = doc.text;
    if (doc.star_rating) rec["star_rating"] = *doc.star_rating;
    if (doc.date) rec["date"] = doc.date->iso();
    if (doc.product_id) rec["product_id"] = *doc.product_id;
    return rec;
}

std::ifstream open_input(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(fmt::format("cannot read '{}'", path.string()));
    return in;
}

std::ofstream open_output(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(fmt::format("cannot write '{}'", path.string()));
    return out;
}

} // namespace

WarningSink set_warning_sink(WarningSink sink) {
    std::lock_guard lock(sink_mutex);
    std::swap(current_sink, sink);
    return sink;
}

void warn(std::string_view message) {
    std::lock_guard lock(sink_mutex);
    if (current_sink) current_sink(message);
}

void validate(const Document& doc) {
    if (doc.id.empty()) throw Error("id: must not be empty");
    if (trim(doc.text).empty()) throw Error("text: must not be empty after trimming");
    if (doc.star_rating && (*doc.star_rating < 1 || *doc.star_rating > 5))
        throw Error(fmt::format("star_rating: {} is outside 1..5", *doc.star_rating));
    if (doc.source == Source::complaint && doc.star_rating)
        throw Error("star_rating: complaint documents carry no star rating");
}

void validate(const Corpus& corpus) {
    std::unordered_set<std::string_view> seen;
    seen.reserve(corpus.documents.size());
    for (const auto& doc : corpus.documents) {
        validate(doc);
        if (!seen.insert(doc.id).second) throw Error(fmt::format("id: duplicate id '{}'", doc.id));
        if (corpus.kind == CorpusKind::positive_labeled && doc.source != Source::complaint)
            throw Error(fmt::format("source: document '{}' in a positive corpus is not a complaint", doc.id));
    }
}

Corpus read_corpus(std::istream& in, CorpusKind kind, const std::string& name) {
    Corpus corpus;
    corpus.kind = kind;
    std::unordered_set<std::string> seen;
    for_each_record(in, name, [&](const json& rec, std::size_t line) {
        Document doc = parse_document(rec, kind, name, line);
        if (!seen.insert(doc.id).second) throw ParseError(name, line, "id", fmt::format("duplicate id '{}'", doc.id));
        corpus.documents.push_back(std::move(doc));
    });
    return corpus;
}

Corpus load_corpus(const std::filesystem::path& path, CorpusKind kind) {
    auto in = open_input(path);
    return read_corpus(in, kind, path.string());
}

void write_corpus(std::ostream& out, const Corpus& corpus) {
    for (const auto& doc : corpus.documents) out << document_json(doc).dump() << '\n';
}

void save_corpus(const std::filesystem::path& path, const Corpus& corpus) {
    auto out = open_output(path);
    write_corpus(out, corpus);
}

LabeledReviews load_labeled_reviews(const std::filesystem::path& path) {
    auto in = open_input(path);
    const std::string name = path.string();
    LabeledReviews data;
    data.reviews.kind = CorpusKind::unlabeled;
    std::unordered_set<std::string> seen;
    for_each_record(in, name, [&](const json& rec, std::size_t line) {
        Document doc = parse_document(rec, CorpusKind::unlabeled, name, line);
        if (!seen.insert(doc.id).second) throw ParseError(name, line, "id", fmt::format("duplicate id '{}'", doc.id));
        auto label = Fields(rec, name, line).opt_int("label");
        if (!label || (*label != 0 && *label != 1)) throw ParseError(name, line, "label", "expected 0 or 1");
        data.reviews.documents.push_back(std::move(doc));
        data.labels.push_back(*label);
    });
    return data;
}

void write_labeled_reviews(std::ostream& out, const LabeledReviews& data) {
    for (std::size_t i = 0; i < data.reviews.size(); ++i) {
        json rec = document_json(data.reviews.documents[i]);
        rec["label"] = data.labels.at(i);
        out << rec.dump() << '\n';
    }
}

std::vector<RecallRecord> read_recalls(std::istream& in, const std::string& name) {
    std::vector<RecallRecord> recalls;
    for_each_record(in, name, [&](const json& rec, std::size_t line) {
        Fields f(rec, name, line);
        RecallRecord r;
        r.recall_id = f.str("recall_id");
        r.recall_date = f.date("recall_date");
        r.title = f.str("title");
        if (trim(r.title).empty()) f.fail("title", "must not be empty");
        r.reason = f.opt_str("reason");
        recalls.push_back(std::move(r));
    });
    return recalls;
}

std::vector<RecallRecord> load_recalls(const std::filesystem::path& path) {
    auto in = open_input(path);
    return read_recalls(in, path.string());
}

void write_recalls(std::ostream& out, const std::vector<RecallRecord>& recalls) {
    for (const auto& r : recalls) {
        json rec;
        rec["recall_id"] = r.recall_id;
        rec["recall_date"] = r.recall_date.iso();
        rec["title"] = r.title;
        if (r.reason) rec["reason"] = *r.reason;
        out << rec.dump() << '\n';
    }
}

std::vector<Product> load_products(const std::filesystem::path& path) {
    auto in = open_input(path);
    const std::string name = path.string();
    std::vector<Product> products;
    std::unordered_set<std::string> seen;
    for_each_record(in, name, [&](const json& rec, std::size_t line) {
        Fields f(rec, name, line);
        Product p{f.str("product_id"), f.str("title")};
        if (!seen.insert(p.product_id).second)
            f.fail("product_id", fmt::format("duplicate product id '{}'", p.product_id));
        products.push_back(std::move(p));
    });
    return products;
}

void write_products(std::ostream& out, const std::vector<Product>& products) {
    for (const auto& p : products) {
        json rec;
        rec["product_id"] = p.product_id;
        rec["title"] = p.title;
        out << rec.dump() << '\n';
    }
}

} // namespace hazard
