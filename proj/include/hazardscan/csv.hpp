#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace hazard::csv {

/// Quotes a field when it contains a comma, quote or line break.
std::string escape(std::string_view field);

/// Splits one RFC 4180 line (no embedded newlines).
std::vector<std::string> split(std::string_view line);

/// A CSV file with a header row. Every data row has the header's width.
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    /// Column position by name; throws hazard::Error when absent.
    std::size_t column(std::string_view name) const;
};

Table read(std::istream& in, const std::string& name);

} // namespace hazard::csv
