#include "hazardscan/date.hpp"
#include "hazardscan/error.hpp"

#include <cctype>
#include <charconv>

#include <fmt/format.h>

namespace hazard {

ParseError::ParseError(std::string path, std::size_t line, std::string field, const std::string& what)
    : Error(fmt::format("{}:{}: field '{}': {}", path, line, field, what)),
      path_(std::move(path)),
      line_(line),
      field_(std::move(field)) {}

namespace {

bool parse_digits(std::string_view s, int& out) {
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc{} && ptr == s.data() + s.size();
}

} // namespace

std::optional<Date> Date::parse(std::string_view text) {
    if (text.size() != 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
    int y = 0, m = 0, d = 0;
    if (!parse_digits(text.substr(0, 4), y) || !parse_digits(text.substr(5, 2), m) ||
        !parse_digits(text.substr(8, 2), d))
        return std::nullopt;
    std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{static_cast<unsigned>(m)},
                                    std::chrono::day{static_cast<unsigned>(d)}};
    if (!ymd.ok()) return std::nullopt;
    return Date{std::chrono::sys_days{ymd}};
}

std::string Date::iso() const {
    std::chrono::year_month_day ymd{days_};
    return fmt::format("{:04d}-{:02d}-{:02d}", static_cast<int>(ymd.year()),
                       static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
}

} // namespace hazard
