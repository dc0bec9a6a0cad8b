#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

namespace hazard {

/// Calendar date with day granularity. No time of day, no timezone.
class Date {
public:
    constexpr Date() = default;
    constexpr explicit Date(std::chrono::sys_days days) : days_(days) {}
    constexpr Date(int y, unsigned m, unsigned d)
        : days_(std::chrono::year{y} / std::chrono::month{m} / std::chrono::day{d}) {}

    /// Parses strict ISO-8601 "YYYY-MM-DD". Returns nullopt for anything else,
    /// including impossible dates such as 2012-13-40 or 2013-02-29.
    static std::optional<Date> parse(std::string_view text);

    std::string iso() const;
    constexpr std::chrono::sys_days days() const { return days_; }

    friend constexpr auto operator<=>(const Date&, const Date&) = default;

private:
    std::chrono::sys_days days_{};
};

/// Signed day difference `later - earlier`; negative when `a` precedes `b`.
constexpr long offset_days(const Date& a, const Date& b) {
    return static_cast<long>((a.days() - b.days()).count());
}

} // namespace hazard
