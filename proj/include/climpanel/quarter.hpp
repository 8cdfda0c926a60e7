#pragma once

#include <charconv>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include "climpanel/errors.hpp"

namespace climpanel {

/// A calendar quarter. Ordering is lexicographic on (year, quarter).
struct Quarter {
    int year = 0;
    int quarter = 1;  // 1..4

    constexpr Quarter() = default;
    constexpr Quarter(int y, int q) : year(y), quarter(q) {
        if (q < 1 || q > 4) throw DomainError("quarter must be in 1..4, got " + std::to_string(q));
    }

    /// Quarters elapsed since year 0 Q1; contiguous quarters differ by exactly one.
    constexpr std::int64_t ordinal() const { return std::int64_t{year} * 4 + (quarter - 1); }

    static constexpr Quarter from_ordinal(std::int64_t ord) {
        auto y = ord >= 0 ? ord / 4 : -((-ord + 3) / 4);
        return Quarter(static_cast<int>(y), static_cast<int>(ord - y * 4) + 1);
    }

    constexpr Quarter next() const { return quarter == 4 ? Quarter(year + 1, 1) : Quarter(year, quarter + 1); }
    constexpr Quarter prev() const { return quarter == 1 ? Quarter(year - 1, 4) : Quarter(year, quarter - 1); }
    constexpr Quarter operator+(std::int64_t n) const { return from_ordinal(ordinal() + n); }
    constexpr std::int64_t operator-(const Quarter& other) const { return ordinal() - other.ordinal(); }

    constexpr auto operator<=>(const Quarter&) const = default;

    std::string str() const { return std::to_string(year) + "Q" + std::to_string(quarter); }

    /// Parses "2003Q2" (case-insensitive Q).
    static Quarter parse(std::string_view text) {
        auto pos = text.find_first_of("qQ");
        if (pos == std::string_view::npos || pos != 4 || text.size() != 6)
            throw DomainError("malformed quarter '" + std::string(text) + "', expected YYYYQn");
        int y = 0, q = 0;
        auto r1 = std::from_chars(text.data(), text.data() + 4, y);
        auto r2 = std::from_chars(text.data() + 5, text.data() + 6, q);
        if (r1.ec != std::errc{} || r1.ptr != text.data() + 4 || r2.ec != std::errc{})
            throw DomainError("malformed quarter '" + std::string(text) + "'");
        return Quarter(y, q);
    }
};

/// Closed range [first, last] of quarters. Empty when first > last.
struct QuarterRange {
    Quarter first;
    Quarter last;

    bool empty() const { return last < first; }
    std::int64_t size() const { return empty() ? 0 : (last - first) + 1; }
    bool contains(const Quarter& q) const { return !(q < first) && !(last < q); }

    /// Parses "2002Q1:2023Q4".
    static QuarterRange parse(std::string_view text) {
        auto colon = text.find(':');
        if (colon == std::string_view::npos)
            throw DomainError("malformed quarter range '" + std::string(text) + "', expected YYYYQn:YYYYQn");
        return {Quarter::parse(text.substr(0, colon)), Quarter::parse(text.substr(colon + 1))};
    }

    std::string str() const { return first.str() + ":" + last.str(); }
};

}  // namespace climpanel
