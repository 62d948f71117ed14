#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace exchlab {

/// Alphabets are dense ranges {0..m-1}.
using Symbol = std::uint32_t;
using Pattern = std::vector<Symbol>;

/// F(a, x): number of positions holding `a`.
std::size_t occurrence_count(Symbol a, std::span<const Symbol> x);

/// (F(0,x), ..., F(m-1,x)). Throws if some entry is >= m.
std::vector<std::size_t> occurrence_counts(std::span<const Symbol> x, std::size_t m);

/// Digit-string form, '0'-'9' then 'a'-'z' (alphabets up to 36 symbols).
std::string pattern_to_string(std::span<const Symbol> x);
Pattern pattern_from_string(const std::string& s);

struct Point {
    double x = 0.0;
    double y = 0.0;
    friend bool operator==(const Point&, const Point&) = default;
};

} // namespace exchlab
