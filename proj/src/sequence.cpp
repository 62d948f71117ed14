#include "exchlab/sequence.hpp"

#include <algorithm>

#include "exchlab/error.hpp"

namespace exchlab {

std::size_t occurrence_count(Symbol a, std::span<const Symbol> x)
{
    return static_cast<std::size_t>(std::count(x.begin(), x.end(), a));
}

std::vector<std::size_t> occurrence_counts(std::span<const Symbol> x, std::size_t m)
{
    std::vector<std::size_t> f(m, 0);
    for (Symbol s : x) {
        if (s >= m)
            throw InvalidArgument("occurrence_counts: symbol " + std::to_string(s) +
                                  " outside alphabet of size " + std::to_string(m));
        ++f[s];
    }
    return f;
}

std::string pattern_to_string(std::span<const Symbol> x)
{
    static constexpr char digits[] = "0123456789abcdefghijklmnopqrstuvwxyz";
    std::string s;
    s.reserve(x.size());
    for (Symbol v : x) {
        if (v >= 36)
            throw InvalidArgument("pattern_to_string: symbol " + std::to_string(v) +
                                  " has no single-character digit");
        s.push_back(digits[v]);
    }
    return s;
}

Pattern pattern_from_string(const std::string& s)
{
    Pattern p;
    p.reserve(s.size());
    for (char c : s) {
        if (c >= '0' && c <= '9')
            p.push_back(static_cast<Symbol>(c - '0'));
        else if (c >= 'a' && c <= 'z')
            p.push_back(static_cast<Symbol>(c - 'a' + 10));
        else
            throw InvalidArgument(std::string("pattern_from_string: bad digit '") + c + "'");
    }
    return p;
}

} // namespace exchlab
