#include "exchlab/permutation.hpp"

#include <sstream>

#include "exchlab/stats.hpp"

namespace exchlab {

Permutation Permutation::identity(std::size_t n)
{
    std::vector<std::size_t> m(n);
    std::iota(m.begin(), m.end(), std::size_t{0});
    return Permutation(std::move(m));
}

Permutation Permutation::from_zero_based(std::vector<std::size_t> mapping)
{
    std::vector<bool> seen(mapping.size(), false);
    for (std::size_t v : mapping) {
        if (v >= mapping.size() || seen[v])
            throw InvalidArgument("permutation: mapping is not a bijection of {1.." +
                                  std::to_string(mapping.size()) + "}");
        seen[v] = true;
    }
    return Permutation(std::move(mapping));
}

Permutation Permutation::from_one_based(std::span<const std::size_t> mapping)
{
    std::vector<std::size_t> m;
    m.reserve(mapping.size());
    for (std::size_t v : mapping) {
        if (v == 0)
            throw InvalidArgument("permutation: 1-based mapping contains 0");
        m.push_back(v - 1);
    }
    return from_zero_based(std::move(m));
}

Permutation Permutation::from_one_based(std::initializer_list<std::size_t> mapping)
{
    return from_one_based(std::span<const std::size_t>(mapping.begin(), mapping.size()));
}

std::vector<std::size_t> Permutation::one_based() const
{
    std::vector<std::size_t> out(map_);
    for (auto& v : out)
        ++v;
    return out;
}

bool Permutation::is_identity() const noexcept
{
    for (std::size_t i = 0; i < map_.size(); ++i)
        if (map_[i] != i)
            return false;
    return true;
}

std::uint64_t factorial(std::size_t n)
{
    if (n > 20)
        throw InvalidArgument("factorial: " + std::to_string(n) + "! overflows 64 bits");
    std::uint64_t f = 1;
    for (std::size_t i = 2; i <= n; ++i)
        f *= i;
    return f;
}

// Lehmer code, most significant position first.
std::uint64_t Permutation::rank() const
{
    const std::size_t n = map_.size();
    std::uint64_t r = 0;
    for (std::size_t i = 0; i < n; ++i) {
        std::uint64_t smaller = 0;
        for (std::size_t j = i + 1; j < n; ++j)
            if (map_[j] < map_[i])
                ++smaller;
        r += smaller * factorial(n - 1 - i);
    }
    return r;
}

Permutation Permutation::unrank(std::uint64_t rank, std::size_t n)
{
    if (rank >= factorial(n))
        throw InvalidArgument("unrank: rank out of range");
    std::vector<std::size_t> pool(n);
    std::iota(pool.begin(), pool.end(), std::size_t{0});
    std::vector<std::size_t> m;
    m.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::uint64_t f = factorial(n - 1 - i);
        const auto pick = static_cast<std::size_t>(rank / f);
        rank %= f;
        m.push_back(pool[pick]);
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(pick));
    }
    return Permutation(std::move(m));
}

std::string Permutation::to_string() const
{
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < map_.size(); ++i)
        os << (i ? "," : "") << map_[i] + 1;
    os << ']';
    return os.str();
}

Permutation compose(const Permutation& alpha, const Permutation& beta)
{
    if (alpha.size() != beta.size())
        throw InvalidArgument("compose: size mismatch (" + std::to_string(alpha.size()) + " vs " +
                              std::to_string(beta.size()) + ")");
    std::vector<std::size_t> m(alpha.size());
    for (std::size_t i = 0; i < m.size(); ++i)
        m[i] = alpha(beta(i));
    return Permutation::from_zero_based(std::move(m));
}

Permutation invert(const Permutation& sigma)
{
    std::vector<std::size_t> m(sigma.size());
    for (std::size_t i = 0; i < m.size(); ++i)
        m[sigma(i)] = i;
    return Permutation::from_zero_based(std::move(m));
}

Permutation uniform_permutation(std::size_t n, RngStream& rng)
{
    std::vector<std::size_t> m(n);
    std::iota(m.begin(), m.end(), std::size_t{0});
    for (std::size_t i = n; i > 1; --i) {
        const auto j = static_cast<std::size_t>(rng.bounded(i));
        std::swap(m[i - 1], m[j]);
    }
    return Permutation::from_zero_based(std::move(m));
}

SwallowPair swallow_decompose(const Permutation& gamma, RngStream& rng)
{
    const Permutation sigma = uniform_permutation(gamma.size(), rng);
    return {invert(sigma), compose(sigma, gamma)};
}

UniformityReport permutation_uniformity_test(std::span<const Permutation> samples, double quantile)
{
    if (samples.empty())
        throw InvalidArgument("permutation_uniformity_test: no samples");
    const std::size_t n = samples.front().size();
    if (n > kMaxUniformityTestSize)
        throw InvalidArgument("permutation_uniformity_test: alphabet of permutations too large (n = " +
                              std::to_string(n) + ", limit " +
                              std::to_string(kMaxUniformityTestSize) + ")");
    const std::uint64_t cells = factorial(n);
    if (samples.size() < 5 * cells)
        throw InvalidArgument("permutation_uniformity_test: need at least " +
                              std::to_string(5 * cells) + " samples for n = " + std::to_string(n));
    std::vector<std::uint64_t> counts(cells, 0);
    for (const auto& s : samples) {
        if (s.size() != n)
            throw InvalidArgument("permutation_uniformity_test: samples differ in size");
        ++counts[s.rank()];
    }
    const std::vector<double> expected(cells, 1.0 / static_cast<double>(cells));
    const auto gof = chi_square_gof(counts, expected);
    UniformityReport r;
    r.statistic = gof.statistic;
    r.dof = gof.dof;
    r.critical = r.dof > 0 ? chi_square_quantile(r.dof, quantile) : 0.0;
    r.pass = r.dof == 0 || r.statistic < r.critical;
    return r;
}

} // namespace exchlab
