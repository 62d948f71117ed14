#pragma once

#include <algorithm>
#include <compare>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <ranges>
#include <span>
#include <string>
#include <vector>

#include "exchlab/error.hpp"
#include "exchlab/rng.hpp"

namespace exchlab {

/**
 * A bijection of {1..n}.
 *
 * Stored 0-based: `(*this)(i)` is sigma(i+1)-1. Use from_one_based() and
 * one_based() at the boundaries where the 1-based convention matters
 * (tests, text output).
 */
class Permutation {
public:
    Permutation() = default;

    static Permutation identity(std::size_t n);
    /// Throws InvalidArgument unless `mapping` is a bijection of {0..n-1}.
    static Permutation from_zero_based(std::vector<std::size_t> mapping);
    static Permutation from_one_based(std::span<const std::size_t> mapping);
    static Permutation from_one_based(std::initializer_list<std::size_t> mapping);

    std::size_t size() const noexcept { return map_.size(); }
    std::size_t operator()(std::size_t i) const { return map_[i]; }
    std::span<const std::size_t> mapping() const noexcept { return map_; }
    std::vector<std::size_t> one_based() const;
    bool is_identity() const noexcept;

    /// Lexicographic rank in [0, n!). Used to tabulate permutation laws.
    std::uint64_t rank() const;
    static Permutation unrank(std::uint64_t rank, std::size_t n);

    std::string to_string() const;

    friend bool operator==(const Permutation&, const Permutation&) = default;
    friend auto operator<=>(const Permutation&, const Permutation&) = default;

private:
    explicit Permutation(std::vector<std::size_t> mapping) : map_(std::move(mapping)) {}
    std::vector<std::size_t> map_;
};

std::uint64_t factorial(std::size_t n);

/// (alpha o beta)(i) = alpha(beta(i)).
Permutation compose(const Permutation& alpha, const Permutation& beta);
Permutation invert(const Permutation& sigma);

/// result[i] = x[sigma(i)], the sequence (x_sigma(1), ..., x_sigma(n)).
template <class T>
std::vector<T> apply_permutation(const Permutation& sigma, std::span<const T> x)
{
    if (x.size() != sigma.size())
        throw InvalidArgument("apply: sequence length " + std::to_string(x.size()) +
                              " does not match permutation size " + std::to_string(sigma.size()));
    std::vector<T> out;
    out.reserve(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        out.push_back(x[sigma(i)]);
    return out;
}

/// apply_permutation for any contiguous range. Constrained so that it is
/// preferred over std::apply, which argument-dependent lookup also finds.
template <class P, class R>
    requires std::same_as<std::remove_cvref_t<P>, Permutation> && std::ranges::contiguous_range<R>
auto apply(P&& sigma, R&& x)
{
    using T = std::ranges::range_value_t<R>;
    return apply_permutation(sigma, std::span<const T>(std::ranges::data(x), std::ranges::size(x)));
}

/// Fisher-Yates with decreasing ranges. Consumes exactly max(n-1, 0) draws.
Permutation uniform_permutation(std::size_t n, RngStream& rng);

/// Stable sort of positions: apply(result, x) is non-decreasing under `less`,
/// and equal entries keep their original relative order.
template <class T, class Less = std::less<T>>
Permutation sorting_permutation(std::span<const T> x, Less less = {})
{
    std::vector<std::size_t> idx(x.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return less(x[a], x[b]); });
    return Permutation::from_zero_based(std::move(idx));
}

template <class T, class Less = std::less<T>>
Permutation sorting_permutation(const std::vector<T>& x, Less less = {})
{
    return sorting_permutation(std::span<const T>(x), less);
}

struct SwallowPair {
    Permutation alpha;
    Permutation beta;
};

/// Splits gamma into two marginally uniform permutations with
/// compose(alpha, beta) == gamma: alpha = sigma^-1, beta = sigma o gamma for a
/// fresh uniform sigma drawn from `rng`.
SwallowPair swallow_decompose(const Permutation& gamma, RngStream& rng);

struct UniformityReport {
    double statistic = 0.0;
    std::size_t dof = 0;
    double critical = 0.0;
    bool pass = false;
};

inline constexpr std::size_t kMaxUniformityTestSize = 7;

/// Chi-square goodness of fit against the uniform law on S_n.
/// Requires a common n <= 7 and at least 5 * n! samples.
UniformityReport permutation_uniformity_test(std::span<const Permutation> samples,
                                             double quantile = 0.999);

} // namespace exchlab
