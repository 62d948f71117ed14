#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <variant>
#include <vector>

#include "exchlab/distribution.hpp"
#include "exchlab/permutation.hpp"
#include "exchlab/rng.hpp"
#include "exchlab/sequence.hpp"

namespace exchlab {

/// apply(sigma, x) for a uniform sigma: balls drawn without replacement.
Pattern urn_sequence(std::span<const Symbol> x, RngStream& rng);

struct IndependentCoupling {};

/// gamma drawn from the given law, then split with swallow_decompose.
struct SwallowCoupling {
    std::vector<Permutation> targets;
    std::vector<double> weights;
};

using ElementaryCoupling = std::variant<IndependentCoupling, SwallowCoupling>;

struct ElementaryDraw {
    Pattern output;
    Permutation alpha;
    Permutation beta;
};

/// apply(compose(alpha, beta), x) with (alpha, beta) drawn from `coupling`.
/// Both alpha and beta are marginally uniform on S_n.
ElementaryDraw elementary_draw(std::span<const Symbol> x, const ElementaryCoupling& coupling,
                               RngStream& rng);

inline Pattern elementary_sequence(std::span<const Symbol> x, const ElementaryCoupling& coupling,
                                   RngStream& rng)
{
    return elementary_draw(x, coupling, rng).output;
}

struct PolyaSpec {
    std::vector<std::size_t> initial_counts;
    std::size_t steps = 0;
};

/// Draw a ball, return it with one more of the same colour. One bounded
/// integer draw per step, on exact integer ball counts.
Pattern polya_urn(const PolyaSpec& spec, RngStream& rng);

/// p ~ mu once, then n i.i.d. Bernoulli(p) bits. Rejects signed measures.
Pattern bernoulli_mixture_sequence(const PointMixture& mu, std::size_t n, RngStream& rng);

struct RceSpec {
    /// f(alpha, xi_i, eta_j, lambda_ij), must be pure.
    std::function<Symbol(double, double, double, double)> f;
    std::size_t rows = 1;
    std::size_t cols = 1;
    std::size_t alphabet_size = 2;
};

/// Row/column exchangeable array. Latents are drawn in the order alpha,
/// xi_1..xi_rows, eta_1..eta_cols, then lambda row-major.
std::vector<Pattern> rce_array(const RceSpec& spec, RngStream& rng);

/// Same initial state and the same count of every i->j transition.
bool markov_equivalent(std::span<const Symbol> a, std::span<const Symbol> b);

/// Lower triangle is {y <= x} (diagonal included), upper is {y > x}.
inline bool in_lower_triangle(const Point& p) noexcept { return p.y <= p.x; }

/// Pick the lower or upper triangle of the unit square with probability 1/2,
/// then n i.i.d. uniform points inside it.
std::vector<Point> triangle_mixture_points(std::size_t n, RngStream& rng);

} // namespace exchlab
