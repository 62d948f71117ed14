#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "exchlab/distribution.hpp"
#include "exchlab/permutation.hpp"
#include "exchlab/rng.hpp"
#include "exchlab/sequence.hpp"

namespace exchlab {

/// Input law violates exchangeability; the message names the worst
/// adjacent transposition.
class NotExchangeable : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

/// Total order on {0..m-1} given by ranks: a precedes b iff rank[a] < rank[b].
class SymbolOrder {
public:
    static SymbolOrder natural(std::size_t m);
    /// `rank` must be a permutation of {0..m-1}.
    static SymbolOrder from_ranks(std::vector<std::size_t> rank);

    std::size_t alphabet_size() const noexcept { return rank_.size(); }
    bool less(Symbol a, Symbol b) const { return rank_.at(a) < rank_.at(b); }
    /// Non-decreasing rearrangement of x under this order.
    Pattern sorted(std::span<const Symbol> x) const;
    bool is_sorted(std::span<const Symbol> x) const;

private:
    explicit SymbolOrder(std::vector<std::size_t> rank) : rank_(std::move(rank)) {}
    std::vector<std::size_t> rank_;
};

/// Mixing measure over sorted patterns x* with the urn law of each x*.
PatternMixture urn_representation(const SequenceDistribution& p, double tol = kProbabilityTolerance);

/// sum_x* mu(x*) urn_law(x*).
SequenceDistribution mixture_of_urns(const PatternMixture& mu, std::size_t m, std::size_t n);

struct EtaReport {
    /// eta[K] = Pr(number of ones = K), K = 0..N.
    std::vector<double> eta;
    /// max |Pr(sum_{i<=n} X_i = k | eta = K) - hypergeom(N,K,n,k)| over all
    /// n <= N, k, and K with Pr(eta = K) > 0.
    double max_deviation = 0.0;
    bool verified = false;
};

/// Law of the number of ones for a binary exchangeable law, with the
/// hypergeometric conditional identity checked for every prefix length.
EtaReport eta_mixing_measure(const SequenceDistribution& p, double tol = kProbabilityTolerance);

/// Draw K ~ eta, then an urn sequence with K ones: the composite law on {0,1}^N.
SequenceDistribution eta_urn_composite(std::span<const double> eta);

/**
 * Order-respecting decomposition into elementary components.
 *
 * mixing.atoms[i] is a sorted pattern x*, mixing.weights[i] = Pr(sorted(X) = x*)
 * and components[i] is the law of X given sorted(X) = x*. Atoms with zero
 * probability are omitted.
 */
struct Decomposition {
    SymbolOrder order;
    std::size_t alphabet_size = 0;
    std::size_t length = 0;
    PatternMixture mixing;
    std::vector<SequenceDistribution> components;

    SequenceDistribution reconstruct() const;
};

Decomposition general_decomposition(const SequenceDistribution& p);
Decomposition general_decomposition(const SequenceDistribution& p, const SymbolOrder& order);

struct ComponentDraw {
    Pattern output;
    Permutation gamma; ///< apply(gamma, x_star) == output
    Permutation alpha;
    Permutation beta;
};

/// z ~ q, gamma uniform among permutations with apply(gamma, x_star) = z,
/// (alpha, beta) = swallow_decompose(gamma); output is
/// apply(compose(alpha, beta), x_star).
ComponentDraw elementary_component_sampler(std::span<const Symbol> x_star, const SequenceDistribution& q,
                                           RngStream& rng);

/// The occurrence-count vector is constant on the support of p.
bool is_elementary(const SequenceDistribution& p);

inline constexpr double kSingularPivot = 1e-8;

struct SignedSolveResult {
    std::vector<double> support;
    std::vector<double> weights;
    /// max_s |sum_j w_j p_j^s (1-p_j)^(n-s) - c_s|
    double residual = 0.0;
};

/// Signed Bernoulli mixture reproducing a binary exchangeable law exactly.
/// Default support is {j/n}. Throws on near-singular systems.
SignedSolveResult signed_mixture_solve(const SequenceDistribution& p,
                                       std::optional<std::vector<double>> support = std::nullopt);

struct DfBoundReport {
    std::size_t N = 0, K = 0, k = 0;
    double tv = 0.0;
    /// Exact value as a reduced fraction when it fits 128-bit arithmetic.
    std::optional<std::string> tv_exact;
    double bound = 0.0;
    bool pass = false;
};

/// TV distance (factor-2 convention) between the first k draws of an urn
/// with K ones among N and the i.i.d. Bernoulli(K/N) witness, against 4k/N.
DfBoundReport df_bound_check(std::size_t N, std::size_t K, std::size_t k);

void write_decomposition(std::ostream& os, const Decomposition& d);
void write_signed_result(std::ostream& os, const SignedSolveResult& r);

} // namespace exchlab
