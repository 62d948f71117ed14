#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "exchlab/error.hpp"
#include "exchlab/rng.hpp"
#include "exchlab/sequence.hpp"

namespace exchlab {

inline constexpr double kProbabilityTolerance = 1e-12;
inline constexpr std::size_t kDefaultPatternCap = 1'000'000;

/// m^n, throwing InvalidArgument when it exceeds `cap`.
std::size_t pattern_space_size(std::size_t m, std::size_t n, std::size_t cap = kDefaultPatternCap);

/**
 * Explicit law of a random pattern in S^n, S = {0..m-1}.
 *
 * Patterns are indexed in mixed radix m with coordinate 1 most significant,
 * so index 0 is (0,...,0) and index m^n-1 is (m-1,...,m-1).
 */
class SequenceDistribution {
public:
    SequenceDistribution(std::size_t m, std::size_t n, std::vector<double> probabilities,
                         double tolerance = kProbabilityTolerance);

    static SequenceDistribution point_mass(std::size_t m, std::span<const Symbol> pattern);
    /// Tabulates `weight(pattern)` over S^n; the values must form a pmf.
    static SequenceDistribution tabulate(std::size_t m, std::size_t n,
                                         const std::function<double(std::span<const Symbol>)>& weight);

    std::size_t alphabet_size() const noexcept { return m_; }
    std::size_t length() const noexcept { return n_; }
    std::size_t size() const noexcept { return probs_.size(); }

    std::span<const double> probabilities() const noexcept { return probs_; }
    double probability(std::size_t index) const { return probs_.at(index); }
    double probability(std::span<const Symbol> pattern) const { return probs_[encode(pattern)]; }

    std::size_t encode(std::span<const Symbol> pattern) const;
    Pattern decode(std::size_t index) const;

private:
    std::size_t m_;
    std::size_t n_;
    std::vector<double> probs_;
};

/**
 * Discrete mixing measure: weighted atoms. Atom is a success probability
 * (double), a pattern, or a component distribution on S
 * (std::vector<double>). Weights sum to 1; negative weights need `is_signed`.
 */
template <class Atom>
struct MixingMeasure {
    std::vector<Atom> atoms;
    std::vector<double> weights;
    bool is_signed = false;

    void validate(double tolerance = kProbabilityTolerance) const
    {
        if (atoms.size() != weights.size())
            throw InvalidArgument("mixing measure: " + std::to_string(atoms.size()) + " atoms but " +
                                  std::to_string(weights.size()) + " weights");
        double total = 0.0;
        for (double w : weights) {
            if (!is_signed && w < 0.0)
                throw InvalidArgument("mixing measure: negative weight in an unsigned measure");
            total += w;
        }
        if (std::abs(total - 1.0) > tolerance)
            throw InvalidArgument("mixing measure: weights sum to " + std::to_string(total) + ", not 1");
    }
};

using PointMixture = MixingMeasure<double>;
using PatternMixture = MixingMeasure<Pattern>;
using ComponentMixture = MixingMeasure<std::vector<double>>;

/// Law of the occurrence-count vector (F(0,X), ..., F(m-1,X)).
struct CountDistribution {
    std::size_t alphabet_size = 0;
    std::size_t length = 0;
    std::map<std::vector<std::size_t>, double> law;

    /// Binary alphabets only: entry s is Pr(number of ones = s), s = 0..length.
    std::vector<double> ones_law() const;
};

/// Sum over patterns of |P(z) - Q(z)|, i.e. 2 sup_A |P(A) - Q(A)|. Range [0, 2].
double tv_distance(const SequenceDistribution& p, const SequenceDistribution& q);

struct TranspositionViolation {
    std::size_t position = 0; ///< swaps coordinates position and position+1 (0-based)
    Pattern pattern;
    double difference = 0.0;
};

/// Largest |P(z) - P(tau z)| over adjacent transpositions tau; nullopt for n < 2.
std::optional<TranspositionViolation> worst_transposition(const SequenceDistribution& p);

/// Invariance under adjacent transpositions (which generate S_n) within `tol`.
bool is_exchangeable(const SequenceDistribution& p, double tol = kProbabilityTolerance);

/// Sum_j w_j p_j^s (1-p_j)^(n-s): the probability of one fixed pattern with s
/// ones under the Bernoulli mixture. Signed measures are accepted.
double binomial_mixture_pattern_prob(const PointMixture& mu, std::size_t n, std::size_t s);

/// P(z) = sum_j w_j prod_i pi_j(z_i).
SequenceDistribution iid_mix_distribution(const ComponentMixture& mu, std::size_t n);

/// Renormalized restriction of P to the patterns satisfying `predicate`.
/// Throws ConditionUnsatisfiable when the predicate has probability zero.
SequenceDistribution condition(const SequenceDistribution& p,
                               const std::function<bool(std::span<const Symbol>)>& predicate);

/// Law of (X_i)_{i in indices}, in the given order. Indices are 0-based.
SequenceDistribution marginal(const SequenceDistribution& p, std::span<const std::size_t> indices);

CountDistribution count_distribution(const SequenceDistribution& p);

// Reference laws.

/// n i.i.d. draws from the probability vector `pi`.
SequenceDistribution iid_law(std::span<const double> pi, std::size_t n);

/// Uniform random rearrangement of x: each distinct rearrangement has
/// probability prod_a F(a,x)! / n!.
SequenceDistribution urn_law(std::span<const Symbol> x, std::size_t m);

/// Exact Polya urn law, the product of draw probabilities along each path
/// of the reinforcement tree.
SequenceDistribution polya_law(std::span<const std::size_t> initial_counts, std::size_t steps);

/// Random law on S^n: independent Exp(1) masses, each entry zeroed with
/// probability `sparsity` (at least one entry is kept), then normalized.
SequenceDistribution random_distribution(std::size_t m, std::size_t n, RngStream& rng, double sparsity = 0.0);

/// Text form: first line "m n", then "pattern<TAB>probability" for every
/// nonzero entry in index order, probabilities printed round-trip exact.
void write_distribution(std::ostream& os, const SequenceDistribution& p);
SequenceDistribution read_distribution(std::istream& is);

/// Shortest round-trip decimal form of a double.
std::string format_double(double v);

} // namespace exchlab
