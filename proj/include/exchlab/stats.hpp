#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

namespace exchlab {

struct ChiSquareResult {
    double statistic = 0.0;
    std::size_t dof = 0;
    double p_value = 1.0;
};

double chi_square_quantile(std::size_t dof, double q);
/// Upper tail Pr(chi2_dof >= x).
double chi_square_sf(double x, std::size_t dof);

/// Pearson goodness of fit. Cells with zero expected probability are dropped
/// from the dof; an observation in such a cell makes the statistic infinite.
ChiSquareResult chi_square_gof(std::span<const std::uint64_t> observed,
                               std::span<const double> expected_probs);

/// As chi_square_gof, but cells whose expected count is below `min_expected`
/// are pooled into one cell first.
ChiSquareResult chi_square_gof_pooled(std::span<const std::uint64_t> observed,
                                      std::span<const double> expected_probs, double min_expected = 5.0);

/// Pearson homogeneity test on a 2 x C table. Cells empty in both samples
/// are dropped.
ChiSquareResult two_sample_chi_square(std::span<const std::uint64_t> a,
                                      std::span<const std::uint64_t> b);

/// Two-sided normal quantile used for every reported confidence interval (99%).
inline constexpr double kCiZ = 2.576;

struct ProportionEstimate {
    std::uint64_t successes = 0;
    std::uint64_t trials = 0;
    double estimate = 0.0;
    double ci_lo = 0.0;
    double ci_hi = 0.0;
};

/// Normal-approximation interval p +- z sqrt(p(1-p)/n), clipped to [0, 1].
ProportionEstimate proportion_estimate(std::uint64_t successes, std::uint64_t trials,
                                       double z = kCiZ);

} // namespace exchlab
