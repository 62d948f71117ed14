#include "exchlab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>

#include "exchlab/error.hpp"

namespace exchlab {

double chi_square_quantile(std::size_t dof, double q)
{
    if (dof == 0)
        throw InvalidArgument("chi_square_quantile: dof must be positive");
    boost::math::chi_squared dist(static_cast<double>(dof));
    return boost::math::quantile(dist, q);
}

double chi_square_sf(double x, std::size_t dof)
{
    if (dof == 0)
        return 1.0;
    if (!std::isfinite(x))
        return 0.0;
    boost::math::chi_squared dist(static_cast<double>(dof));
    return boost::math::cdf(boost::math::complement(dist, std::max(x, 0.0)));
}

ChiSquareResult chi_square_gof(std::span<const std::uint64_t> observed,
                               std::span<const double> expected_probs)
{
    if (observed.size() != expected_probs.size())
        throw InvalidArgument("chi_square_gof: " + std::to_string(observed.size()) +
                              " observed cells vs " + std::to_string(expected_probs.size()) +
                              " expected");
    double total = 0.0;
    for (auto c : observed)
        total += static_cast<double>(c);
    ChiSquareResult r;
    std::size_t live = 0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        const double e = expected_probs[i] * total;
        if (expected_probs[i] <= 0.0) {
            if (observed[i] > 0)
                r.statistic = std::numeric_limits<double>::infinity();
            continue;
        }
        ++live;
        const double d = static_cast<double>(observed[i]) - e;
        r.statistic += d * d / e;
    }
    r.dof = live > 0 ? live - 1 : 0;
    r.p_value = chi_square_sf(r.statistic, r.dof);
    return r;
}

ChiSquareResult chi_square_gof_pooled(std::span<const std::uint64_t> observed,
                                      std::span<const double> expected_probs, double min_expected)
{
    if (observed.size() != expected_probs.size())
        throw InvalidArgument("chi_square_gof_pooled: cell count mismatch");
    double total = 0.0;
    for (auto c : observed)
        total += static_cast<double>(c);
    std::vector<std::uint64_t> obs;
    std::vector<double> exp;
    std::uint64_t pooled_obs = 0;
    double pooled_exp = 0.0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        if (expected_probs[i] * total < min_expected) {
            pooled_obs += observed[i];
            pooled_exp += expected_probs[i];
        } else {
            obs.push_back(observed[i]);
            exp.push_back(expected_probs[i]);
        }
    }
    if (pooled_obs > 0 || pooled_exp > 0.0) {
        obs.push_back(pooled_obs);
        exp.push_back(pooled_exp);
    }
    return chi_square_gof(obs, exp);
}

ChiSquareResult two_sample_chi_square(std::span<const std::uint64_t> a,
                                      std::span<const std::uint64_t> b)
{
    if (a.size() != b.size())
        throw InvalidArgument("two_sample_chi_square: cell count mismatch");
    double na = 0.0, nb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        na += static_cast<double>(a[i]);
        nb += static_cast<double>(b[i]);
    }
    ChiSquareResult r;
    if (na == 0.0 || nb == 0.0)
        return r;
    const double total = na + nb;
    std::size_t live = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double col = static_cast<double>(a[i] + b[i]);
        if (col == 0.0)
            continue;
        ++live;
        const double ea = col * na / total;
        const double eb = col * nb / total;
        const double da = static_cast<double>(a[i]) - ea;
        const double db = static_cast<double>(b[i]) - eb;
        r.statistic += da * da / ea + db * db / eb;
    }
    r.dof = live > 0 ? live - 1 : 0;
    r.p_value = chi_square_sf(r.statistic, r.dof);
    return r;
}

ProportionEstimate proportion_estimate(std::uint64_t successes, std::uint64_t trials, double z)
{
    if (trials == 0)
        throw InvalidArgument("proportion_estimate: zero trials");
    if (successes > trials)
        throw InvalidArgument("proportion_estimate: successes exceed trials");
    ProportionEstimate e;
    e.successes = successes;
    e.trials = trials;
    e.estimate = static_cast<double>(successes) / static_cast<double>(trials);
    const double half = z * std::sqrt(e.estimate * (1.0 - e.estimate) / static_cast<double>(trials));
    e.ci_lo = std::max(0.0, e.estimate - half);
    e.ci_hi = std::min(1.0, e.estimate + half);
    return e;
}

} // namespace exchlab
