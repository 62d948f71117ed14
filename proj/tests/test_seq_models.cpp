#include <doctest.h>

#include <cmath>
#include <map>
#include <vector>

#include "exchlab/distribution.hpp"
#include "exchlab/error.hpp"
#include "exchlab/seq_models.hpp"
#include "exchlab/stats.hpp"

using namespace exchlab;

namespace {

constexpr int kDraws = 100000;

template <class Gen>
std::map<Pattern, double> frequencies(int draws, Gen&& gen)
{
    std::map<Pattern, double> f;
    for (int i = 0; i < draws; ++i)
        f[gen()] += 1.0 / draws;
    return f;
}

} // namespace

TEST_CASE("urn_sequence")
{
    RngStream rng(1);
    CHECK(urn_sequence(Pattern{4, 4, 4}, rng) == Pattern{4, 4, 4});
    const auto f = frequencies(kDraws, [&] { return urn_sequence(Pattern{0, 1}, rng); });
    CHECK(std::abs(f.at(Pattern{0, 1}) - 0.5) < 0.01);
    CHECK(std::abs(f.at(Pattern{1, 0}) - 0.5) < 0.01);
    for (int t = 0; t < 1000; ++t) {
        Pattern x(7);
        for (auto& v : x)
            v = static_cast<Symbol>(rng.bounded(4));
        REQUIRE(occurrence_counts(urn_sequence(x, rng), 4) == occurrence_counts(x, 4));
    }
}

TEST_CASE("elementary_sequence with independent coupling matches the urn")
{
    const Pattern x{0, 0, 1, 2};
    RngStream rng(2);
    std::map<Pattern, std::size_t> index;
    std::vector<std::uint64_t> a, b;
    auto bump = [&](std::vector<std::uint64_t>& v, const Pattern& z) {
        auto [it, fresh] = index.emplace(z, index.size());
        if (it->second >= a.size()) {
            a.resize(it->second + 1);
            b.resize(it->second + 1);
        }
        ++v[it->second];
    };
    for (int i = 0; i < 50000; ++i) {
        bump(a, elementary_sequence(x, IndependentCoupling{}, rng));
        bump(b, urn_sequence(x, rng));
    }
    CHECK(index.size() == 12);
    CHECK(two_sample_chi_square(a, b).p_value > 0.001);
}

TEST_CASE("elementary_sequence with a swallow coupling reproduces the target law")
{
    const Pattern x{0, 1, 2};
    RngStream rng(3);
    const auto g0 = Permutation::from_one_based({3, 1, 2});
    const SwallowCoupling point{{g0}, {1.0}};
    for (int i = 0; i < 1000; ++i) {
        const auto d = elementary_draw(x, point, rng);
        REQUIRE(d.output == apply(g0, x));
        REQUIRE(compose(d.alpha, d.beta) == g0);
    }
    const auto g1 = Permutation::from_one_based({2, 1, 3});
    const SwallowCoupling two{{g0, g1}, {0.3, 0.7}};
    const auto f = frequencies(kDraws, [&] { return elementary_sequence(x, two, rng); });
    CHECK(f.size() == 2);
    CHECK(std::abs(f.at(apply(g0, x)) - 0.3) < 0.01);
    CHECK(std::abs(f.at(apply(g1, x)) - 0.7) < 0.01);
    const SwallowCoupling bad{{g0}, {0.5}};
    CHECK_THROWS_AS(elementary_draw(x, bad, rng), InvalidArgument);
}

TEST_CASE("polya_urn")
{
    RngStream rng(4);
    CHECK(polya_urn({{0, 3}, 5}, rng) == Pattern(5, 1));
    const auto f2 = frequencies(kDraws, [&] { return polya_urn({{1, 1}, 2}, rng); });
    CHECK(std::abs(f2.at(Pattern{1, 1}) - 1.0 / 3) < 0.01);
    CHECK(std::abs(f2.at(Pattern{0, 0}) - 1.0 / 3) < 0.01);
    CHECK(std::abs(f2.at(Pattern{0, 1}) - 1.0 / 6) < 0.01);
    CHECK(std::abs(f2.at(Pattern{1, 0}) - 1.0 / 6) < 0.01);
    std::vector<double> ones(4, 0.0);
    for (int i = 0; i < kDraws; ++i)
        ones[occurrence_count(1, polya_urn({{1, 1}, 3}, rng))] += 1.0 / kDraws;
    for (double v : ones)
        CHECK(std::abs(v - 0.25) < 0.01);
    CHECK_THROWS_AS(polya_urn({{0, 0}, 2}, rng), InvalidArgument);
}

TEST_CASE("polya_urn agrees with the exact tree law")
{
    RngStream rng(5);
    const std::vector<std::size_t> counts{2, 1, 1};
    const auto exact = polya_law(counts, 3);
    std::vector<std::uint64_t> obs(exact.size(), 0);
    for (int i = 0; i < kDraws; ++i)
        ++obs[exact.encode(polya_urn({counts, 3}, rng))];
    CHECK(chi_square_gof_pooled(obs, exact.probabilities()).p_value > 0.001);
}

TEST_CASE("bernoulli_mixture_sequence")
{
    RngStream rng(6);
    PointMixture zero{{0.0}, {1.0}};
    CHECK(bernoulli_mixture_sequence(zero, 4, rng) == Pattern(4, 0));
    PointMixture ends{{0.0, 1.0}, {0.5, 0.5}};
    for (int i = 0; i < 200; ++i) {
        const auto z = bernoulli_mixture_sequence(ends, 5, rng);
        REQUIRE((z == Pattern(5, 0) || z == Pattern(5, 1)));
    }
    PointMixture half{{0.5}, {1.0}};
    const auto f = frequencies(kDraws, [&] { return bernoulli_mixture_sequence(half, 2, rng); });
    for (const auto& [k, v] : f)
        CHECK(std::abs(v - 0.25) < 0.01);
    PointMixture neg{{0.0, 1.0}, {-0.5, 1.5}, true};
    CHECK_THROWS_AS(bernoulli_mixture_sequence(neg, 2, rng), InvalidArgument);
}

TEST_CASE("rce_array")
{
    RngStream rng(7);
    RceSpec constant{[](double, double, double, double) -> Symbol { return 1; }, 3, 4, 2};
    for (const auto& row : rce_array(constant, rng))
        CHECK(row == Pattern(4, 1));

    // f = [lambda < alpha]: rows are exchangeable
    RceSpec thr{[](double a, double, double, double l) -> Symbol { return l < a ? 1 : 0; }, 3, 3, 2};
    std::map<Pattern, std::size_t> index;
    std::vector<std::uint64_t> a, b;
    auto slot = [&](const Pattern& z) {
        auto it = index.emplace(z, index.size()).first;
        if (it->second >= a.size()) {
            a.resize(it->second + 1);
            b.resize(it->second + 1);
        }
        return it->second;
    };
    for (int i = 0; i < 40000; ++i) {
        const auto m = rce_array(thr, rng);
        Pattern r12 = m[0], r21 = m[1];
        r12.insert(r12.end(), m[1].begin(), m[1].end());
        r21.insert(r21.end(), m[0].begin(), m[0].end());
        ++a[slot(r12)];
        ++b[slot(r21)];
    }
    CHECK(two_sample_chi_square(a, b).p_value > 0.001);

    RceSpec bad{[](double, double, double, double) -> Symbol { return 5; }, 1, 1, 2};
    CHECK_THROWS_AS(rce_array(bad, rng), InvalidArgument);
}

TEST_CASE("markov_equivalent")
{
    const Pattern a{1, 2, 1, 1, 2}, b{1, 1, 2, 1, 2};
    CHECK(markov_equivalent(a, a));
    CHECK(markov_equivalent(a, b));
    CHECK_FALSE(markov_equivalent(Pattern{1, 2, 1, 2}, Pattern{1, 2, 2, 1}));
    CHECK_FALSE(markov_equivalent(Pattern{2, 1}, Pattern{1, 2}));
    CHECK_THROWS_AS(markov_equivalent(Pattern{1}, Pattern{1, 2}), InvalidArgument);
}

TEST_CASE("triangle_mixture_points")
{
    RngStream rng(8);
    for (int t = 0; t < 1000; ++t) {
        const auto pts = triangle_mixture_points(6, rng);
        const bool lower = in_lower_triangle(pts[0]);
        for (const auto& p : pts) {
            REQUIRE(p.x >= 0.0);
            REQUIRE(p.x < 1.0);
            REQUIRE(p.y >= 0.0);
            REQUIRE(p.y < 1.0);
            REQUIRE(in_lower_triangle(p) == lower);
        }
    }
    double sx = 0.0, sy = 0.0;
    for (int i = 0; i < kDraws; ++i) {
        const auto p = triangle_mixture_points(1, rng)[0];
        sx += p.x;
        sy += p.y;
    }
    CHECK(std::abs(sx / kDraws - 0.5) < 0.005);
    CHECK(std::abs(sy / kDraws - 0.5) < 0.005);
}
