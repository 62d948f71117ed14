#include <doctest.h>

#include <cmath>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "exchlab/combinatorics.hpp"
#include "exchlab/decomposition.hpp"
#include "exchlab/distribution.hpp"
#include "exchlab/error.hpp"
#include "exchlab/stats.hpp"

using namespace exchlab;

namespace {

const std::vector<double> kFair{0.5, 0.5};

double max_abs_diff(const SequenceDistribution& p, const SequenceDistribution& q)
{
    double d = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i)
        d = std::max(d, std::abs(p.probability(i) - q.probability(i)));
    return d;
}

SequenceDistribution two_by_two()
{
    return SequenceDistribution(2, 2, {0.1, 0.2, 0.3, 0.4});
}

/// Urn/i.i.d./Polya corpus of binary exchangeable laws.
std::vector<SequenceDistribution> binary_corpus(std::size_t N)
{
    std::vector<SequenceDistribution> out;
    for (double p : {0.0, 0.2, 0.5, 0.9}) {
        const std::vector<double> pi{1.0 - p, p};
        out.push_back(iid_law(pi, N));
    }
    for (std::vector<std::size_t> c : {std::vector<std::size_t>{1, 1}, {2, 1}, {1, 3}})
        out.push_back(polya_law(c, N));
    PatternMixture mu;
    for (std::size_t K = 0; K <= N; K += 2) {
        Pattern x(N, 0);
        std::fill(x.end() - static_cast<std::ptrdiff_t>(K), x.end(), 1);
        mu.atoms.push_back(x);
        mu.weights.push_back(1.0);
    }
    for (auto& w : mu.weights)
        w /= static_cast<double>(mu.weights.size());
    out.push_back(mixture_of_urns(mu, 2, N));
    return out;
}

} // namespace

TEST_CASE("SymbolOrder")
{
    const auto nat = SymbolOrder::natural(3);
    CHECK(nat.sorted(Pattern{2, 0, 1, 0}) == Pattern{0, 0, 1, 2});
    const auto rev = SymbolOrder::from_ranks({2, 1, 0});
    CHECK(rev.sorted(Pattern{2, 0, 1, 0}) == Pattern{2, 1, 0, 0});
    CHECK(rev.is_sorted(Pattern{1, 1, 0}));
    CHECK_FALSE(rev.is_sorted(Pattern{0, 1}));
    CHECK_THROWS_AS(SymbolOrder::from_ranks({0, 0}), InvalidArgument);
}

TEST_CASE("urn_representation")
{
    const auto pm = urn_representation(SequenceDistribution::point_mass(2, Pattern{1, 1, 1}));
    REQUIRE(pm.atoms.size() == 1);
    CHECK(pm.atoms[0] == Pattern{1, 1, 1});
    CHECK(pm.weights[0] == 1.0);

    const auto fair = urn_representation(iid_law(kFair, 2));
    REQUIRE(fair.atoms.size() == 3);
    std::map<Pattern, double> w;
    for (std::size_t i = 0; i < fair.atoms.size(); ++i)
        w[fair.atoms[i]] = fair.weights[i];
    CHECK(w.at(Pattern{0, 0}) == 0.25);
    CHECK(w.at(Pattern{0, 1}) == 0.5);
    CHECK(w.at(Pattern{1, 1}) == 0.25);

    const auto polya = urn_representation(polya_law(std::vector<std::size_t>{1, 1}, 2));
    for (double v : polya.weights)
        CHECK(v == doctest::Approx(1.0 / 3.0));

    CHECK_THROWS_AS(urn_representation(two_by_two()), NotExchangeable);
}

TEST_CASE("urn representation reconstructs exchangeable laws")
{
    const std::vector<double> pi{0.2, 0.5, 0.3};
    for (const auto& p : {iid_law(pi, 4), polya_law(std::vector<std::size_t>{1, 2, 1}, 4)}) {
        const auto mu = urn_representation(p);
        CHECK(max_abs_diff(mixture_of_urns(mu, 3, 4), p) <= 1e-12);
    }
}

TEST_CASE("eta_mixing_measure")
{
    const auto urn = eta_mixing_measure(urn_law(Pattern{0, 1, 1, 0, 1}, 2));
    REQUIRE(urn.eta.size() == 6);
    for (std::size_t K = 0; K <= 5; ++K)
        CHECK(std::abs(urn.eta[K] - (K == 3 ? 1.0 : 0.0)) <= 1e-15);
    CHECK(urn.verified);

    const auto iid = eta_mixing_measure(iid_law(kFair, 4));
    for (std::size_t K = 0; K <= 4; ++K)
        CHECK(iid.eta[K] == doctest::Approx(static_cast<double>(binomial_exact(4, K)) / 16.0).epsilon(1e-15));
    CHECK(iid.verified);
    CHECK(iid.max_deviation <= 1e-12);

    const auto polya = eta_mixing_measure(polya_law(std::vector<std::size_t>{1, 1}, 3));
    for (double v : polya.eta)
        CHECK(std::abs(v - 0.25) <= 1e-15);

    CHECK_THROWS_AS(eta_mixing_measure(iid_law(std::vector<double>{0.3, 0.3, 0.4}, 2)), InvalidArgument);
    CHECK_THROWS_AS(eta_mixing_measure(two_by_two()), NotExchangeable);
}

TEST_CASE("eta composite reproduces the binary corpus")
{
    for (std::size_t N = 1; N <= 8; ++N)
        for (const auto& p : binary_corpus(N)) {
            const auto eta = eta_mixing_measure(p);
            REQUIRE(eta.verified);
            REQUIRE(max_abs_diff(eta_urn_composite(eta.eta), p) <= 1e-12);
        }
}

TEST_CASE("general_decomposition on the 2x2 example")
{
    const auto d = general_decomposition(two_by_two());
    REQUIRE(d.mixing.atoms.size() == 3);
    CHECK(d.mixing.atoms[0] == Pattern{0, 0});
    CHECK(d.mixing.weights[0] == doctest::Approx(0.1));
    CHECK(d.mixing.atoms[1] == Pattern{0, 1});
    CHECK(d.mixing.weights[1] == doctest::Approx(0.5));
    CHECK(d.mixing.weights[2] == doctest::Approx(0.4));
    CHECK(d.components[1].probability(Pattern{0, 1}) == doctest::Approx(0.4));
    CHECK(d.components[1].probability(Pattern{1, 0}) == doctest::Approx(0.6));
    CHECK(max_abs_diff(d.reconstruct(), two_by_two()) <= 1e-15);

    const auto pm = general_decomposition(SequenceDistribution::point_mass(2, Pattern{1, 0}));
    REQUIRE(pm.mixing.atoms.size() == 1);
    CHECK(pm.mixing.atoms[0] == Pattern{0, 1});
    CHECK(pm.components[0].probability(Pattern{1, 0}) == 1.0);
}

TEST_CASE("general_decomposition matches the urn representation on exchangeable laws")
{
    for (const auto& p : binary_corpus(4)) {
        const auto d = general_decomposition(p);
        const auto mu = urn_representation(p);
        REQUIRE(d.mixing.atoms == mu.atoms);
        for (std::size_t i = 0; i < mu.atoms.size(); ++i) {
            CHECK(d.mixing.weights[i] == doctest::Approx(mu.weights[i]).epsilon(1e-14));
            CHECK(max_abs_diff(d.components[i], urn_law(mu.atoms[i], 2)) <= 1e-12);
        }
    }
}

TEST_CASE("general_decomposition properties on random laws")
{
    RngStream rng(31);
    for (int t = 0; t < 100; ++t) {
        const std::size_t m = 2 + rng.bounded(3), n = 1 + rng.bounded(4);
        const auto p = random_distribution(m, n, rng, 0.3);
        const auto order = t % 2 ? SymbolOrder::natural(m) : SymbolOrder::from_ranks([&] {
            std::vector<std::size_t> r(m);
            std::iota(r.rbegin(), r.rend(), std::size_t{0});
            return r;
        }());
        const auto d = general_decomposition(p, order);
        REQUIRE(max_abs_diff(d.reconstruct(), p) <= 1e-12);
        for (const auto& q : d.components)
            REQUIRE(is_elementary(q));
        for (const auto& x : d.mixing.atoms)
            REQUIRE(order.is_sorted(x));
        for (double w : d.mixing.weights)
            REQUIRE(w > 0.0);
    }
}

TEST_CASE("is_elementary")
{
    CHECK(is_elementary(urn_law(Pattern{0, 1, 2, 2}, 3)));
    CHECK_FALSE(is_elementary(iid_law(kFair, 2)));
}

TEST_CASE("elementary_component_sampler")
{
    RngStream rng(41);
    const Pattern xs{0, 1};
    const auto pm = SequenceDistribution::point_mass(2, xs);
    for (int i = 0; i < 100; ++i)
        REQUIRE(elementary_component_sampler(xs, pm, rng).output == xs);

    const auto q = general_decomposition(two_by_two()).components[1];
    std::vector<Permutation> alphas;
    double hits01 = 0.0;
    for (int i = 0; i < 100000; ++i) {
        const auto d = elementary_component_sampler(xs, q, rng);
        REQUIRE(apply(d.gamma, xs) == d.output);
        REQUIRE(compose(d.alpha, d.beta) == d.gamma);
        hits01 += d.output == Pattern{0, 1};
    }
    CHECK(std::abs(hits01 / 100000 - 0.4) < 0.01);

    const Pattern x3{0, 1, 1};
    const auto q3 = urn_law(x3, 2);
    for (int i = 0; i < 100000; ++i)
        alphas.push_back(elementary_component_sampler(x3, q3, rng).alpha);
    CHECK(permutation_uniformity_test(alphas).pass);

    CHECK_THROWS_AS(elementary_component_sampler(xs, iid_law(kFair, 2), rng), InvalidArgument);
}

TEST_CASE("signed mixture on the urn n=2, K=1")
{
    const auto r = signed_mixture_solve(urn_law(Pattern{0, 1}, 2));
    REQUIRE(r.support == std::vector<double>{0.0, 0.5, 1.0});
    CHECK(std::abs(r.weights[0] + 0.5) <= 1e-10);
    CHECK(std::abs(r.weights[1] - 2.0) <= 1e-10);
    CHECK(std::abs(r.weights[2] + 0.5) <= 1e-10);
    CHECK(r.residual <= 1e-10);
}

TEST_CASE("signed mixture properties")
{
    const std::vector<double> pi{0.75, 0.25};
    const auto exact = signed_mixture_solve(iid_law(pi, 4));
    for (std::size_t j = 0; j < exact.support.size(); ++j)
        CHECK(std::abs(exact.weights[j] - (exact.support[j] == 0.25 ? 1.0 : 0.0)) <= 1e-10);

    for (std::size_t n = 1; n <= 10; ++n)
        for (const auto& p : binary_corpus(n)) {
            const auto r = signed_mixture_solve(p);
            REQUIRE(r.residual <= 1e-10);
            REQUIRE(std::abs(std::accumulate(r.weights.begin(), r.weights.end(), 0.0) - 1.0) <= 1e-10);
            PointMixture mu{r.support, r.weights, true};
            double total = 0.0;
            for (std::size_t s = 0; s <= n; ++s)
                total += binomial(n, s) * binomial_mixture_pattern_prob(mu, n, s);
            REQUIRE(std::abs(total - 1.0) <= 1e-10);
        }

    const std::vector<double> custom{0.1, 0.4, 0.6, 0.9};
    const auto c = signed_mixture_solve(polya_law(std::vector<std::size_t>{1, 1}, 3), custom);
    CHECK(c.residual <= 1e-10);
    CHECK_THROWS_AS(signed_mixture_solve(iid_law(kFair, 2), std::vector<double>{0.5, 0.5, 0.1}), InvalidArgument);
    CHECK_THROWS_AS(signed_mixture_solve(iid_law(kFair, 2), std::vector<double>{0.5, 0.5 + 1e-13, 0.1}),
                    InvalidArgument);
    CHECK_THROWS_AS(signed_mixture_solve(two_by_two()), NotExchangeable);
}

TEST_CASE("df bound: exact cell and degenerate cases")
{
    const auto r = df_bound_check(10, 5, 2);
    REQUIRE(r.tv_exact);
    CHECK(*r.tv_exact == "1/9");
    CHECK(r.bound == doctest::Approx(0.8));
    CHECK(r.pass);
    for (std::size_t k = 1; k <= 6; ++k) {
        CHECK(df_bound_check(6, 0, k).tv == 0.0);
        CHECK(df_bound_check(6, 6, k).tv == 0.0);
    }
    CHECK_THROWS_AS(df_bound_check(4, 5, 1), InvalidArgument);
    CHECK_THROWS_AS(df_bound_check(4, 2, 5), InvalidArgument);
}

TEST_CASE("df bound agrees with a distribution-level computation")
{
    for (std::size_t N = 1; N <= 8; ++N)
        for (std::size_t K = 0; K <= N; ++K) {
            Pattern x(N, 0);
            std::fill(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(K), 1);
            const auto urn = urn_law(x, 2);
            const double q = static_cast<double>(K) / static_cast<double>(N);
            const std::vector<double> pi{1.0 - q, q};
            for (std::size_t k = 1; k <= N; ++k) {
                std::vector<std::size_t> idx(k);
                std::iota(idx.begin(), idx.end(), std::size_t{0});
                const double oracle = tv_distance(marginal(urn, idx), iid_law(pi, k));
                const auto r = df_bound_check(N, K, k);
                REQUIRE(std::abs(r.tv - oracle) <= 1e-12);
                REQUIRE(r.pass);
            }
        }
}

TEST_CASE("decomposition text output")
{
    std::ostringstream os;
    write_decomposition(os, general_decomposition(two_by_two()));
    const std::string s = os.str();
    CHECK(s.rfind("2 2\n", 0) == 0);
    CHECK(s.find("# mixing\n00\t0.1\n01\t0.5\n11\t0.4\n") != std::string::npos);
    CHECK(s.find("01 : 10\t0.6") != std::string::npos);
}
