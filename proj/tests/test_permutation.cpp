#include <doctest.h>

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "exchlab/error.hpp"
#include "exchlab/permutation.hpp"
#include "exchlab/sequence.hpp"

using namespace exchlab;

namespace {

std::vector<Permutation> draws(std::size_t n, std::size_t count, std::uint64_t seed)
{
    RngStream rng(seed);
    std::vector<Permutation> out;
    for (std::size_t i = 0; i < count; ++i)
        out.push_back(uniform_permutation(n, rng));
    return out;
}

} // namespace

TEST_CASE("uniform_permutation edge sizes")
{
    RngStream rng(1);
    CHECK(uniform_permutation(0, rng).size() == 0);
    CHECK(uniform_permutation(1, rng).is_identity());
    CHECK(rng.draws() == 0);
    uniform_permutation(5, rng);
    CHECK(rng.draws() == 4);
}

TEST_CASE("uniform_permutation n=3 passes chi-square at 60000 draws")
{
    const auto s = draws(3, 60000, 2024);
    std::map<std::vector<std::size_t>, int> freq;
    for (const auto& p : s)
        ++freq[p.one_based()];
    REQUIRE(freq.size() == 6);
    // independent Pearson statistic against 5-dof 99.9% quantile 20.515
    double stat = 0.0;
    for (const auto& [k, c] : freq)
        stat += (c - 10000.0) * (c - 10000.0) / 10000.0;
    CHECK(stat < 20.515);
    const auto r = permutation_uniformity_test(s);
    CHECK(r.dof == 5);
    CHECK(r.statistic == doctest::Approx(stat));
    CHECK(r.critical == doctest::Approx(20.515).epsilon(1e-4));
    CHECK(r.pass);
}

TEST_CASE("composition and inversion")
{
    const auto id3 = Permutation::identity(3);
    const auto a = Permutation::from_one_based({2, 3, 1});
    const auto b = Permutation::from_one_based({2, 1, 3});
    CHECK(compose(id3, a) == a);
    CHECK(compose(invert(a), a) == id3);
    // alpha(beta(1)) = alpha(2) = 3, alpha(beta(2)) = alpha(1) = 2, alpha(beta(3)) = 1
    CHECK(compose(a, b).one_based() == std::vector<std::size_t>{3, 2, 1});
    CHECK(invert(id3) == id3);
    CHECK(invert(a).one_based() == std::vector<std::size_t>{3, 1, 2});
    for (const auto& s : draws(6, 100, 3))
        CHECK(invert(invert(s)) == s);
    CHECK_THROWS_AS(compose(a, Permutation::identity(2)), InvalidArgument);
}

TEST_CASE("from_zero_based rejects non-bijections")
{
    CHECK_THROWS_AS(Permutation::from_zero_based({0, 0, 1}), InvalidArgument);
    CHECK_THROWS_AS(Permutation::from_zero_based({0, 3}), InvalidArgument);
    CHECK_THROWS_AS(Permutation::from_one_based({0, 1}), InvalidArgument);
    CHECK(Permutation::from_one_based({2, 3, 1}).to_string() == "[2,3,1]");
}

TEST_CASE("apply")
{
    const std::vector<char> abc{'a', 'b', 'c'};
    CHECK(apply(Permutation::identity(3), abc) == abc);
    const Pattern x01{0, 1};
    CHECK(apply(Permutation::from_one_based({2, 1}), x01) == Pattern{1, 0});
    CHECK_THROWS_AS(apply(Permutation::identity(2), abc), InvalidArgument);

    RngStream rng(4);
    for (int t = 0; t < 100; ++t) {
        Pattern x(8);
        for (auto& v : x)
            v = static_cast<Symbol>(rng.bounded(3));
        const auto y = apply(uniform_permutation(8, rng), x);
        CHECK(occurrence_counts(y, 3) == occurrence_counts(x, 3));
    }
}

TEST_CASE("apply agrees with composition")
{
    RngStream rng(8);
    for (int t = 0; t < 50; ++t) {
        const auto a = uniform_permutation(5, rng), b = uniform_permutation(5, rng);
        const std::vector<int> x{10, 20, 30, 40, 50};
        // apply(ab, x)[i] = x[a(b(i))] = apply(a, x)[b(i)]
        CHECK(apply(compose(a, b), x) == apply(b, apply(a, x)));
    }
}

TEST_CASE("sorting_permutation is a stable sort")
{
    const Pattern sorted{0, 1, 1, 2};
    CHECK(sorting_permutation(sorted).is_identity());
    const Pattern x{1, 0};
    CHECK(sorting_permutation(x).one_based() == std::vector<std::size_t>{2, 1});
    // (b, a, a) with a < b: the two a's keep positions 2, 3 in order
    const std::vector<char> baa{'b', 'a', 'a'};
    const auto g = sorting_permutation(baa);
    CHECK(g.one_based() == std::vector<std::size_t>{2, 3, 1});
    CHECK(apply(g, baa) == std::vector<char>{'a', 'a', 'b'});
    const auto rev = sorting_permutation(x, std::greater<Symbol>{});
    CHECK(rev.is_identity());
}

TEST_CASE("rank and unrank are inverse and lexicographic")
{
    for (std::uint64_t r = 0; r < 24; ++r)
        CHECK(Permutation::unrank(r, 4).rank() == r);
    CHECK(Permutation::identity(4).rank() == 0);
    CHECK(Permutation::from_one_based({4, 3, 2, 1}).rank() == 23);
    CHECK(Permutation::from_one_based({1, 3, 2}).rank() == 1);
    CHECK(factorial(0) == 1);
    CHECK(factorial(20) == 2432902008176640000ULL);
}

TEST_CASE("swallow_decompose identity holds exactly")
{
    RngStream rng(77);
    for (int t = 0; t < 1000; ++t) {
        const auto g = uniform_permutation(1 + t % 9, rng);
        const auto [alpha, beta] = swallow_decompose(g, rng);
        REQUIRE(compose(alpha, beta) == g);
    }
}

TEST_CASE("swallow marginals are uniform for fixed and adversarial gamma")
{
    RngStream rng(2718);
    std::vector<Permutation> alphas, betas;
    for (int t = 0; t < 100000; ++t) {
        const auto [a, b] = swallow_decompose(Permutation::identity(4), rng);
        alphas.push_back(a);
        betas.push_back(b);
    }
    CHECK(permutation_uniformity_test(alphas).dof == 23);
    CHECK(permutation_uniformity_test(alphas).pass);
    CHECK(permutation_uniformity_test(betas).pass);

    // gamma sorts a data sequence, so it is a function of X
    alphas.clear();
    betas.clear();
    for (int t = 0; t < 100000; ++t) {
        Pattern x(4);
        for (auto& v : x)
            v = rng.uniform01() < 0.2 ? 1 : 0;
        const auto g = sorting_permutation(x);
        const auto [a, b] = swallow_decompose(g, rng);
        alphas.push_back(a);
        betas.push_back(b);
    }
    CHECK(permutation_uniformity_test(alphas).pass);
    CHECK(permutation_uniformity_test(betas).pass);
}

TEST_CASE("permutation_uniformity_test guards")
{
    std::vector<Permutation> ids(1000, Permutation::identity(3));
    const auto r = permutation_uniformity_test(ids);
    CHECK_FALSE(r.pass);
    // all mass on one of 6 cells: sum = (1000-1000/6)^2/(1000/6) + 5 * 1000/6 = 5000
    CHECK(r.statistic == doctest::Approx(5000.0));

    std::vector<Permutation> big(5 * 40320 + 1, Permutation::identity(8));
    try {
        permutation_uniformity_test(big);
        FAIL("expected an exception");
    } catch (const InvalidArgument& e) {
        CHECK(std::string(e.what()).find("alphabet of permutations too large") != std::string::npos);
    }
    CHECK_THROWS_AS(permutation_uniformity_test(std::vector<Permutation>(10, Permutation::identity(3))),
                    InvalidArgument);
    CHECK_THROWS_AS(permutation_uniformity_test(std::vector<Permutation>{}), InvalidArgument);
}
