#include <doctest.h>

#include <cmath>
#include <map>
#include <vector>

#include "exchlab/error.hpp"
#include "exchlab/graph_models.hpp"

using namespace exchlab;

TEST_CASE("geometric graph from points")
{
    const std::vector<Point> pts{{0.0, 0.0}, {0.0, 0.1}, {0.9, 0.9}};
    const auto g = build_geometric_from_points(pts, 0.2);
    CHECK(g.edges() == std::vector<Edge>{{0, 1}});
    CHECK(build_geometric_from_points(pts, 0.0).edge_count() == 0);
    CHECK(build_geometric_from_points(pts, std::sqrt(2.0)).edge_count() == 3);
    // closed threshold
    const std::vector<Point> unit{{0.0, 0.0}, {0.5, 0.0}};
    CHECK(build_geometric_from_points(unit, 0.5).edge_count() == 1);
}

TEST_CASE("sample_geometric")
{
    RngStream rng(1);
    const auto one = sample_geometric({1, 0.3}, rng);
    CHECK(one.graph.vertex_count() == 1);
    CHECK(one.points.size() == 1);
    for (int i = 0; i < 50; ++i)
        REQUIRE(sample_geometric({6, 1.5}, rng).graph == Graph::complete(6));

    // Pr(|P1 - P2| <= 1/2) for uniform points, by an independent Monte Carlo
    RngStream oracle_rng(2);
    double oracle = 0.0;
    for (int i = 0; i < 400000; ++i) {
        const double dx = oracle_rng.uniform01() - oracle_rng.uniform01();
        const double dy = oracle_rng.uniform01() - oracle_rng.uniform01();
        oracle += dx * dx + dy * dy <= 0.25;
    }
    oracle /= 400000;
    double hits = 0.0;
    for (int i = 0; i < 100000; ++i)
        hits += sample_geometric({2, 0.5}, rng).graph.edge_count();
    CHECK(std::abs(hits / 100000 - oracle) < 0.01);
    // closed form pi r^2 - 8 r^3 / 3 + r^4 / 2 at r = 1/2
    const double r = 0.5;
    CHECK(std::abs(oracle - (M_PI * r * r - 8 * r * r * r / 3 + r * r * r * r / 2)) < 0.005);
}

TEST_CASE("sample_er")
{
    RngStream rng(3);
    CHECK(sample_er({5, 0.0}, rng).graph.edge_count() == 0);
    CHECK(sample_er({5, 1.0}, rng).graph == Graph::complete(5));
    const auto s = sample_er({4, 0.5}, rng);
    REQUIRE(s.edge_indicators.size() == 6);
    // pair order (1,2),(1,3),(1,4),(2,3),(2,4),(3,4)
    const std::vector<Edge> pairs{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
    for (std::size_t i = 0; i < 6; ++i)
        CHECK(s.graph.has_edge(pairs[i].first, pairs[i].second) == (s.edge_indicators[i] == 1));

    double connected = 0.0;
    for (int i = 0; i < 100000; ++i)
        connected += is_connected(sample_er({3, 0.5}, rng).graph);
    CHECK(std::abs(connected / 100000 - 0.5) < 0.01);
}

TEST_CASE("validation")
{
    CHECK_THROWS_AS(validate(GeometricSpec{3, -0.1}), InvalidArgument);
    CHECK_THROWS_AS(validate(ErSpec{3, 1.5}), InvalidArgument);
    CHECK_THROWS_AS(validate(ErSpec{0, 0.5}), InvalidArgument);
    CHECK_NOTHROW(validate(GeometricSpec{3, 0.0}));
}

TEST_CASE("predicates")
{
    GraphSample s{Graph::path(4), {}, {}};
    CHECK(holds(Connected{}, s));
    CHECK(holds(DiameterAtMost{3}, s));
    CHECK_FALSE(holds(DiameterAtMost{2}, s));
    CHECK(holds(MinDegreeAtLeast{1}, s));
    CHECK_FALSE(holds(MinDegreeAtLeast{2}, s));
    CHECK(holds(EdgeCountAtLeast{3}, s));
    GraphSample split{Graph(3, {{0, 1}}), {}, {}};
    CHECK_FALSE(holds(DiameterAtMost{100}, split));
    CHECK(predicate_name(MinDegreeAtLeast{1}) == "min_degree_at_least(1)");
    CHECK(predicate_name(CustomCondition{"even", {}}) == "custom(even)");
}

TEST_CASE("conditional_sample")
{
    RngStream rng(4);
    const CustomCondition always{"always", [](const GraphSample&) { return true; }};
    CHECK(conditional_sample(ErSpec{5, 0.5}, {always, 10}, rng).tries == 1);

    std::map<std::vector<Edge>, double> freq;
    std::size_t tries = 0;
    for (int i = 0; i < 100000; ++i) {
        const auto c = conditional_sample(ErSpec{3, 0.5}, {Connected{}, 1000}, rng);
        freq[c.sample.graph.edges()] += 1.0 / 100000;
        tries += c.tries;
    }
    REQUIRE(freq.size() == 4);
    for (const auto& [edges, f] : freq)
        CHECK(std::abs(f - 0.25) < 0.01);
    CHECK(std::abs(100000.0 / static_cast<double>(tries) - 0.5) < 0.01);

    try {
        conditional_sample(ErSpec{3, 0.0}, {Connected{}, 100}, rng);
        FAIL("expected ConditionUnsatisfiable");
    } catch (const ConditionUnsatisfiable& e) {
        CHECK(std::string(e.what()).find("connected") != std::string::npos);
    }
}
