#include <doctest.h>

#include <sstream>
#include <vector>

#include "exchlab/error.hpp"
#include "exchlab/graph.hpp"
#include "exchlab/permutation.hpp"

using namespace exchlab;

namespace {

Graph two_triangles()
{
    return Graph(5, {{0, 1}, {1, 2}, {0, 2}, {2, 3}, {3, 4}, {2, 4}});
}

Graph random_graph(std::size_t n, double p, RngStream& rng)
{
    std::vector<Edge> e;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (rng.uniform01() < p)
                e.emplace_back(i, j);
    return Graph(n, e);
}

} // namespace

TEST_CASE("construction")
{
    CHECK_THROWS_AS(Graph(3, {{0, 0}}), InvalidArgument);
    CHECK_THROWS_AS(Graph(3, {{0, 1}, {1, 0}}), InvalidArgument);
    CHECK_THROWS_AS(Graph(3, {{0, 3}}), InvalidArgument);
    const Graph g(3, {{2, 0}});
    CHECK(g.edges() == std::vector<Edge>{{0, 2}});
    CHECK(g.has_edge(2, 0));
    CHECK(Graph::complete(5).edge_count() == 10);
    CHECK(Graph::cycle(5).edge_count() == 5);
    CHECK(Graph::path(4).edge_count() == 3);
}

TEST_CASE("metrics of small graphs")
{
    const auto k4 = graph_metrics(Graph::complete(4));
    CHECK(k4.min_degree == 3);
    CHECK(k4.avg_degree == 3.0);
    CHECK(k4.connected);
    CHECK(k4.diameter == std::optional<std::size_t>(1));
    CHECK(k4.kappa == 3);
    CHECK(k4.lambda == 3);

    const auto p3 = graph_metrics(Graph::path(3));
    CHECK(p3.diameter == std::optional<std::size_t>(2));
    CHECK(p3.min_degree == 1);
    CHECK(p3.lambda == 1);

    const auto iso = graph_metrics(Graph(2));
    CHECK_FALSE(iso.connected);
    CHECK_FALSE(iso.diameter.has_value());
    CHECK(iso.kappa == 0);

    const auto one = graph_metrics(Graph(1));
    CHECK(one.connected);
    CHECK(one.kappa == 0);
    CHECK(one.lambda == 0);
    CHECK_THROWS_AS(graph_metrics(Graph(0)), InvalidArgument);
}

TEST_CASE("connectivity of named graphs")
{
    CHECK(vertex_connectivity(Graph::complete(4)) == 3);
    CHECK(vertex_connectivity(Graph::cycle(5)) == 2);
    CHECK(vertex_connectivity(two_triangles()) == 1);
    CHECK(edge_connectivity(Graph::complete(4)) == 3);
    CHECK(edge_connectivity(Graph::path(3)) == 1);
    CHECK(edge_connectivity(two_triangles()) == 2);
    const auto bf = brute_force_connectivity(two_triangles());
    CHECK(bf.kappa == 1);
    CHECK(bf.lambda == 2);
    const auto c5 = brute_force_connectivity(Graph::cycle(5));
    CHECK(c5.kappa == 2);
    CHECK(c5.lambda == 2);
    const auto k4 = brute_force_connectivity(Graph::complete(4));
    CHECK(k4.kappa == 3);
    CHECK(k4.lambda == 3);
    CHECK_THROWS_AS(brute_force_connectivity(Graph(8)), InvalidArgument);
}

TEST_CASE("flow connectivity matches brute force on random small graphs")
{
    RngStream rng(2024);
    for (int t = 0; t < 300; ++t) {
        const std::size_t n = 2 + rng.bounded(6);
        const auto g = random_graph(n, 0.2 + 0.7 * rng.uniform01(), rng);
        const auto bf = brute_force_connectivity(g);
        REQUIRE(vertex_connectivity(g) == bf.kappa);
        REQUIRE(edge_connectivity(g) == bf.lambda);
    }
}

TEST_CASE("connectivity is label invariant and respects Whitney on larger graphs")
{
    RngStream rng(99);
    for (int t = 0; t < 100; ++t) {
        const std::size_t n = 8 + rng.bounded(30);
        const auto g = random_graph(n, rng.uniform01(), rng);
        const auto m = graph_metrics(g);
        REQUIRE(m.kappa <= m.lambda);
        REQUIRE(m.lambda <= m.min_degree);
        const auto sigma = uniform_permutation(n, rng);
        const std::vector<std::size_t> perm(sigma.mapping().begin(), sigma.mapping().end());
        const auto h = graph_metrics(g.relabeled(perm));
        REQUIRE(h.kappa == m.kappa);
        REQUIRE(h.lambda == m.lambda);
    }
    CHECK(vertex_connectivity(Graph::complete(30)) == 29);
    CHECK(edge_connectivity(Graph::cycle(40)) == 2);
}

TEST_CASE("graph text round trip")
{
    std::ostringstream os;
    write_graph(os, two_triangles());
    CHECK(os.str() == "5\n1 2\n1 3\n2 3\n3 4\n3 5\n4 5\n");
    std::istringstream is(os.str());
    CHECK(read_graph(is) == two_triangles());
    std::istringstream bad("3\n1 4\n");
    CHECK_THROWS_AS(read_graph(bad), InvalidArgument);
}
