#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "exchlab/graph.hpp"
#include "exchlab/rng.hpp"
#include "exchlab/sequence.hpp"

namespace exchlab {

/// n uniform points in the unit square, edges within Euclidean distance r.
struct GeometricSpec {
    std::size_t n = 1;
    double r = 0.0;
};

/// Erdos-Renyi G(n, p).
struct ErSpec {
    std::size_t n = 1;
    double p = 0.0;
};

using ModelSpec = std::variant<GeometricSpec, ErSpec>;

/// A generated graph together with the sequence X that produced it: the
/// points for geometric models, the edge indicators (pair order
/// (1,2),(1,3),...,(1,n),(2,3),...) for Erdos-Renyi.
struct GraphSample {
    Graph graph;
    std::vector<Point> points;
    std::vector<std::uint8_t> edge_indicators;
};

/// Closed threshold: edge iff distance <= r.
Graph build_geometric_from_points(const std::vector<Point>& points, double r);

GraphSample sample_geometric(const GeometricSpec& spec, RngStream& rng);
GraphSample sample_er(const ErSpec& spec, RngStream& rng);
GraphSample sample_model(const ModelSpec& spec, RngStream& rng);

struct DiameterAtMost {
    std::size_t d = 0;
};
struct Connected {};
struct MinDegreeAtLeast {
    std::size_t d = 0;
};
struct EdgeCountAtLeast {
    std::size_t m = 0;
};
struct CustomCondition {
    std::string name;
    std::function<bool(const GraphSample&)> test;
};

using GraphPredicate = std::variant<DiameterAtMost, Connected, MinDegreeAtLeast, EdgeCountAtLeast, CustomCondition>;

struct ConditionSpec {
    GraphPredicate predicate;
    std::size_t max_tries = 1000;
};

std::string predicate_name(const GraphPredicate& p);
bool holds(const GraphPredicate& p, const GraphSample& s);

struct ConditionalSample {
    GraphSample sample;
    std::size_t tries = 0;
};

/// Rejection sampling: the first unconditional draw satisfying the predicate.
/// Throws ConditionUnsatisfiable after max_tries failures.
ConditionalSample conditional_sample(const ModelSpec& model, const ConditionSpec& cond, RngStream& rng);

void validate(const ModelSpec& spec);

} // namespace exchlab
