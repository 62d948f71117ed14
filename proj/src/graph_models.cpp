#include "exchlab/graph_models.hpp"

#include <cmath>

#include "exchlab/error.hpp"

namespace exchlab {

void validate(const ModelSpec& spec)
{
    std::visit(
        [](const auto& s) {
            using S = std::decay_t<decltype(s)>;
            if (s.n < 1)
                throw InvalidArgument("graph model: need at least one vertex");
            if constexpr (std::is_same_v<S, GeometricSpec>) {
                if (!(s.r >= 0.0))
                    throw InvalidArgument("geometric model: radius must be non-negative");
            } else {
                if (!(s.p >= 0.0 && s.p <= 1.0))
                    throw InvalidArgument("Erdos-Renyi model: p must lie in [0,1]");
            }
        },
        spec);
}

Graph build_geometric_from_points(const std::vector<Point>& points, double r)
{
    if (!(r >= 0.0))
        throw InvalidArgument("build_geometric_from_points: negative radius");
    const double r2 = r * r;
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t j = i + 1; j < points.size(); ++j) {
            const double dx = points[i].x - points[j].x;
            const double dy = points[i].y - points[j].y;
            if (dx * dx + dy * dy <= r2)
                edges.emplace_back(i, j);
        }
    return Graph(points.size(), std::move(edges));
}

GraphSample sample_geometric(const GeometricSpec& spec, RngStream& rng)
{
    validate(ModelSpec{spec});
    GraphSample s;
    s.points.resize(spec.n);
    for (auto& p : s.points) {
        p.x = rng.uniform01();
        p.y = rng.uniform01();
    }
    s.graph = build_geometric_from_points(s.points, spec.r);
    return s;
}

GraphSample sample_er(const ErSpec& spec, RngStream& rng)
{
    validate(ModelSpec{spec});
    GraphSample s;
    std::vector<Edge> edges;
    s.edge_indicators.reserve(spec.n * (spec.n - 1) / 2);
    for (std::size_t i = 0; i < spec.n; ++i)
        for (std::size_t j = i + 1; j < spec.n; ++j) {
            const bool on = rng.uniform01() < spec.p;
            s.edge_indicators.push_back(on ? 1 : 0);
            if (on)
                edges.emplace_back(i, j);
        }
    s.graph = Graph(spec.n, std::move(edges));
    return s;
}

GraphSample sample_model(const ModelSpec& spec, RngStream& rng)
{
    return std::visit(
        [&](const auto& s) {
            using S = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<S, GeometricSpec>)
                return sample_geometric(s, rng);
            else
                return sample_er(s, rng);
        },
        spec);
}

std::string predicate_name(const GraphPredicate& p)
{
    return std::visit(
        [](const auto& c) -> std::string {
            using C = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<C, DiameterAtMost>)
                return "diameter_at_most(" + std::to_string(c.d) + ")";
            else if constexpr (std::is_same_v<C, Connected>)
                return "connected";
            else if constexpr (std::is_same_v<C, MinDegreeAtLeast>)
                return "min_degree_at_least(" + std::to_string(c.d) + ")";
            else if constexpr (std::is_same_v<C, EdgeCountAtLeast>)
                return "edge_count_at_least(" + std::to_string(c.m) + ")";
            else
                return "custom(" + c.name + ")";
        },
        p);
}

bool holds(const GraphPredicate& p, const GraphSample& s)
{
    return std::visit(
        [&](const auto& c) -> bool {
            using C = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<C, DiameterAtMost>) {
                const auto d = diameter(s.graph);
                return d && *d <= c.d;
            } else if constexpr (std::is_same_v<C, Connected>) {
                return is_connected(s.graph);
            } else if constexpr (std::is_same_v<C, MinDegreeAtLeast>) {
                return min_degree(s.graph) >= c.d;
            } else if constexpr (std::is_same_v<C, EdgeCountAtLeast>) {
                return s.graph.edge_count() >= c.m;
            } else {
                if (!c.test)
                    throw InvalidArgument("custom condition '" + c.name + "' has no test");
                return c.test(s);
            }
        },
        p);
}

ConditionalSample conditional_sample(const ModelSpec& model, const ConditionSpec& cond, RngStream& rng)
{
    if (cond.max_tries < 1)
        throw InvalidArgument("conditional_sample: max_tries must be at least 1");
    for (std::size_t t = 1; t <= cond.max_tries; ++t) {
        GraphSample s = sample_model(model, rng);
        if (holds(cond.predicate, s))
            return {std::move(s), t};
    }
    throw ConditionUnsatisfiable("conditional_sample: predicate " + predicate_name(cond.predicate) +
                                 " not met in " + std::to_string(cond.max_tries) +
                                 " tries; its probability is zero or too small for the budget");
}

} // namespace exchlab
