#include "exchlab/graph.hpp"

#include <algorithm>
#include <deque>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "exchlab/error.hpp"

namespace exchlab {

Graph::Graph(std::size_t n) : n_(n), adj_(n) {}

Graph::Graph(std::size_t n, std::vector<Edge> edges) : n_(n), adj_(n)
{
    for (auto& [a, b] : edges) {
        if (a == b)
            throw InvalidArgument("graph: self-loop at vertex " + std::to_string(a + 1));
        if (a >= n || b >= n)
            throw InvalidArgument("graph: edge endpoint outside 1.." + std::to_string(n));
        if (a > b)
            std::swap(a, b);
    }
    std::sort(edges.begin(), edges.end());
    if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
        throw InvalidArgument("graph: duplicate edge");
    edges_ = std::move(edges);
    for (const auto& [a, b] : edges_) {
        adj_[a].push_back(b);
        adj_[b].push_back(a);
    }
    for (auto& nb : adj_)
        std::sort(nb.begin(), nb.end());
}

Graph Graph::complete(std::size_t n)
{
    std::vector<Edge> e;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            e.emplace_back(i, j);
    return Graph(n, std::move(e));
}

Graph Graph::cycle(std::size_t n)
{
    if (n < 3)
        throw InvalidArgument("graph: cycle needs at least 3 vertices");
    std::vector<Edge> e;
    for (std::size_t i = 0; i < n; ++i)
        e.emplace_back(i, (i + 1) % n);
    return Graph(n, std::move(e));
}

Graph Graph::path(std::size_t n)
{
    std::vector<Edge> e;
    for (std::size_t i = 0; i + 1 < n; ++i)
        e.emplace_back(i, i + 1);
    return Graph(n, std::move(e));
}

bool Graph::has_edge(std::size_t a, std::size_t b) const
{
    const auto& nb = adj_.at(a);
    return std::binary_search(nb.begin(), nb.end(), b);
}

Graph Graph::relabeled(const std::vector<std::size_t>& perm) const
{
    if (perm.size() != n_)
        throw InvalidArgument("graph: relabeling has wrong size");
    std::vector<Edge> e;
    e.reserve(edges_.size());
    for (const auto& [a, b] : edges_)
        e.emplace_back(perm[a], perm[b]);
    return Graph(n_, std::move(e));
}

std::size_t min_degree(const Graph& g)
{
    std::size_t d = g.vertex_count() ? g.degree(0) : 0;
    for (std::size_t v = 1; v < g.vertex_count(); ++v)
        d = std::min(d, g.degree(v));
    return d;
}

namespace {

/// BFS distances from `src`; unreachable vertices get npos.
std::vector<std::size_t> bfs(const Graph& g, std::size_t src)
{
    std::vector<std::size_t> dist(g.vertex_count(), std::string::npos);
    std::deque<std::size_t> queue{src};
    dist[src] = 0;
    while (!queue.empty()) {
        const std::size_t u = queue.front();
        queue.pop_front();
        for (std::size_t w : g.neighbors(u))
            if (dist[w] == std::string::npos) {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
    }
    return dist;
}

} // namespace

bool is_connected(const Graph& g)
{
    if (g.vertex_count() == 0)
        return true;
    const auto dist = bfs(g, 0);
    return std::none_of(dist.begin(), dist.end(), [](std::size_t d) { return d == std::string::npos; });
}

std::optional<std::size_t> diameter(const Graph& g)
{
    std::size_t best = 0;
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
        for (std::size_t d : bfs(g, v)) {
            if (d == std::string::npos)
                return std::nullopt;
            best = std::max(best, d);
        }
    }
    return best;
}

GraphMetrics graph_metrics(const Graph& g)
{
    if (g.vertex_count() == 0)
        throw InvalidArgument("graph_metrics: empty graph");
    GraphMetrics m;
    m.min_degree = min_degree(g);
    m.avg_degree = 2.0 * static_cast<double>(g.edge_count()) / static_cast<double>(g.vertex_count());
    m.diameter = diameter(g);
    m.connected = m.diameter.has_value();
    if (g.vertex_count() >= 2) {
        m.kappa = vertex_connectivity(g);
        m.lambda = edge_connectivity(g);
    }
    return m;
}

void write_graph(std::ostream& os, const Graph& g)
{
    os << g.vertex_count() << '\n';
    for (const auto& [a, b] : g.edges())
        os << a + 1 << ' ' << b + 1 << '\n';
}

Graph read_graph(std::istream& is)
{
    std::string line;
    std::optional<std::size_t> n;
    std::vector<Edge> edges;
    std::size_t line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#')
            continue;
        std::istringstream ls(line);
        const auto where = " (line " + std::to_string(line_no) + ")";
        if (!n) {
            std::size_t v;
            if (!(ls >> v))
                throw InvalidArgument("read_graph: expected vertex count" + where);
            n = v;
            continue;
        }
        std::size_t a, b;
        if (!(ls >> a >> b) || a == 0 || b == 0)
            throw InvalidArgument("read_graph: expected 1-based edge 'i j'" + where);
        if (a >= b)
            throw InvalidArgument("read_graph: edges must be written with i < j" + where);
        edges.emplace_back(a - 1, b - 1);
    }
    if (!n)
        throw InvalidArgument("read_graph: missing vertex count");
    return Graph(*n, std::move(edges));
}

} // namespace exchlab
