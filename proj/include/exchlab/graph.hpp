#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <utility>
#include <vector>

namespace exchlab {

using Edge = std::pair<std::size_t, std::size_t>;

/// Simple undirected graph on vertices 0..n-1. Edges are kept sorted as
/// (i, j) with i < j; adjacency is stored alongside.
class Graph {
public:
    explicit Graph(std::size_t n = 0);
    /// Throws InvalidArgument on self-loops, duplicates or out-of-range ends.
    Graph(std::size_t n, std::vector<Edge> edges);

    static Graph complete(std::size_t n);
    static Graph cycle(std::size_t n);
    static Graph path(std::size_t n);

    std::size_t vertex_count() const noexcept { return n_; }
    std::size_t edge_count() const noexcept { return edges_.size(); }
    const std::vector<Edge>& edges() const noexcept { return edges_; }
    const std::vector<std::size_t>& neighbors(std::size_t v) const { return adj_.at(v); }
    std::size_t degree(std::size_t v) const { return adj_.at(v).size(); }
    bool has_edge(std::size_t a, std::size_t b) const;

    /// Relabels vertex v as perm[v].
    Graph relabeled(const std::vector<std::size_t>& perm) const;

    friend bool operator==(const Graph& a, const Graph& b) { return a.n_ == b.n_ && a.edges_ == b.edges_; }

private:
    std::size_t n_;
    std::vector<Edge> edges_;
    std::vector<std::vector<std::size_t>> adj_;
};

struct GraphMetrics {
    std::size_t min_degree = 0;
    double avg_degree = 0.0;
    bool connected = true;
    /// nullopt encodes an infinite diameter (disconnected graph).
    std::optional<std::size_t> diameter;
    std::size_t kappa = 0;
    std::size_t lambda = 0;
};

std::size_t min_degree(const Graph& g);
bool is_connected(const Graph& g);
/// Maximum BFS eccentricity; nullopt when disconnected.
std::optional<std::size_t> diameter(const Graph& g);

/// Vertex connectivity by unit-capacity vertex-split max flow (Menger).
/// Complete graphs give n-1. Requires n >= 2.
std::size_t vertex_connectivity(const Graph& g);
/// Edge connectivity: min over t of edge-disjoint paths from vertex 0 to t.
/// Requires n >= 2.
std::size_t edge_connectivity(const Graph& g);

struct BruteForceConnectivity {
    std::size_t kappa = 0;
    std::size_t lambda = 0;
};

inline constexpr std::size_t kBruteForceMaxVertices = 7;

/// Exhaustive smallest disconnecting vertex / edge sets. 2 <= n <= 7.
BruteForceConnectivity brute_force_connectivity(const Graph& g);

/// Degrees, connectivity, diameter, kappa, lambda. For n = 1, kappa = lambda = 0.
GraphMetrics graph_metrics(const Graph& g);

/// "n" then one "i j" line per edge, 1-based, i < j.
void write_graph(std::ostream& os, const Graph& g);
Graph read_graph(std::istream& is);

} // namespace exchlab
