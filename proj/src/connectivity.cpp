#include <algorithm>
#include <bit>
#include <cstdint>
#include <deque>
#include <limits>
#include <string>
#include <vector>

#include "exchlab/error.hpp"
#include "exchlab/graph.hpp"

namespace exchlab {

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

/// Fixed-width vertex sets, one row of `words` 64-bit words per vertex.
class BitRows {
public:
    BitRows(std::size_t rows, std::size_t bits) : words_((bits + 63) / 64), data_(rows * words_, 0) {}

    std::size_t words() const noexcept { return words_; }
    std::uint64_t* row(std::size_t r) noexcept { return data_.data() + r * words_; }
    const std::uint64_t* row(std::size_t r) const noexcept { return data_.data() + r * words_; }
    void set(std::size_t r, std::size_t b) noexcept { row(r)[b >> 6] |= std::uint64_t{1} << (b & 63); }
    void reset(std::size_t r, std::size_t b) noexcept { row(r)[b >> 6] &= ~(std::uint64_t{1} << (b & 63)); }
    bool test(std::size_t r, std::size_t b) const noexcept { return (row(r)[b >> 6] >> (b & 63)) & 1U; }
    void clear() noexcept { std::fill(data_.begin(), data_.end(), 0); }

private:
    std::size_t words_;
    std::vector<std::uint64_t> data_;
};

template <class F>
void for_each_bit(std::size_t words, F&& word_at, auto&& visit)
{
    for (std::size_t w = 0; w < words; ++w) {
        std::uint64_t bits = word_at(w);
        while (bits) {
            const auto b = static_cast<std::size_t>(std::countr_zero(bits));
            bits &= bits - 1;
            visit(w * 64 + b);
        }
    }
}

BitRows adjacency_rows(const Graph& g)
{
    BitRows adj(g.vertex_count(), g.vertex_count());
    for (const auto& [a, b] : g.edges()) {
        adj.set(a, b);
        adj.set(b, a);
    }
    return adj;
}

/**
 * Unit-capacity flows for Menger counts.
 *
 * Vertex-disjoint mode works on the split graph (v_in -> v_out, capacity 1
 * for inner vertices); edge-disjoint mode on undirected unit edges. In both,
 * out_[u] holds the w with one unit of flow on u -> w. BFS expands whole
 * neighbourhoods by word masks, so an augmentation costs O(n^2 / 64).
 */
class MengerFlow {
public:
    explicit MengerFlow(const Graph& g)
        : n_(g.vertex_count()), adj_(adjacency_rows(g)), out_(n_, n_), seen_in_(1, n_), seen_out_(1, n_),
          pred_(n_, kNone), used_(n_, false), parent_in_(n_), parent_out_(n_)
    {
    }

    /// Number of internally vertex-disjoint s-t paths, stopping at `cap`.
    std::size_t vertex_disjoint(std::size_t s, std::size_t t, std::size_t cap)
    {
        reset();
        std::size_t flow = 0;
        // s - w - t through common neighbours are disjoint augmenting paths
        for (std::size_t w = 0; w < adj_.words(); ++w) {
            std::uint64_t common = adj_.row(s)[w] & adj_.row(t)[w];
            while (common && flow < cap) {
                const std::size_t v = w * 64 + static_cast<std::size_t>(std::countr_zero(common));
                common &= common - 1;
                out_.set(s, v);
                out_.set(v, t);
                pred_[v] = s;
                used_[v] = true;
                ++flow;
            }
        }
        while (flow < cap && augment_vertex(s, t))
            ++flow;
        return flow;
    }

    /// Number of edge-disjoint s-t paths, stopping at `cap`.
    std::size_t edge_disjoint(std::size_t s, std::size_t t, std::size_t cap)
    {
        reset();
        std::size_t flow = 0;
        if (flow < cap && adj_.test(s, t)) {
            out_.set(s, t);
            ++flow;
        }
        for (std::size_t w = 0; w < adj_.words(); ++w) {
            std::uint64_t common = adj_.row(s)[w] & adj_.row(t)[w];
            while (common && flow < cap) {
                const std::size_t v = w * 64 + static_cast<std::size_t>(std::countr_zero(common));
                common &= common - 1;
                out_.set(s, v);
                out_.set(v, t);
                ++flow;
            }
        }
        while (flow < cap && augment_edge(s, t))
            ++flow;
        return flow;
    }

private:
    // Node encoding for the BFS queue in vertex mode.
    struct Node {
        std::size_t v;
        bool out;
    };

    void reset()
    {
        out_.clear();
        std::fill(pred_.begin(), pred_.end(), kNone);
        std::fill(used_.begin(), used_.end(), false);
    }

    bool augment_vertex(std::size_t s, std::size_t t)
    {
        seen_in_.clear();
        seen_out_.clear();
        std::deque<Node> queue;
        seen_out_.set(0, s);
        seen_in_.set(0, s); // s_in is never part of a path
        queue.push_back({s, true});
        bool found = false;
        while (!queue.empty() && !found) {
            const Node cur = queue.front();
            queue.pop_front();
            if (cur.out) {
                const std::size_t u = cur.v;
                // reverse of the inner arc
                if (u != s && used_[u] && !seen_in_.test(0, u)) {
                    seen_in_.set(0, u);
                    parent_in_[u] = {u, true};
                    queue.push_back({u, false});
                }
                const std::uint64_t* a = adj_.row(u);
                const std::uint64_t* f = out_.row(u);
                std::uint64_t* seen = seen_in_.row(0);
                for_each_bit(
                    adj_.words(), [&](std::size_t w) { return a[w] & ~f[w] & ~seen[w]; },
                    [&](std::size_t w) {
                        if (found)
                            return;
                        seen_in_.set(0, w);
                        parent_in_[w] = {u, true};
                        if (w == t)
                            found = true;
                        else
                            queue.push_back({w, false});
                    });
            } else {
                const std::size_t w = cur.v;
                if (!used_[w]) {
                    if (!seen_out_.test(0, w)) {
                        seen_out_.set(0, w);
                        parent_out_[w] = {w, false};
                        queue.push_back({w, true});
                    }
                } else {
                    const std::size_t u = pred_[w];
                    if (!seen_out_.test(0, u)) {
                        seen_out_.set(0, u);
                        parent_out_[u] = {w, false};
                        queue.push_back({u, true});
                    }
                }
            }
        }
        if (!found)
            return false;
        // walk back from t_in
        Node cur{t, false};
        while (!(cur.out && cur.v == s)) {
            const Node prev = cur.out ? parent_out_[cur.v] : parent_in_[cur.v];
            if (prev.out && !cur.out) {
                if (prev.v == cur.v) {
                    used_[cur.v] = false; // v_out -> v_in cancels the inner arc
                } else {
                    out_.set(prev.v, cur.v); // u_out -> w_in
                    if (cur.v != t)
                        pred_[cur.v] = prev.v;
                }
            } else if (!prev.out && cur.out) {
                if (prev.v == cur.v) {
                    used_[cur.v] = true; // inner arc
                } else {
                    out_.reset(cur.v, prev.v); // w_in -> u_out cancels u -> w
                    if (pred_[prev.v] == cur.v)
                        pred_[prev.v] = kNone;
                }
            }
            cur = prev;
        }
        return true;
    }

    bool augment_edge(std::size_t s, std::size_t t)
    {
        seen_in_.clear();
        std::deque<std::size_t> queue{s};
        seen_in_.set(0, s);
        bool found = false;
        while (!queue.empty() && !found) {
            const std::size_t u = queue.front();
            queue.pop_front();
            const std::uint64_t* a = adj_.row(u);
            const std::uint64_t* f = out_.row(u);
            std::uint64_t* seen = seen_in_.row(0);
            for_each_bit(
                adj_.words(), [&](std::size_t w) { return a[w] & ~f[w] & ~seen[w]; },
                [&](std::size_t w) {
                    if (found)
                        return;
                    seen_in_.set(0, w);
                    parent_in_[w] = {u, false};
                    if (w == t)
                        found = true;
                    else
                        queue.push_back(w);
                });
        }
        if (!found)
            return false;
        for (std::size_t w = t; w != s;) {
            const std::size_t u = parent_in_[w].v;
            if (out_.test(w, u))
                out_.reset(w, u);
            else
                out_.set(u, w);
            w = u;
        }
        return true;
    }

    std::size_t n_;
    BitRows adj_;
    BitRows out_;
    BitRows seen_in_;
    BitRows seen_out_;
    std::vector<std::size_t> pred_;
    std::vector<bool> used_;
    std::vector<Node> parent_in_;
    std::vector<Node> parent_out_;
};

void require_two_vertices(const Graph& g, const char* who)
{
    if (g.vertex_count() < 2)
        throw InvalidArgument(std::string(who) + ": need at least 2 vertices");
}

bool is_complete(const Graph& g)
{
    const std::size_t n = g.vertex_count();
    return g.edge_count() == n * (n - 1) / 2;
}

} // namespace

// Esfahanian-Hakimi: with v of minimum degree, every minimum vertex cut
// either misses v (and separates v from a non-neighbour) or contains v (and
// separates two non-adjacent neighbours of v).
std::size_t vertex_connectivity(const Graph& g)
{
    require_two_vertices(g, "vertex_connectivity");
    const std::size_t n = g.vertex_count();
    if (is_complete(g))
        return n - 1;
    std::size_t v = 0;
    for (std::size_t u = 1; u < n; ++u)
        if (g.degree(u) < g.degree(v))
            v = u;
    std::size_t best = g.degree(v);
    MengerFlow flow(g);
    for (std::size_t w = 0; w < n && best > 0; ++w)
        if (w != v && !g.has_edge(v, w))
            best = std::min(best, flow.vertex_disjoint(v, w, best));
    const auto& nb = g.neighbors(v);
    for (std::size_t i = 0; i < nb.size() && best > 0; ++i)
        for (std::size_t j = i + 1; j < nb.size() && best > 0; ++j)
            if (!g.has_edge(nb[i], nb[j]))
                best = std::min(best, flow.vertex_disjoint(nb[i], nb[j], best));
    return best;
}

std::size_t edge_connectivity(const Graph& g)
{
    require_two_vertices(g, "edge_connectivity");
    std::size_t best = min_degree(g);
    MengerFlow flow(g);
    for (std::size_t t = 1; t < g.vertex_count() && best > 0; ++t)
        best = std::min(best, flow.edge_disjoint(0, t, best));
    return best;
}

namespace {

bool connected_without(const Graph& g, const std::vector<bool>& removed_vertex,
                       const std::vector<bool>& removed_edge)
{
    const std::size_t n = g.vertex_count();
    std::vector<std::vector<std::size_t>> adj(n);
    for (std::size_t e = 0; e < g.edges().size(); ++e) {
        const auto [a, b] = g.edges()[e];
        if (removed_edge[e] || removed_vertex[a] || removed_vertex[b])
            continue;
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    std::size_t start = kNone, alive = 0;
    for (std::size_t v = 0; v < n; ++v)
        if (!removed_vertex[v]) {
            ++alive;
            if (start == kNone)
                start = v;
        }
    if (alive <= 1)
        return true;
    std::vector<bool> seen(n, false);
    std::vector<std::size_t> stack{start};
    seen[start] = true;
    std::size_t reached = 1;
    while (!stack.empty()) {
        const std::size_t u = stack.back();
        stack.pop_back();
        for (std::size_t w : adj[u])
            if (!seen[w]) {
                seen[w] = true;
                ++reached;
                stack.push_back(w);
            }
    }
    return reached == alive;
}

/// Calls visit(mask) for every k-subset of {0..n-1}; stops when visit returns true.
bool any_subset(std::size_t n, std::size_t k, const auto& visit)
{
    std::vector<bool> mask(n, false);
    std::fill(mask.begin(), mask.begin() + static_cast<std::ptrdiff_t>(k), true);
    do {
        if (visit(mask))
            return true;
    } while (std::prev_permutation(mask.begin(), mask.end()));
    return false;
}

} // namespace

BruteForceConnectivity brute_force_connectivity(const Graph& g)
{
    require_two_vertices(g, "brute_force_connectivity");
    const std::size_t n = g.vertex_count();
    if (n > kBruteForceMaxVertices)
        throw InvalidArgument("brute_force_connectivity: n = " + std::to_string(n) + " exceeds limit of " +
                              std::to_string(kBruteForceMaxVertices));
    BruteForceConnectivity r;
    const std::vector<bool> no_edges(g.edge_count(), false);
    const std::vector<bool> no_vertices(n, false);
    if (is_complete(g)) {
        r.kappa = n - 1;
    } else {
        for (std::size_t k = 0; k + 2 <= n; ++k) {
            if (any_subset(n, k, [&](const std::vector<bool>& rm) { return !connected_without(g, rm, no_edges); })) {
                r.kappa = k;
                break;
            }
        }
    }
    for (std::size_t k = 0; k <= g.edge_count(); ++k) {
        if (any_subset(g.edge_count(), k,
                       [&](const std::vector<bool>& rm) { return !connected_without(g, no_vertices, rm); })) {
            r.lambda = k;
            break;
        }
    }
    return r;
}

} // namespace exchlab
