#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace dmatch {

using Vertex = int;

/// Undirected edge, normalized so that u < v.
struct Edge {
    Vertex u = 0;
    Vertex v = 0;

    auto operator<=>(const Edge&) const = default;
};

inline Edge make_edge(Vertex a, Vertex b) { return a < b ? Edge{a, b} : Edge{b, a}; }

/// Simple undirected graph on vertices 0..n-1 with sorted adjacency lists.
/// Immutable after construction.
class Graph {
public:
    Graph() = default;
    explicit Graph(int n);
    /// Throws InputError on self-loops, duplicate edges or out-of-range ids.
    Graph(int n, std::span<const Edge> edges);

    int vertex_count() const noexcept { return static_cast<int>(adj_.size()); }
    int edge_count() const noexcept { return edge_count_; }

    std::span<const Vertex> neighbors(Vertex v) const { return adj_[static_cast<std::size_t>(v)]; }
    int degree(Vertex v) const { return static_cast<int>(adj_[static_cast<std::size_t>(v)].size()); }
    bool adjacent(Vertex u, Vertex v) const;
    bool contains(Vertex v) const noexcept { return v >= 0 && v < vertex_count(); }

    /// All edges, sorted lexicographically.
    std::vector<Edge> edges() const;

    friend bool operator==(const Graph&, const Graph&) = default;

private:
    std::vector<std::vector<Vertex>> adj_;
    int edge_count_ = 0;
};

/// Graph induced on a vertex subset together with its index map.
struct InducedSubgraph {
    Graph graph;
    /// to_host[i] is the host vertex that became vertex i (ascending order).
    std::vector<Vertex> to_host;
};

/// Subgraph induced by `vs` (duplicates ignored). Throws InputError on ids outside g.
InducedSubgraph induced_subgraph(const Graph& g, std::span<const Vertex> vs);

struct ComponentLabeling {
    std::vector<int> label;
    int count = 0;
};

ComponentLabeling connected_components(const Graph& g);

/// Number of connected components of G[vs] where `in_set[v]` marks the subset.
int count_components_within(const Graph& g, const std::vector<char>& in_set);

/// Eccentricity maximum over all pairs; nullopt when g is disconnected.
std::optional<int> diameter(const Graph& g);

/// Two-coloring (0/1 per vertex) if one exists.
std::optional<std::vector<int>> is_bipartite(const Graph& g);

/// Perfect elimination order (maximum-cardinality search, then verified)
/// if g is chordal.
std::optional<std::vector<Vertex>> is_chordal(const Graph& g);

/// Checks that `order` is a perfect elimination order of g.
bool is_perfect_elimination_order(const Graph& g, std::span<const Vertex> order);

// Small fixed graphs used throughout tests and examples.
Graph path_graph(int n);
Graph cycle_graph(int n);
Graph complete_graph(int n);
Graph petersen_graph();

} // namespace dmatch
