#pragma once

#include "dmatch/graph.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace dmatch {

/// Edge set with normalized, sorted edges. Vertex-disjointness is not
/// enforced here so that verification can report it as a failure reason.
class Matching {
public:
    Matching() = default;
    explicit Matching(std::vector<Edge> edges);

    std::span<const Edge> edges() const noexcept { return edges_; }
    int size() const noexcept { return static_cast<int>(edges_.size()); }
    bool empty() const noexcept { return edges_.empty(); }

    /// True when no vertex is covered twice.
    bool is_vertex_disjoint() const;
    /// Saturated vertices V(M), ascending.
    std::vector<Vertex> saturated() const;
    /// Per-vertex saturation flags for a host with n vertices.
    std::vector<char> saturation_mask(int n) const;
    /// Partner table (-1 when exposed) for a host with n vertices.
    std::vector<Vertex> mate_table(int n) const;

    friend bool operator==(const Matching&, const Matching&) = default;
    friend auto operator<=>(const Matching& a, const Matching& b) { return a.edges_ <=> b.edges_; }

private:
    std::vector<Edge> edges_;
};

Matching matching_from_mates(std::span<const Vertex> mate);

/// Components of G[V(m)]; 0 for the empty matching.
int matching_components(const Graph& g, const Matching& m);

/// True when every component of G[V(m)] is a single edge.
bool is_induced_matching(const Graph& g, const Matching& m);

struct Verdict {
    enum class Kind { valid_yes, not_a_matching, too_few_edges, too_few_components };

    Kind kind = Kind::valid_yes;
    int edges = 0;
    int components = 0;
    std::string detail;

    bool ok() const noexcept { return kind == Kind::valid_yes; }
};

std::string to_string(Verdict::Kind kind);

/// Is `m` a matching of g with |m| >= k and at least c components in G[V(m)]?
Verdict verify_matching(const Graph& g, const Matching& m, int k, int c);

/// Result of an optimization over c-disconnected matchings. `value` is
/// absent exactly when no matching reaches the requested component count.
struct DisconnectedOptimum {
    std::optional<int> value;
    std::optional<Matching> witness;

    bool feasible() const noexcept { return value.has_value(); }
};

struct MatchingResult {
    Matching matching;
    int cardinality = 0;
};

} // namespace dmatch
