#pragma once

#include "dmatch/graph.hpp"
#include "dmatch/matching.hpp"

#include <cstddef>
#include <vector>

namespace dmatch {

/// Minimal vertex separators of a graph; each member sorted ascending, the
/// family sorted lexicographically and duplicate-free.
struct SeparatorFamily {
    std::vector<std::vector<Vertex>> separators;
    int host_vertices = 0;

    std::size_t size() const noexcept { return separators.size(); }
};

inline constexpr std::size_t kDefaultSeparatorBudget = 100000;

/// True when G - s has at least two components whose neighborhood is all of s.
bool is_minimal_separator(const Graph& g, const std::vector<Vertex>& s);

/// All minimal separators, generated by closing the seeds N(C), C a component
/// of G - N[v], under S -> N(C) for components C of G - (S u N(x)), x in S.
/// Throws ResourceError once the family grows past `budget`.
SeparatorFamily enumerate_minimal_separators(const Graph& g, std::size_t budget = kDefaultSeparatorBudget);

/// Maximum c-disconnected matching: tries every family of at most c-1
/// minimal separators, takes a maximum matching of the graph with their
/// union removed and keeps the best one with at least c components.
DisconnectedOptimum xp_solve(const Graph& g, int c, const SeparatorFamily& seps);

} // namespace dmatch
