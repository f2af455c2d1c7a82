#pragma once

#include "dmatch/graph.hpp"
#include "dmatch/matching.hpp"

#include <string>
#include <vector>

namespace dmatch {

/// Maximum-cardinality matching (Edmonds' blossom algorithm). The result is
/// re-checked for augmenting paths before returning.
MatchingResult maximum_matching(const Graph& g);

/// True if some exposed vertex starts an m-augmenting path in g.
bool has_augmenting_path(const Graph& g, const Matching& m);

/// Snapshot taken after each expand / tryToConnect call of the connected
/// matching transform. C and W are listed in insertion order, the queues
/// front to back.
struct ConnectTraceRow {
    std::string function; ///< "expand" or "tryToConnect"
    Vertex vertex = -1;
    std::vector<Vertex> component; ///< C
    std::vector<Vertex> frontier;  ///< W
    std::vector<Vertex> saturated_queue;
    std::vector<Vertex> exposed_queue;
    Matching matching;
};

/// Rewires a maximum matching of a connected graph into a matching of the
/// same size whose saturated vertices induce a connected subgraph.
///
/// Starts from the lowest-index saturated vertex and grows the component C
/// by breadth-first expansion over saturated vertices; whenever an exposed
/// neighbor v of C is reached, the edge wu of a saturated vertex w outside C
/// next to v is exchanged for vw. Linear in |V| + |E|.
///
/// Throws InputError when g is disconnected, edgeless, or m is not a
/// matching of g, and PreconditionError when m turns out not to be maximum.
Matching connect_matching(const Graph& g, const Matching& m, std::vector<ConnectTraceRow>* trace = nullptr);

/// Exact maximum c-disconnected matching by exhaustive search over matchings
/// in edge order, pruned by current + remaining candidate edges. The witness
/// is the lexicographically smallest optimal edge list. Exponential; meant
/// for n <= 16.
DisconnectedOptimum brute_force_disconnected(const Graph& g, int c);

/// Exact maximum induced matching by exhaustive search (n <= 16).
MatchingResult brute_force_induced(const Graph& g);

} // namespace dmatch
