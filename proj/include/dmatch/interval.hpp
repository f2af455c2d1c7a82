#pragma once

#include "dmatch/graph.hpp"
#include "dmatch/matching.hpp"

#include <utility>
#include <vector>

namespace dmatch {

/// Closed integer intervals, one per vertex.
struct IntervalModel {
    std::vector<std::pair<int, int>> intervals;

    int vertex_count() const noexcept { return static_cast<int>(intervals.size()); }
};

/// Intersection graph of the model. Throws InputError if some left > right.
Graph interval_graph(const IntervalModel& model);

/// Throws InputError unless `model` is an interval model of exactly g.
void check_interval_model(const Graph& g, const IntervalModel& model);

/// Maximal cliques Q_0..Q_{p-1} in consecutive order and the separators
/// between neighbours; separators[i] = Q_i n Q_{i-1} for 0 < i < p, and the
/// two sentinels separators[0] and separators[p] are empty.
struct CliquePath {
    std::vector<std::vector<Vertex>> cliques;
    std::vector<std::vector<Vertex>> separators;

    int size() const noexcept { return static_cast<int>(cliques.size()); }
};

/// Sweeps the right endpoints, keeping the set-maximal sets of open
/// intervals in sweep order. The result is re-verified before returning.
CliquePath clique_path(const IntervalModel& model);

/// Throws InputError unless `path` is a consecutive ordering of the maximal
/// cliques of g covering every vertex and edge.
void validate_clique_path(const Graph& g, const CliquePath& path);

/// Range table of the interval dynamic program: value(i, j, c) is the size
/// of a largest c-disconnected matching among vertices whose clique run lies
/// inside [i, j], or nullopt when none exists.
class IntervalTable {
public:
    IntervalTable(const Graph& g, const CliquePath& path, int c);

    int cliques() const noexcept { return p_; }
    int max_components() const noexcept { return c_; }
    std::optional<int> value(int i, int j, int c) const;
    /// Matching realizing value(i, j, c); requires a feasible entry.
    Matching witness(int i, int j, int c) const;

private:
    struct Entry {
        int value = kNone;
        int split = -1;     ///< last clique of the left part, -1 for a base case
        int left_c = 0;
    };
    static constexpr int kNone = -1;

    std::size_t at(int i, int j, int c) const {
        return (static_cast<std::size_t>(i) * static_cast<std::size_t>(p_) + static_cast<std::size_t>(j)) *
                   static_cast<std::size_t>(c_ + 1) +
               static_cast<std::size_t>(c);
    }

    int p_ = 0;
    int c_ = 0;
    std::vector<Entry> table_;
    std::vector<Matching> range_matching_; ///< maximum matching per (i, j)
};

/// Maximum c-disconnected matching of an interval graph given its clique path.
DisconnectedOptimum interval_solve(const Graph& g, const CliquePath& path, int c);

} // namespace dmatch
