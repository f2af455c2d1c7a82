#pragma once

#include "dmatch/graph.hpp"
#include "dmatch/matching.hpp"

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace dmatch {

/// Bags over an unrooted tree given by its edge list. Bags are kept sorted.
struct TreeDecomposition {
    std::vector<std::vector<Vertex>> bags;
    std::vector<std::pair<int, int>> tree_edges;

    int width() const;
};

struct DecompositionVerdict {
    enum class Kind { valid, not_a_tree, bad_bag, vertex_coverage, edge_coverage, connectivity };

    Kind kind = Kind::valid;
    std::string detail;

    bool ok() const noexcept { return kind == Kind::valid; }
};

std::string to_string(DecompositionVerdict::Kind kind);

/// Checks tree shape, vertex coverage, edge coverage and that each vertex's
/// bags form a connected subtree; reports the first violation found.
DecompositionVerdict validate_decomposition(const Graph& g, const TreeDecomposition& td);

/// Tree decomposition from a greedy minimum-degree elimination ordering.
TreeDecomposition min_degree_decomposition(const Graph& g);

enum class NiceKind { leaf, introduce, forget, join };

struct NiceNode {
    NiceKind kind = NiceKind::leaf;
    Vertex vertex = -1; ///< introduced / forgotten vertex
    std::vector<Vertex> bag;
    int left = -1;  ///< only child, or first child of a join
    int right = -1; ///< second child of a join
};

/// Rooted nice decomposition. Children always have smaller ids than their
/// parent and the root is the last node, with an empty bag.
struct NiceTreeDecomposition {
    std::vector<NiceNode> nodes;

    int root() const noexcept { return static_cast<int>(nodes.size()) - 1; }
    int width() const;
};

/// Converts a valid decomposition into a nice one of the same width.
/// Throws InputError if `td` is not a tree or breaks the running
/// intersection property.
NiceTreeDecomposition nicify(const TreeDecomposition& td);

/// Structural node-kind checks plus the decomposition axioms against g.
DecompositionVerdict validate_nice(const Graph& g, const NiceTreeDecomposition& ntd);

TreeDecomposition to_tree_decomposition(const NiceTreeDecomposition& ntd);

/// Set partition of a sorted ground set, stored as a restricted-growth
/// string: labels[i] is the block of ground[i], and labels appear in
/// first-occurrence order 0, 1, 2, ... so each partition has one encoding.
class BlockPartition {
public:
    BlockPartition() = default;
    /// `labels` may be any block ids; they are canonicalized. Ground must be
    /// strictly increasing.
    BlockPartition(std::vector<Vertex> ground, std::span<const int> labels);
    static BlockPartition from_blocks(std::vector<std::vector<Vertex>> blocks);

    std::span<const Vertex> ground() const noexcept { return ground_; }
    std::span<const int> rgs() const noexcept { return labels_; }
    int block_count() const noexcept { return blocks_; }
    /// Blocks in label order, each ascending.
    std::vector<std::vector<Vertex>> blocks() const;
    /// Label of v, or -1 if v is not in the ground set.
    int block_of(Vertex v) const;

    friend bool operator==(const BlockPartition&, const BlockPartition&) = default;
    friend auto operator<=>(const BlockPartition& a, const BlockPartition& b) {
        if (auto cmp = a.ground_ <=> b.ground_; cmp != 0)
            return cmp;
        return a.labels_ <=> b.labels_;
    }

private:
    std::vector<Vertex> ground_;
    std::vector<int> labels_;
    int blocks_ = 0;
};

/// Finest common coarsening of two partitions of the same ground set.
BlockPartition partition_join(const BlockPartition& a, const BlockPartition& b);

/// All partitions obtained from gamma by removing v and splitting its block
/// into pairwise non-adjacent groups that each contain a neighbour of v.
/// Requires v in the ground set of gamma.
std::vector<BlockPartition> sift(const BlockPartition& gamma, Vertex v, const Graph& g);

/// One dynamic-programming table key in readable form.
struct DPState {
    std::vector<Vertex> inner;   ///< S: matched to another bag vertex, edge not yet counted
    std::vector<Vertex> pending; ///< U: partner not introduced yet
    BlockPartition gamma;        ///< component traces of all saturated bag vertices
    int ell = 0;                 ///< finished components, saturating at c
};

struct TreewidthStats {
    std::size_t max_states = 0;   ///< largest table over all nodes
    std::size_t total_states = 0;
    int width = 0;
};

/// Maximum c-disconnected matching by dynamic programming over a nice tree
/// decomposition. Bags are limited to 16 vertices (ResourceError beyond).
DisconnectedOptimum tw_solve(const Graph& g, const NiceTreeDecomposition& ntd, int c, TreewidthStats* stats = nullptr);

/// Table of one node in readable form, for inspection and tests.
std::vector<std::pair<DPState, int>> tw_node_table(const Graph& g, const NiceTreeDecomposition& ntd, int c, int node);

} // namespace dmatch
