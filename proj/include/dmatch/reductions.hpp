#pragma once

#include "dmatch/errors.hpp"
#include "dmatch/graph.hpp"
#include "dmatch/matching.hpp"

#include <array>
#include <string>
#include <vector>

namespace dmatch {

/// Variables are 0-based in memory.
struct Literal {
    int var = 0;
    bool negated = false;

    friend bool operator==(const Literal&, const Literal&) = default;
};

struct OneInThreeInstance {
    int num_vars = 0;
    std::vector<std::array<Literal, 3>> clauses;
};

/// Ground set {0, .., ground-1}; ground must be a multiple of 3.
struct X3CInstance {
    int ground = 0;
    std::vector<std::array<int, 3>> sets;
};

/// Throws InputError unless every clause has three distinct in-range
/// variables and every variable occurs somewhere.
void validate_instance(const OneInThreeInstance& inst);
/// Throws InputError unless every set holds three distinct in-range elements.
void validate_instance(const X3CInstance& inst);

struct ReductionOutput {
    Graph graph;
    int k = 0;
    int c = 0;
    std::vector<std::string> vertex_names;
    /// Cross-composition only: vertex cover / clique modulator D.
    std::vector<Vertex> modulator;
};

/// Raised by certificate decoders; `reason()` names the violated property
/// ("not-a-matching", "too-few-edges", "component-count", "gadget-edges",
/// "gadget-row", "consistency", "cover").
class CertificateError : public PreconditionError {
public:
    CertificateError(std::string reason, const std::string& what)
        : PreconditionError(reason + ": " + what), reason_(std::move(reason)) {}

    const std::string& reason() const noexcept { return reason_; }

private:
    std::string reason_;
};

// ------------------------------------------------------------ one-in-three

/// Vertex numbering of the one-in-three graph. Clause i (0-based) owns
/// l_{i,1..9} then r_{i,1..9}; then come U1..U4 with 3m vertices each,
/// then w1, w2 (diameter-3 variant) and the extra edges for c > 2.
class OneInThreeLayout {
public:
    OneInThreeLayout(int clauses, bool diameter3, int c);

    int clauses() const noexcept { return m_; }
    int vertex_count() const noexcept { return n_; }
    Vertex l(int clause, int j) const { return 18 * clause + j - 1; }
    Vertex r(int clause, int j) const { return 18 * clause + 8 + j; }
    /// block in 1..4, t in 0..3m-1
    Vertex u(int block, int t) const { return 18 * m_ + (block - 1) * 3 * m_ + t; }
    Vertex w1() const noexcept { return diameter3_ ? 30 * m_ : -1; }
    Vertex w2() const noexcept { return diameter3_ ? 30 * m_ + 1 : -1; }
    /// Extra edge i in 0..c-3, end 1 or 2.
    Vertex extra(int i, int end) const { return 30 * m_ + (diameter3_ ? 2 : 0) + 2 * i + end - 1; }
    int extra_count() const noexcept { return extras_; }

private:
    int m_;
    bool diameter3_;
    int extras_;
    int n_;
};

/// Gadget vertex labels l_j (j = 1..9) and r_j of the three sets of
/// saturated gadget vertices, one per choice of true literal. Row j-1 holds
/// the labels of l and r saturated when literal j is true.
std::array<std::vector<int>, 3> gadget_rows();

/// Graph for (G, k = 12m + c - 2, c). Requires c >= 2.
ReductionOutput build_one_in_three(const OneInThreeInstance& inst, bool diameter3 = false, int c = 2);

/// True when exactly one literal of every clause holds.
bool is_one_in_three(const OneInThreeInstance& inst, const std::vector<bool>& assignment);

/// Matching with 12m + c - 2 edges from a one-in-three assignment.
/// Throws PreconditionError if the assignment does not satisfy the instance.
Matching encode_assignment(const OneInThreeInstance& inst, const std::vector<bool>& assignment,
                           bool diameter3 = false, int c = 2);

/// Reads the assignment off the saturated gadget vertices. Throws
/// CertificateError when `m` is not a c-disconnected matching with at least
/// 12m + c - 2 edges or a gadget does not have the expected shape.
std::vector<bool> decode_matching(const OneInThreeInstance& inst, const Matching& m, bool diameter3 = false,
                                  int c = 2);

// ---------------------------------------------------------------------- X3C

/// Set i owns vertices 5i .. 5i+4: its three elements in ascending order,
/// then w+ and w-. Element x is vertex 5m + x; the universal vertex is last.
ReductionOutput build_x3c(const X3CInstance& inst, bool bounded_degree = false, bool universal_vertex = false);

bool is_exact_cover(const X3CInstance& inst, const std::vector<int>& cover);

/// Matching with m + 3q edges and m - q + 1 components from an exact cover
/// (indices into inst.sets). Throws PreconditionError for a non-cover.
Matching encode_cover(const X3CInstance& inst, const std::vector<int>& cover);

/// Sets whose three element vertices are all saturated, ascending. Throws
/// CertificateError when `m` does not meet (k, c) or the sets are no cover.
std::vector<int> decode_cover(const X3CInstance& inst, const Matching& m, bool bounded_degree = false,
                              bool universal_vertex = false);

// --------------------------------------------------------- cross-composition

enum class CompositionParam { vertex_cover, distance_to_clique };

/// Composition of X3C instances over a common ground set into one Induced
/// Matching instance. `sets` lists the union of all instance sets in the
/// order of their gadgets.
struct Composition {
    ReductionOutput output;
    std::vector<std::array<int, 3>> sets;
    int ground = 0;
    int instances = 0;
};

/// Layout: element vertices v_0..v_{n-1}; per union set j the star w_j,
/// w*_j, then its three interface vertices; then q and p_1..p_t. Throws
/// InputError unless all instances share the ground set, have the same
/// number of sets, and are pairwise distinct.
Composition cross_compose(const std::vector<X3CInstance>& instances, CompositionParam param);

/// Induced matching of size k built from an exact cover of instance `which`.
Matching compose_certificate(const std::vector<X3CInstance>& instances, const Composition& comp, int which,
                             const std::vector<int>& cover);

} // namespace dmatch
