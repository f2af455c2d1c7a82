#include "dmatch/reductions.hpp"

#include "dmatch/engines.hpp"
#include "dmatch/separators.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace dmatch {
namespace {

std::size_t idx(int v) { return static_cast<std::size_t>(v); }

std::string label(const std::string& stem, int a) { return stem + "[" + std::to_string(a) + "]"; }
std::string label(const std::string& stem, int a, int b) {
    return stem + "[" + std::to_string(a) + "," + std::to_string(b) + "]";
}

std::array<int, 3> sorted_triple(std::array<int, 3> t) {
    std::sort(t.begin(), t.end());
    return t;
}

// Gadget edges as label pairs: l_j is j, r_j is 9 + j.
std::vector<std::pair<int, int>> gadget_edges() {
    std::vector<std::pair<int, int>> e;
    for (int side : {0, 9}) {
        for (int j : {1, 2, 3})
            e.push_back({side + 7, side + j});
        for (int j : {4, 5})
            e.push_back({side + 8, side + j});
        for (int j : {5, 6})
            e.push_back({side + 9, side + j});
    }
    for (int j = 1; j <= 3; ++j) {
        e.push_back({j, 9 + j + 3});
        e.push_back({9 + j, j + 3});
        for (int q = 1; q <= 3; ++q)
            if (q != j)
                e.push_back({j, 9 + q});
    }
    return e;
}

// Partners of l7, l8, l9 (and mirrored on r) when literal j is true.
std::array<int, 3> row_partners(int j) {
    switch (j) {
    case 1: return {1, 5, 6};
    case 2: return {2, 4, 6};
    default: return {3, 4, 5};
    }
}

// In the one-clause graph, the size-6 minimal separators between H1 and H2
// inside the gadget that leave a perfectly matchable rest must be exactly
// the complements of the gadget rows.
bool gadget_separators_match_rows() {
    std::vector<Edge> edges;
    for (auto [a, b] : gadget_edges())
        edges.push_back(make_edge(a - 1, b - 1));
    auto u = [](int block, int t) { return 18 + 3 * (block - 1) + t; };
    for (int a = 0; a < 3; ++a) {
        for (int b = 0; b < 3; ++b) {
            edges.push_back({u(1, a), u(2, b)});
            edges.push_back({u(3, a), u(4, b)});
        }
        for (int j = 0; j < 6; ++j) {
            edges.push_back({j, u(2, a)});
            edges.push_back({9 + j, u(3, a)});
        }
    }
    const Graph g(30, edges);
    std::set<std::vector<int>> found;
    for (const auto& s : enumerate_minimal_separators(g).separators) {
        if (s.size() != 6 || s.back() >= 18)
            continue;
        std::vector<char> in_sep(30, 0);
        for (Vertex v : s)
            in_sep[idx(v)] = 1;
        std::vector<Vertex> rest;
        std::vector<Vertex> stack{u(1, 0)};
        std::vector<char> seen(30, 0);
        seen[idx(u(1, 0))] = 1;
        while (!stack.empty()) {
            const Vertex x = stack.back();
            stack.pop_back();
            for (Vertex y : g.neighbors(x))
                if (!in_sep[idx(y)] && !seen[idx(y)]) {
                    seen[idx(y)] = 1;
                    stack.push_back(y);
                }
        }
        if (seen[idx(u(4, 0))])
            continue;
        std::vector<int> labels;
        for (Vertex v = 0; v < 18; ++v)
            if (!in_sep[idx(v)]) {
                rest.push_back(v);
                labels.push_back(v + 1);
            }
        if (maximum_matching(induced_subgraph(g, rest).graph).cardinality == 6)
            found.insert(labels);
    }
    const auto rows = gadget_rows();
    return found == std::set<std::vector<int>>(rows.begin(), rows.end());
}

[[noreturn]] void reject(const std::string& reason, const std::string& what) { throw CertificateError(reason, what); }

void check_verdict(const Verdict& v) {
    switch (v.kind) {
    case Verdict::Kind::valid_yes: return;
    case Verdict::Kind::not_a_matching: reject("not-a-matching", v.detail);
    case Verdict::Kind::too_few_edges: reject("too-few-edges", v.detail);
    case Verdict::Kind::too_few_components: reject("component-count", v.detail);
    }
}

} // namespace

void validate_instance(const OneInThreeInstance& inst) {
    if (inst.num_vars < 0)
        throw InputError("negative variable count");
    std::vector<char> seen(idx(inst.num_vars), 0);
    for (std::size_t i = 0; i < inst.clauses.size(); ++i) {
        const auto& cl = inst.clauses[i];
        for (int a = 0; a < 3; ++a) {
            if (cl[idx(a)].var < 0 || cl[idx(a)].var >= inst.num_vars)
                throw InputError("clause " + std::to_string(i + 1) + " uses an unknown variable");
            for (int b = 0; b < a; ++b)
                if (cl[idx(a)].var == cl[idx(b)].var)
                    throw InputError("clause " + std::to_string(i + 1) + " repeats a variable");
            seen[idx(cl[idx(a)].var)] = 1;
        }
    }
    for (int v = 0; v < inst.num_vars; ++v)
        if (!seen[idx(v)])
            throw InputError("variable " + std::to_string(v + 1) + " occurs in no clause");
}

void validate_instance(const X3CInstance& inst) {
    if (inst.ground < 0 || inst.ground % 3 != 0)
        throw InputError("ground set size must be a non-negative multiple of 3");
    std::set<std::array<int, 3>> seen;
    for (std::size_t i = 0; i < inst.sets.size(); ++i) {
        const auto t = sorted_triple(inst.sets[i]);
        if (t[0] < 0 || t[2] >= inst.ground)
            throw InputError("set " + std::to_string(i + 1) + " has an element outside the ground set");
        if (t[0] == t[1] || t[1] == t[2])
            throw InputError("set " + std::to_string(i + 1) + " repeats an element");
        if (!seen.insert(t).second)
            throw InputError("set " + std::to_string(i + 1) + " occurs twice");
    }
}

// ------------------------------------------------------------ one-in-three

OneInThreeLayout::OneInThreeLayout(int clauses, bool diameter3, int c)
    : m_(clauses), diameter3_(diameter3), extras_(std::max(c - 2, 0)),
      n_(30 * clauses + (diameter3 ? 2 : 0) + 2 * std::max(c - 2, 0)) {}

std::array<std::vector<int>, 3> gadget_rows() {
    std::array<std::vector<int>, 3> rows;
    for (int j = 1; j <= 3; ++j) {
        auto& row = rows[idx(j - 1)];
        for (int side : {0, 9}) {
            for (int x : row_partners(j))
                row.push_back(side + x);
            for (int x : {7, 8, 9})
                row.push_back(side + x);
        }
        std::sort(row.begin(), row.end());
    }
    return rows;
}

ReductionOutput build_one_in_three(const OneInThreeInstance& inst, bool diameter3, int c) {
    validate_instance(inst);
    if (c < 2)
        throw InputError("the one-in-three construction needs c >= 2");
    const int m = static_cast<int>(inst.clauses.size());
    const OneInThreeLayout lay(m, diameter3, c);
    std::vector<Edge> edges;
    const auto gadget = gadget_edges();
    static const bool rows_ok = gadget_separators_match_rows();
    if (gadget.size() != 26 || !rows_ok)
        throw std::logic_error("clause gadget does not have 26 edges and the three separator rows");
    auto at = [&lay](int i, int label) { return label <= 9 ? lay.l(i, label) : lay.r(i, label - 9); };
    for (int i = 0; i < m; ++i)
        for (auto [a, b] : gadget)
            edges.push_back(make_edge(at(i, a), at(i, b)));

    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            for (int q = 1; q <= 3; ++q)
                for (int t = 1; t <= 3; ++t) {
                    const Literal a = inst.clauses[idx(i)][idx(q - 1)];
                    const Literal b = inst.clauses[idx(j)][idx(t - 1)];
                    if (a.var != b.var)
                        continue;
                    if (a.negated != b.negated) {
                        edges.push_back(make_edge(lay.r(i, q), lay.l(j, t)));
                        edges.push_back(make_edge(lay.l(i, q + 3), lay.r(j, t + 3)));
                    } else {
                        edges.push_back(make_edge(lay.l(i, q + 3), lay.r(j, t)));
                        edges.push_back(make_edge(lay.r(i, q), lay.l(j, t + 3)));
                    }
                }

    for (int a = 0; a < 3 * m; ++a)
        for (int b = 0; b < 3 * m; ++b) {
            edges.push_back(make_edge(lay.u(1, a), lay.u(2, b)));
            edges.push_back(make_edge(lay.u(3, a), lay.u(4, b)));
        }
    for (int t = 0; t < 3 * m; ++t)
        for (int i = 0; i < m; ++i)
            for (int j = 1; j <= 6; ++j) {
                edges.push_back(make_edge(lay.u(2, t), lay.l(i, j)));
                edges.push_back(make_edge(lay.u(3, t), lay.r(i, j)));
            }

    std::vector<char> first_side(idx(lay.vertex_count()), 0);
    for (int i = 0; i < m; ++i) {
        for (int j = 1; j <= 6; ++j)
            first_side[idx(lay.l(i, j))] = 1;
        for (int j = 7; j <= 9; ++j)
            first_side[idx(lay.r(i, j))] = 1;
    }
    for (int t = 0; t < 3 * m; ++t) {
        first_side[idx(lay.u(1, t))] = 1;
        first_side[idx(lay.u(3, t))] = 1;
    }
    if (diameter3) {
        for (Vertex v = 0; v < 30 * m; ++v)
            edges.push_back(make_edge(v, first_side[idx(v)] ? lay.w1() : lay.w2()));
        edges.push_back(make_edge(lay.w1(), lay.w2()));
    }
    for (int e = 0; e < lay.extra_count(); ++e) {
        edges.push_back(make_edge(lay.extra(e, 1), lay.extra(e, 2)));
        if (diameter3) {
            edges.push_back(make_edge(lay.extra(e, 1), lay.w1()));
            edges.push_back(make_edge(lay.extra(e, 2), lay.w2()));
        }
    }

    ReductionOutput out;
    out.graph = Graph(lay.vertex_count(), edges);
    out.k = 12 * m + c - 2;
    out.c = c;
    out.vertex_names.resize(idx(lay.vertex_count()));
    for (int i = 0; i < m; ++i)
        for (int j = 1; j <= 9; ++j) {
            out.vertex_names[idx(lay.l(i, j))] = label("l", i + 1, j);
            out.vertex_names[idx(lay.r(i, j))] = label("r", i + 1, j);
        }
    for (int block = 1; block <= 4; ++block)
        for (int t = 0; t < 3 * m; ++t)
            out.vertex_names[idx(lay.u(block, t))] = label("u" + std::to_string(block), t + 1);
    if (diameter3) {
        out.vertex_names[idx(lay.w1())] = "w1";
        out.vertex_names[idx(lay.w2())] = "w2";
    }
    for (int e = 0; e < lay.extra_count(); ++e)
        for (int end : {1, 2})
            out.vertex_names[idx(lay.extra(e, end))] = label("x", e + 1, end);
    return out;
}

bool is_one_in_three(const OneInThreeInstance& inst, const std::vector<bool>& assignment) {
    if (static_cast<int>(assignment.size()) != inst.num_vars)
        return false;
    return std::all_of(inst.clauses.begin(), inst.clauses.end(), [&](const std::array<Literal, 3>& cl) {
        int truths = 0;
        for (const Literal& lit : cl)
            truths += assignment[idx(lit.var)] != lit.negated;
        return truths == 1;
    });
}

Matching encode_assignment(const OneInThreeInstance& inst, const std::vector<bool>& assignment, bool diameter3,
                           int c) {
    validate_instance(inst);
    if (!is_one_in_three(inst, assignment))
        throw PreconditionError("assignment does not make exactly one literal true in every clause");
    const int m = static_cast<int>(inst.clauses.size());
    const OneInThreeLayout lay(m, diameter3, c);
    std::vector<Edge> edges;
    for (int i = 0; i < m; ++i) {
        int j = 1;
        while (assignment[idx(inst.clauses[idx(i)][idx(j - 1)].var)] == inst.clauses[idx(i)][idx(j - 1)].negated)
            ++j;
        const auto partners = row_partners(j);
        for (int a = 0; a < 3; ++a) {
            edges.push_back(make_edge(lay.l(i, partners[idx(a)]), lay.l(i, 7 + a)));
            edges.push_back(make_edge(lay.r(i, partners[idx(a)]), lay.r(i, 7 + a)));
        }
    }
    for (int t = 0; t < 3 * m; ++t) {
        edges.push_back(make_edge(lay.u(1, t), lay.u(2, t)));
        edges.push_back(make_edge(lay.u(3, t), lay.u(4, t)));
    }
    for (int e = 0; e < lay.extra_count(); ++e)
        edges.push_back(make_edge(lay.extra(e, 1), lay.extra(e, 2)));
    return Matching(std::move(edges));
}

std::vector<bool> decode_matching(const OneInThreeInstance& inst, const Matching& m, bool diameter3, int c) {
    const ReductionOutput red = build_one_in_three(inst, diameter3, c);
    check_verdict(verify_matching(red.graph, m, red.k, red.c));
    const int clauses = static_cast<int>(inst.clauses.size());
    const OneInThreeLayout lay(clauses, diameter3, c);
    const auto sat = m.saturation_mask(red.graph.vertex_count());
    const auto rows = gadget_rows();

    std::vector<int> value(idx(inst.num_vars), -1);
    for (int i = 0; i < clauses; ++i) {
        const Vertex lo = lay.l(i, 1), hi = lay.r(i, 9);
        const auto inside = std::count_if(m.edges().begin(), m.edges().end(), [&](const Edge& e) {
            return e.u >= lo && e.v <= hi;
        });
        if (inside != 6)
            reject("gadget-edges", "clause " + std::to_string(i + 1) + " has " + std::to_string(inside) +
                                       " matched edges inside its gadget");
        std::vector<int> labels;
        for (int x = 1; x <= 18; ++x)
            if (sat[idx(lo + x - 1)])
                labels.push_back(x);
        const auto row = std::find(rows.begin(), rows.end(), labels);
        if (row == rows.end())
            reject("gadget-row", "clause " + std::to_string(i + 1) + " saturates an unexpected vertex set");
        const int truth = static_cast<int>(row - rows.begin());
        for (int a = 0; a < 3; ++a) {
            const Literal lit = inst.clauses[idx(i)][idx(a)];
            const int want = (a == truth) != lit.negated ? 1 : 0;
            int& slot = value[idx(lit.var)];
            if (slot >= 0 && slot != want)
                reject("consistency", "variable " + std::to_string(lit.var + 1) + " gets both values");
            slot = want;
        }
    }
    std::vector<bool> out(idx(inst.num_vars));
    for (int v = 0; v < inst.num_vars; ++v)
        out[idx(v)] = value[idx(v)] == 1;
    return out;
}

// ---------------------------------------------------------------------- X3C

ReductionOutput build_x3c(const X3CInstance& inst, bool bounded_degree, bool universal_vertex) {
    validate_instance(inst);
    const int m = static_cast<int>(inst.sets.size());
    const int n = 5 * m + inst.ground + (universal_vertex ? 1 : 0);
    std::vector<std::array<int, 3>> sets;
    for (const auto& s : inst.sets)
        sets.push_back(sorted_triple(s));
    std::vector<Edge> edges;
    for (int i = 0; i < m; ++i)
        for (int a = 0; a < 5; ++a)
            for (int b = a + 1; b < 5; ++b)
                edges.push_back({5 * i + a, 5 * i + b});
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            if (bounded_degree) {
                const auto& x = sets[idx(i)];
                const auto& y = sets[idx(j)];
                const bool share = std::any_of(x.begin(), x.end(),
                                               [&](int e) { return std::find(y.begin(), y.end(), e) != y.end(); });
                if (!share)
                    continue;
            }
            for (int a = 0; a < 3; ++a)
                for (int b = 0; b < 3; ++b)
                    edges.push_back({5 * i + a, 5 * j + b});
        }
    for (int i = 0; i < m; ++i)
        for (int a = 0; a < 3; ++a)
            edges.push_back({5 * i + a, 5 * m + sets[idx(i)][idx(a)]});
    if (universal_vertex)
        for (Vertex v = 0; v + 1 < n; ++v)
            edges.push_back({v, n - 1});

    ReductionOutput out;
    out.graph = Graph(n, edges);
    const int q = inst.ground / 3;
    out.c = m - q + 1;
    out.k = m + 3 * q;
    out.vertex_names.resize(idx(n));
    for (int i = 0; i < m; ++i) {
        for (int a = 0; a < 3; ++a)
            out.vertex_names[idx(5 * i + a)] = label("w", i + 1, sets[idx(i)][idx(a)] + 1);
        out.vertex_names[idx(5 * i + 3)] = label("w+", i + 1);
        out.vertex_names[idx(5 * i + 4)] = label("w-", i + 1);
    }
    for (int x = 0; x < inst.ground; ++x)
        out.vertex_names[idx(5 * m + x)] = label("v", x + 1);
    if (universal_vertex)
        out.vertex_names.back() = "z";
    return out;
}

bool is_exact_cover(const X3CInstance& inst, const std::vector<int>& cover) {
    std::vector<int> hits(idx(inst.ground), 0);
    std::set<int> used;
    for (int i : cover) {
        if (i < 0 || i >= static_cast<int>(inst.sets.size()) || !used.insert(i).second)
            return false;
        for (int x : inst.sets[idx(i)]) {
            if (x < 0 || x >= inst.ground)
                return false;
            ++hits[idx(x)];
        }
    }
    return std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; });
}

Matching encode_cover(const X3CInstance& inst, const std::vector<int>& cover) {
    validate_instance(inst);
    if (!is_exact_cover(inst, cover))
        throw PreconditionError("the chosen sets are not an exact cover");
    const int m = static_cast<int>(inst.sets.size());
    std::vector<Edge> edges;
    for (int i : cover) {
        const auto t = sorted_triple(inst.sets[idx(i)]);
        for (int a = 0; a < 3; ++a)
            edges.push_back({5 * i + a, 5 * m + t[idx(a)]});
    }
    for (int j = 0; j < m; ++j)
        edges.push_back({5 * j + 3, 5 * j + 4});
    return Matching(std::move(edges));
}

std::vector<int> decode_cover(const X3CInstance& inst, const Matching& m, bool bounded_degree, bool universal_vertex) {
    const ReductionOutput red = build_x3c(inst, bounded_degree, universal_vertex);
    check_verdict(verify_matching(red.graph, m, red.k, red.c));
    const auto sat = m.saturation_mask(red.graph.vertex_count());
    std::vector<int> cover;
    for (int i = 0; i < static_cast<int>(inst.sets.size()); ++i)
        if (sat[idx(5 * i)] && sat[idx(5 * i + 1)] && sat[idx(5 * i + 2)])
            cover.push_back(i);
    if (!is_exact_cover(inst, cover))
        reject("cover", "sets with three saturated element vertices do not form an exact cover");
    return cover;
}

// --------------------------------------------------------- cross-composition

Composition cross_compose(const std::vector<X3CInstance>& instances, CompositionParam param) {
    if (instances.empty())
        throw InputError("cross-composition needs at least one instance");
    const int n = instances.front().ground;
    const std::size_t per = instances.front().sets.size();
    std::set<std::set<std::array<int, 3>>> distinct;
    std::set<std::array<int, 3>> all;
    for (const auto& inst : instances) {
        validate_instance(inst);
        if (inst.ground != n)
            throw InputError("instances must share one ground set");
        if (inst.sets.size() != per)
            throw InputError("instances must have the same number of sets");
        std::set<std::array<int, 3>> mine;
        for (const auto& s : inst.sets)
            mine.insert(sorted_triple(s));
        all.insert(mine.begin(), mine.end());
        if (!distinct.insert(mine).second)
            throw InputError("instances must be pairwise distinct");
    }

    Composition comp;
    comp.sets.assign(all.begin(), all.end());
    comp.ground = n;
    comp.instances = static_cast<int>(instances.size());
    const int sets = static_cast<int>(comp.sets.size());
    const int t = comp.instances;
    const Vertex q = n + 5 * sets;
    auto centre = [n](int j) { return n + 5 * j; };
    auto leaf = [n](int j) { return n + 5 * j + 1; };
    auto port = [n](int j, int a) { return n + 5 * j + 2 + a; };
    auto pick = [q](int i) { return q + 1 + i; };

    std::vector<Edge> edges;
    for (int j = 0; j < sets; ++j) {
        edges.push_back({centre(j), leaf(j)});
        for (int a = 0; a < 3; ++a) {
            edges.push_back({centre(j), port(j, a)});
            edges.push_back(make_edge(port(j, a), comp.sets[idx(j)][idx(a)]));
        }
    }
    for (int i = 0; i < t; ++i) {
        edges.push_back({q, pick(i)});
        if (param == CompositionParam::distance_to_clique)
            for (int h = i + 1; h < t; ++h)
                edges.push_back({pick(i), pick(h)});
        std::set<std::array<int, 3>> mine;
        for (const auto& s : instances[idx(i)].sets)
            mine.insert(sorted_triple(s));
        for (int j = 0; j < sets; ++j)
            if (!mine.count(comp.sets[idx(j)]))
                for (int a = 0; a < 3; ++a)
                    edges.push_back(make_edge(pick(i), port(j, a)));
    }

    ReductionOutput& out = comp.output;
    const int total = q + 1 + t;
    out.graph = Graph(total, edges);
    out.k = n + sets - n / 3 + 1;
    out.c = out.k;
    out.vertex_names.resize(idx(total));
    for (int a = 0; a < n; ++a)
        out.vertex_names[idx(a)] = label("v", a + 1);
    for (int j = 0; j < sets; ++j) {
        out.vertex_names[idx(centre(j))] = label("w", j + 1);
        out.vertex_names[idx(leaf(j))] = label("w*", j + 1);
        for (int a = 0; a < 3; ++a)
            out.vertex_names[idx(port(j, a))] = label("w", j + 1, comp.sets[idx(j)][idx(a)] + 1);
    }
    out.vertex_names[idx(q)] = "q";
    for (int i = 0; i < t; ++i)
        out.vertex_names[idx(pick(i))] = label("p", i + 1);
    for (Vertex v = 0; v <= q; ++v)
        out.modulator.push_back(v);
    return comp;
}

Matching compose_certificate(const std::vector<X3CInstance>& instances, const Composition& comp, int which,
                             const std::vector<int>& cover) {
    if (which < 0 || which >= static_cast<int>(instances.size()))
        throw InputError("instance index out of range");
    const X3CInstance& inst = instances[idx(which)];
    if (!is_exact_cover(inst, cover))
        throw PreconditionError("the chosen sets are not an exact cover");
    const int n = comp.ground;
    const int sets = static_cast<int>(comp.sets.size());
    std::set<std::array<int, 3>> chosen;
    for (int i : cover)
        chosen.insert(sorted_triple(inst.sets[idx(i)]));
    std::vector<Edge> edges;
    for (int j = 0; j < sets; ++j) {
        const Vertex base = n + 5 * j;
        if (chosen.count(comp.sets[idx(j)])) {
            for (int a = 0; a < 3; ++a)
                edges.push_back(make_edge(base + 2 + a, comp.sets[idx(j)][idx(a)]));
        } else {
            edges.push_back({base, base + 1});
        }
    }
    const Vertex q = n + 5 * sets;
    edges.push_back({q, q + 1 + which});
    return Matching(std::move(edges));
}

} // namespace dmatch
