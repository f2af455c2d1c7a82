#include "dmatch/separators.hpp"

#include "dmatch/engines.hpp"
#include "dmatch/errors.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace dmatch {
namespace {

std::size_t idx(Vertex v) { return static_cast<std::size_t>(v); }

// Components of G minus the vertices flagged in `removed`.
std::vector<std::vector<Vertex>> components_avoiding(const Graph& g, const std::vector<char>& removed) {
    const int n = g.vertex_count();
    std::vector<char> seen(removed);
    std::vector<std::vector<Vertex>> out;
    std::vector<Vertex> stack;
    for (Vertex s = 0; s < n; ++s) {
        if (seen[idx(s)])
            continue;
        out.emplace_back();
        seen[idx(s)] = 1;
        stack.push_back(s);
        while (!stack.empty()) {
            Vertex v = stack.back();
            stack.pop_back();
            out.back().push_back(v);
            for (Vertex w : g.neighbors(v))
                if (!seen[idx(w)]) {
                    seen[idx(w)] = 1;
                    stack.push_back(w);
                }
        }
    }
    return out;
}

std::vector<Vertex> neighborhood_of(const Graph& g, const std::vector<Vertex>& comp, std::vector<char>& mark) {
    std::vector<Vertex> out;
    for (Vertex v : comp)
        mark[idx(v)] = 2;
    for (Vertex v : comp)
        for (Vertex w : g.neighbors(v))
            if (mark[idx(w)] == 0) {
                mark[idx(w)] = 1;
                out.push_back(w);
            }
    for (Vertex v : comp)
        mark[idx(v)] = 0;
    for (Vertex w : out)
        mark[idx(w)] = 0;
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

bool is_minimal_separator(const Graph& g, const std::vector<Vertex>& s) {
    const int n = g.vertex_count();
    std::vector<char> removed(idx(n), 0);
    for (Vertex v : s)
        removed[idx(v)] = 1;
    int full = 0;
    std::vector<char> mark(idx(n), 0);
    for (const auto& comp : components_avoiding(g, removed))
        if (neighborhood_of(g, comp, mark) == s)
            ++full;
    return full >= 2;
}

SeparatorFamily enumerate_minimal_separators(const Graph& g, std::size_t budget) {
    const int n = g.vertex_count();
    std::set<std::vector<Vertex>> found;
    std::deque<std::vector<Vertex>> pending;
    std::vector<char> mark(idx(n), 0);

    auto offer = [&](std::vector<Vertex> sep) {
        if (found.count(sep))
            return;
        if (found.size() >= budget)
            throw ResourceError("more than " + std::to_string(budget) + " minimal separators");
        found.insert(sep);
        pending.push_back(std::move(sep));
    };
    // N(C) for each component C of G - removed; only components that are
    // not full to the removed set can yield a new close separator, but every
    // N(C) of this shape is a minimal separator, so all are offered.
    auto offer_components = [&](const std::vector<char>& removed) {
        for (const auto& comp : components_avoiding(g, removed)) {
            auto sep = neighborhood_of(g, comp, mark);
            // N(C) = {} only separates when the graph has another component.
            if (static_cast<int>(comp.size()) == n)
                continue;
            if (is_minimal_separator(g, sep))
                offer(std::move(sep));
        }
    };

    std::vector<char> removed(idx(n), 0);
    for (Vertex v = 0; v < n; ++v) {
        std::fill(removed.begin(), removed.end(), 0);
        removed[idx(v)] = 1;
        for (Vertex w : g.neighbors(v))
            removed[idx(w)] = 1;
        offer_components(removed);
    }
    while (!pending.empty()) {
        std::vector<Vertex> sep = std::move(pending.front());
        pending.pop_front();
        for (Vertex x : sep) {
            std::fill(removed.begin(), removed.end(), 0);
            for (Vertex s : sep)
                removed[idx(s)] = 1;
            for (Vertex w : g.neighbors(x))
                removed[idx(w)] = 1;
            offer_components(removed);
        }
    }
    SeparatorFamily out;
    out.host_vertices = n;
    out.separators.assign(found.begin(), found.end());
    return out;
}

DisconnectedOptimum xp_solve(const Graph& g, int c, const SeparatorFamily& seps) {
    if (c < 1)
        throw InputError("component target c must be at least 1");
    if (seps.host_vertices != g.vertex_count())
        throw InputError("separator family was computed for a different graph");

    const int n = g.vertex_count();
    const MatchingResult whole = maximum_matching(g);
    DisconnectedOptimum out;
    if (c == 1) {
        if (whole.cardinality > 0) {
            out.value = whole.cardinality;
            out.witness = whole.matching;
        }
        return out;
    }

    const int upper = whole.cardinality;
    const int max_pick = std::min<int>(c - 1, static_cast<int>(seps.size()));
    std::vector<char> removed(idx(n), 0);

    auto evaluate = [&](const std::vector<std::size_t>& pick) {
        std::fill(removed.begin(), removed.end(), 0);
        for (std::size_t i : pick)
            for (Vertex v : seps.separators[i])
                removed[idx(v)] = 1;
        std::vector<Vertex> keep;
        for (Vertex v = 0; v < n; ++v)
            if (!removed[idx(v)])
                keep.push_back(v);
        auto sub = induced_subgraph(g, keep);
        auto local = maximum_matching(sub.graph);
        if (local.cardinality == 0 || (out.value && local.cardinality < *out.value))
            return;
        std::vector<Edge> edges;
        for (const Edge& e : local.matching.edges())
            edges.push_back(make_edge(sub.to_host[idx(e.u)], sub.to_host[idx(e.v)]));
        Matching candidate(std::move(edges));
        if (matching_components(g, candidate) < c)
            return;
        if (!out.value || local.cardinality > *out.value || candidate < *out.witness) {
            out.value = local.cardinality;
            out.witness = std::move(candidate);
        }
    };

    // Lexicographic combinations of sizes 0..c-1; stop once the bound beta(g)
    // is reached since no family can do better.
    std::vector<std::size_t> pick;
    evaluate(pick);
    for (int size = 1; size <= max_pick && !(out.value && *out.value == upper); ++size) {
        pick.resize(static_cast<std::size_t>(size));
        for (int i = 0; i < size; ++i)
            pick[static_cast<std::size_t>(i)] = static_cast<std::size_t>(i);
        for (;;) {
            evaluate(pick);
            if (out.value && *out.value == upper)
                break;
            int i = size - 1;
            while (i >= 0 && pick[static_cast<std::size_t>(i)] == seps.size() - static_cast<std::size_t>(size - i))
                --i;
            if (i < 0)
                break;
            ++pick[static_cast<std::size_t>(i)];
            for (int j = i + 1; j < size; ++j)
                pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j - 1)] + 1;
        }
    }
    return out;
}

} // namespace dmatch
