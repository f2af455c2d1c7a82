#pragma once

// Independent reference implementations used as oracles by the test suites.
// They share no code with the library beyond the Graph container.

#include "dmatch/graph.hpp"
#include "dmatch/matching.hpp"

#include <bit>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace oracle {

using dmatch::Edge;
using dmatch::Graph;
using dmatch::Vertex;

inline Graph random_graph(int n, double p, std::mt19937& rng) {
    std::bernoulli_distribution coin(p);
    std::vector<Edge> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (coin(rng))
                edges.push_back({u, v});
    return Graph(n, edges);
}

/// Chordal graph grown by repeatedly adding a vertex adjacent to a random
/// subset of an existing clique, so every new vertex is simplicial.
inline Graph random_chordal(int n, std::mt19937& rng) {
    std::vector<std::vector<Vertex>> cliques{{}};
    std::vector<Edge> edges;
    std::bernoulli_distribution keep(0.6);
    for (Vertex v = 0; v < n; ++v) {
        const auto& base = cliques[std::uniform_int_distribution<std::size_t>(0, cliques.size() - 1)(rng)];
        std::vector<Vertex> clique;
        for (Vertex u : base)
            if (keep(rng)) {
                clique.push_back(u);
                edges.push_back({u, v});
            }
        clique.push_back(v);
        cliques.push_back(std::move(clique));
    }
    return Graph(n, edges);
}

/// Random closed intervals with endpoints in 0..span.
inline std::vector<std::pair<int, int>> random_intervals(int n, int span, std::mt19937& rng) {
    std::uniform_int_distribution<int> pos(0, span), len(0, span / 3);
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i < n; ++i) {
        int l = pos(rng);
        out.push_back({l, l + len(rng)});
    }
    return out;
}

inline std::vector<std::uint32_t> neighbour_masks(const Graph& g) {
    std::vector<std::uint32_t> nb(static_cast<std::size_t>(g.vertex_count()), 0);
    for (const Edge& e : g.edges()) {
        nb[static_cast<std::size_t>(e.u)] |= 1u << e.v;
        nb[static_cast<std::size_t>(e.v)] |= 1u << e.u;
    }
    return nb;
}

/// perfect[X] is true when G[X] has a perfect matching (n <= 20).
inline std::vector<char> perfect_subsets(const Graph& g) {
    const int n = g.vertex_count();
    const auto nb = neighbour_masks(g);
    std::vector<char> perfect(std::size_t{1} << n, 0);
    perfect[0] = 1;
    for (std::uint32_t x = 1; x < (1u << n); ++x) {
        if (std::popcount(x) % 2)
            continue;
        const int u = std::countr_zero(x);
        for (std::uint32_t cand = nb[static_cast<std::size_t>(u)] & x; cand; cand &= cand - 1)
            if (perfect[x & ~(1u << u) & ~(cand & (~cand + 1))]) {
                perfect[x] = 1;
                break;
            }
    }
    return perfect;
}

inline int components_of(const std::vector<std::uint32_t>& nb, std::uint32_t x) {
    int count = 0;
    while (x) {
        std::uint32_t reach = x & (~x + 1), frontier = reach;
        while (frontier) {
            std::uint32_t next = 0;
            for (std::uint32_t f = frontier; f; f &= f - 1)
                next |= nb[static_cast<std::size_t>(std::countr_zero(f))];
            frontier = next & x & ~reach;
            reach |= frontier;
        }
        x &= ~reach;
        ++count;
    }
    return count;
}

/// Largest |X|/2 over vertex sets X such that G[X] has a perfect matching
/// and at least c components; nullopt if none qualifies.
inline std::optional<int> disconnected_matching_number(const Graph& g, int c) {
    const int n = g.vertex_count();
    const auto nb = neighbour_masks(g);
    const auto perfect = perfect_subsets(g);
    std::optional<int> best;
    for (std::uint32_t x = 0; x < (1u << n); ++x)
        if (perfect[x] && components_of(nb, x) >= c) {
            const int size = std::popcount(x) / 2;
            if (!best || size > *best)
                best = size;
        }
    return best;
}

inline int matching_number(const Graph& g) { return disconnected_matching_number(g, 0).value_or(0); }

/// Graph from a list of edges given as letter pairs, letters mapped in the
/// order of `alphabet`.
inline Graph lettered(const std::string& alphabet, std::initializer_list<const char*> pairs) {
    std::vector<Edge> edges;
    for (const char* p : pairs)
        edges.push_back(dmatch::make_edge(static_cast<Vertex>(alphabet.find(p[0])), static_cast<Vertex>(alphabet.find(p[1]))));
    return Graph(static_cast<int>(alphabet.size()), edges);
}

} // namespace oracle
