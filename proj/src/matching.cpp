#include "dmatch/matching.hpp"

#include "dmatch/errors.hpp"

#include <algorithm>

namespace dmatch {

Matching::Matching(std::vector<Edge> edges) : edges_(std::move(edges)) {
    for (Edge& e : edges_)
        e = make_edge(e.u, e.v);
    std::sort(edges_.begin(), edges_.end());
}

bool Matching::is_vertex_disjoint() const {
    std::vector<Vertex> ends;
    ends.reserve(edges_.size() * 2);
    for (const Edge& e : edges_) {
        if (e.u == e.v)
            return false;
        ends.push_back(e.u);
        ends.push_back(e.v);
    }
    std::sort(ends.begin(), ends.end());
    return std::adjacent_find(ends.begin(), ends.end()) == ends.end();
}

std::vector<Vertex> Matching::saturated() const {
    std::vector<Vertex> out;
    out.reserve(edges_.size() * 2);
    for (const Edge& e : edges_) {
        out.push_back(e.u);
        out.push_back(e.v);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<char> Matching::saturation_mask(int n) const {
    std::vector<char> mask(static_cast<std::size_t>(n), 0);
    for (const Edge& e : edges_) {
        mask.at(static_cast<std::size_t>(e.u)) = 1;
        mask.at(static_cast<std::size_t>(e.v)) = 1;
    }
    return mask;
}

std::vector<Vertex> Matching::mate_table(int n) const {
    std::vector<Vertex> mate(static_cast<std::size_t>(n), -1);
    for (const Edge& e : edges_) {
        mate.at(static_cast<std::size_t>(e.u)) = e.v;
        mate.at(static_cast<std::size_t>(e.v)) = e.u;
    }
    return mate;
}

Matching matching_from_mates(std::span<const Vertex> mate) {
    std::vector<Edge> edges;
    for (std::size_t v = 0; v < mate.size(); ++v)
        if (mate[v] > static_cast<Vertex>(v))
            edges.push_back({static_cast<Vertex>(v), mate[v]});
    return Matching(std::move(edges));
}

int matching_components(const Graph& g, const Matching& m) {
    return count_components_within(g, m.saturation_mask(g.vertex_count()));
}

bool is_induced_matching(const Graph& g, const Matching& m) {
    if (!m.is_vertex_disjoint())
        return false;
    const auto mask = m.saturation_mask(g.vertex_count());
    for (const Edge& e : m.edges()) {
        if (!g.adjacent(e.u, e.v))
            return false;
        for (Vertex end : {e.u, e.v})
            for (Vertex w : g.neighbors(end))
                if (mask[static_cast<std::size_t>(w)] && w != e.u && w != e.v)
                    return false;
    }
    return true;
}

std::string to_string(Verdict::Kind kind) {
    switch (kind) {
    case Verdict::Kind::valid_yes: return "valid";
    case Verdict::Kind::not_a_matching: return "not-a-matching";
    case Verdict::Kind::too_few_edges: return "too-few-edges";
    case Verdict::Kind::too_few_components: return "too-few-components";
    }
    return "unknown";
}

Verdict verify_matching(const Graph& g, const Matching& m, int k, int c) {
    Verdict out;
    out.edges = m.size();
    for (const Edge& e : m.edges()) {
        if (!g.contains(e.u) || !g.contains(e.v) || !g.adjacent(e.u, e.v)) {
            out.kind = Verdict::Kind::not_a_matching;
            out.detail = "edge (" + std::to_string(e.u) + ", " + std::to_string(e.v) + ") is not in the graph";
            return out;
        }
    }
    if (!m.is_vertex_disjoint()) {
        out.kind = Verdict::Kind::not_a_matching;
        out.detail = "a vertex is covered by two edges";
        return out;
    }
    out.components = matching_components(g, m);
    if (m.size() < k) {
        out.kind = Verdict::Kind::too_few_edges;
        out.detail = std::to_string(m.size()) + " edges, need " + std::to_string(k);
    } else if (out.components < c) {
        out.kind = Verdict::Kind::too_few_components;
        out.detail = std::to_string(out.components) + " components, need " + std::to_string(c);
    }
    return out;
}

} // namespace dmatch
