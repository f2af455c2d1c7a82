#include "dmatch/graph.hpp"

#include "dmatch/errors.hpp"

#include <algorithm>
#include <deque>
#include <limits>

namespace dmatch {

Graph::Graph(int n) {
    if (n < 0)
        throw InputError("negative vertex count");
    adj_.resize(static_cast<std::size_t>(n));
}

Graph::Graph(int n, std::span<const Edge> edges) : Graph(n) {
    for (const Edge& e : edges) {
        if (!contains(e.u) || !contains(e.v))
            throw InputError("edge (" + std::to_string(e.u) + ", " + std::to_string(e.v) +
                             ") out of range for " + std::to_string(n) + " vertices");
        if (e.u == e.v)
            throw InputError("self-loop at vertex " + std::to_string(e.u));
        adj_[static_cast<std::size_t>(e.u)].push_back(e.v);
        adj_[static_cast<std::size_t>(e.v)].push_back(e.u);
    }
    for (std::size_t v = 0; v < adj_.size(); ++v) {
        auto& list = adj_[v];
        std::sort(list.begin(), list.end());
        if (std::adjacent_find(list.begin(), list.end()) != list.end())
            throw InputError("duplicate edge at vertex " + std::to_string(v));
    }
    edge_count_ = static_cast<int>(edges.size());
}

bool Graph::adjacent(Vertex u, Vertex v) const {
    if (!contains(u) || !contains(v))
        return false;
    const auto& list = adj_[static_cast<std::size_t>(u)];
    return std::binary_search(list.begin(), list.end(), v);
}

std::vector<Edge> Graph::edges() const {
    std::vector<Edge> out;
    out.reserve(static_cast<std::size_t>(edge_count_));
    for (Vertex u = 0; u < vertex_count(); ++u)
        for (Vertex v : neighbors(u))
            if (u < v)
                out.push_back({u, v});
    return out;
}

InducedSubgraph induced_subgraph(const Graph& g, std::span<const Vertex> vs) {
    InducedSubgraph out;
    out.to_host.assign(vs.begin(), vs.end());
    for (Vertex v : out.to_host)
        if (!g.contains(v))
            throw InputError("vertex " + std::to_string(v) + " not in graph");
    std::sort(out.to_host.begin(), out.to_host.end());
    out.to_host.erase(std::unique(out.to_host.begin(), out.to_host.end()), out.to_host.end());

    std::vector<int> local(static_cast<std::size_t>(g.vertex_count()), -1);
    for (std::size_t i = 0; i < out.to_host.size(); ++i)
        local[static_cast<std::size_t>(out.to_host[i])] = static_cast<int>(i);

    std::vector<Edge> edges;
    for (std::size_t i = 0; i < out.to_host.size(); ++i)
        for (Vertex w : g.neighbors(out.to_host[i])) {
            int j = local[static_cast<std::size_t>(w)];
            if (j > static_cast<int>(i))
                edges.push_back({static_cast<Vertex>(i), j});
        }
    out.graph = Graph(static_cast<int>(out.to_host.size()), edges);
    return out;
}

ComponentLabeling connected_components(const Graph& g) {
    const int n = g.vertex_count();
    ComponentLabeling out;
    out.label.assign(static_cast<std::size_t>(n), -1);
    std::vector<Vertex> stack;
    for (Vertex s = 0; s < n; ++s) {
        if (out.label[static_cast<std::size_t>(s)] >= 0)
            continue;
        out.label[static_cast<std::size_t>(s)] = out.count;
        stack.push_back(s);
        while (!stack.empty()) {
            Vertex v = stack.back();
            stack.pop_back();
            for (Vertex w : g.neighbors(v))
                if (out.label[static_cast<std::size_t>(w)] < 0) {
                    out.label[static_cast<std::size_t>(w)] = out.count;
                    stack.push_back(w);
                }
        }
        ++out.count;
    }
    return out;
}

int count_components_within(const Graph& g, const std::vector<char>& in_set) {
    const int n = g.vertex_count();
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    std::vector<Vertex> stack;
    int count = 0;
    for (Vertex s = 0; s < n; ++s) {
        if (!in_set[static_cast<std::size_t>(s)] || seen[static_cast<std::size_t>(s)])
            continue;
        ++count;
        seen[static_cast<std::size_t>(s)] = 1;
        stack.push_back(s);
        while (!stack.empty()) {
            Vertex v = stack.back();
            stack.pop_back();
            for (Vertex w : g.neighbors(v))
                if (in_set[static_cast<std::size_t>(w)] && !seen[static_cast<std::size_t>(w)]) {
                    seen[static_cast<std::size_t>(w)] = 1;
                    stack.push_back(w);
                }
        }
    }
    return count;
}

std::optional<int> diameter(const Graph& g) {
    const int n = g.vertex_count();
    int best = 0;
    std::vector<int> dist(static_cast<std::size_t>(n));
    std::deque<Vertex> queue;
    for (Vertex s = 0; s < n; ++s) {
        std::fill(dist.begin(), dist.end(), -1);
        dist[static_cast<std::size_t>(s)] = 0;
        queue.assign(1, s);
        int reached = 1;
        while (!queue.empty()) {
            Vertex v = queue.front();
            queue.pop_front();
            for (Vertex w : g.neighbors(v))
                if (dist[static_cast<std::size_t>(w)] < 0) {
                    dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(v)] + 1;
                    best = std::max(best, dist[static_cast<std::size_t>(w)]);
                    ++reached;
                    queue.push_back(w);
                }
        }
        if (reached < n)
            return std::nullopt;
    }
    return best;
}

std::optional<std::vector<int>> is_bipartite(const Graph& g) {
    const int n = g.vertex_count();
    std::vector<int> color(static_cast<std::size_t>(n), -1);
    std::deque<Vertex> queue;
    for (Vertex s = 0; s < n; ++s) {
        if (color[static_cast<std::size_t>(s)] >= 0)
            continue;
        color[static_cast<std::size_t>(s)] = 0;
        queue.assign(1, s);
        while (!queue.empty()) {
            Vertex v = queue.front();
            queue.pop_front();
            for (Vertex w : g.neighbors(v)) {
                auto& cw = color[static_cast<std::size_t>(w)];
                if (cw < 0) {
                    cw = 1 - color[static_cast<std::size_t>(v)];
                    queue.push_back(w);
                } else if (cw == color[static_cast<std::size_t>(v)]) {
                    return std::nullopt;
                }
            }
        }
    }
    return color;
}

bool is_perfect_elimination_order(const Graph& g, std::span<const Vertex> order) {
    const int n = g.vertex_count();
    if (static_cast<int>(order.size()) != n)
        return false;
    std::vector<int> pos(static_cast<std::size_t>(n), -1);
    for (std::size_t i = 0; i < order.size(); ++i) {
        Vertex v = order[i];
        if (!g.contains(v) || pos[static_cast<std::size_t>(v)] >= 0)
            return false;
        pos[static_cast<std::size_t>(v)] = static_cast<int>(i);
    }
    // Each vertex's later neighbors must form a clique. It suffices to check
    // that they are all adjacent to the earliest of them (Rose-Tarjan-Lueker).
    for (Vertex v : order) {
        const int pv = pos[static_cast<std::size_t>(v)];
        Vertex parent = -1;
        for (Vertex w : g.neighbors(v))
            if (pos[static_cast<std::size_t>(w)] > pv &&
                (parent < 0 || pos[static_cast<std::size_t>(w)] < pos[static_cast<std::size_t>(parent)]))
                parent = w;
        if (parent < 0)
            continue;
        for (Vertex w : g.neighbors(v))
            if (w != parent && pos[static_cast<std::size_t>(w)] > pv && !g.adjacent(parent, w))
                return false;
    }
    return true;
}

std::optional<std::vector<Vertex>> is_chordal(const Graph& g) {
    const int n = g.vertex_count();
    // Maximum-cardinality search; the reverse visit order is a PEO iff g is chordal.
    std::vector<int> weight(static_cast<std::size_t>(n), 0);
    std::vector<char> visited(static_cast<std::size_t>(n), 0);
    std::vector<Vertex> visit;
    visit.reserve(static_cast<std::size_t>(n));
    for (int step = 0; step < n; ++step) {
        Vertex best = -1;
        for (Vertex v = 0; v < n; ++v)
            if (!visited[static_cast<std::size_t>(v)] &&
                (best < 0 || weight[static_cast<std::size_t>(v)] > weight[static_cast<std::size_t>(best)]))
                best = v;
        visited[static_cast<std::size_t>(best)] = 1;
        visit.push_back(best);
        for (Vertex w : g.neighbors(best))
            if (!visited[static_cast<std::size_t>(w)])
                ++weight[static_cast<std::size_t>(w)];
    }
    std::vector<Vertex> order(visit.rbegin(), visit.rend());
    if (!is_perfect_elimination_order(g, order))
        return std::nullopt;
    return order;
}

Graph path_graph(int n) {
    std::vector<Edge> edges;
    for (int i = 0; i + 1 < n; ++i)
        edges.push_back({i, i + 1});
    return Graph(n, edges);
}

Graph cycle_graph(int n) {
    std::vector<Edge> edges;
    for (int i = 0; i + 1 < n; ++i)
        edges.push_back({i, i + 1});
    if (n >= 3)
        edges.push_back({0, n - 1});
    return Graph(n, edges);
}

Graph complete_graph(int n) {
    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            edges.push_back({i, j});
    return Graph(n, edges);
}

Graph petersen_graph() {
    std::vector<Edge> edges;
    for (int i = 0; i < 5; ++i) {
        edges.push_back(make_edge(i, (i + 1) % 5));         // outer cycle
        edges.push_back(make_edge(i, i + 5));               // spokes
        edges.push_back(make_edge(5 + i, 5 + (i + 2) % 5)); // inner pentagram
    }
    return Graph(10, edges);
}

} // namespace dmatch
