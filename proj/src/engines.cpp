#include "dmatch/engines.hpp"

#include "dmatch/errors.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <deque>
#include <numeric>

namespace dmatch {
namespace {

// Edmonds' augmenting path search with blossom contraction through a base
// array. One instance is reused across roots.
class BlossomSearch {
public:
    BlossomSearch(const Graph& g, std::vector<Vertex>& mate)
        : g_(g), mate_(mate), n_(g.vertex_count()), parent_(static_cast<std::size_t>(n_)),
          base_(static_cast<std::size_t>(n_)), in_queue_(static_cast<std::size_t>(n_)),
          in_blossom_(static_cast<std::size_t>(n_)), on_path_(static_cast<std::size_t>(n_)) {}

    // Returns the exposed end of an augmenting path from root, or -1.
    Vertex find_path(Vertex root) {
        std::fill(parent_.begin(), parent_.end(), -1);
        std::fill(in_queue_.begin(), in_queue_.end(), 0);
        std::iota(base_.begin(), base_.end(), 0);
        queue_.clear();
        queue_.push_back(root);
        in_queue_[idx(root)] = 1;
        while (!queue_.empty()) {
            Vertex v = queue_.front();
            queue_.pop_front();
            for (Vertex to : g_.neighbors(v)) {
                if (base_[idx(v)] == base_[idx(to)] || mate_[idx(v)] == to)
                    continue;
                if (to == root || (mate_[idx(to)] >= 0 && parent_[idx(mate_[idx(to)])] >= 0)) {
                    contract(v, to);
                } else if (parent_[idx(to)] < 0) {
                    parent_[idx(to)] = v;
                    if (mate_[idx(to)] < 0)
                        return to;
                    Vertex next = mate_[idx(to)];
                    in_queue_[idx(next)] = 1;
                    queue_.push_back(next);
                }
            }
        }
        return -1;
    }

    void augment(Vertex end) {
        while (end >= 0) {
            Vertex pv = parent_[idx(end)];
            Vertex ppv = mate_[idx(pv)];
            mate_[idx(end)] = pv;
            mate_[idx(pv)] = end;
            end = ppv;
        }
    }

private:
    static std::size_t idx(Vertex v) { return static_cast<std::size_t>(v); }

    Vertex lca(Vertex a, Vertex b) {
        std::fill(on_path_.begin(), on_path_.end(), 0);
        for (;;) {
            a = base_[idx(a)];
            on_path_[idx(a)] = 1;
            if (mate_[idx(a)] < 0)
                break;
            a = parent_[idx(mate_[idx(a)])];
        }
        for (;;) {
            b = base_[idx(b)];
            if (on_path_[idx(b)])
                return b;
            b = parent_[idx(mate_[idx(b)])];
        }
    }

    void mark_path(Vertex v, Vertex b, Vertex child) {
        while (base_[idx(v)] != b) {
            in_blossom_[idx(base_[idx(v)])] = 1;
            in_blossom_[idx(base_[idx(mate_[idx(v)])])] = 1;
            parent_[idx(v)] = child;
            child = mate_[idx(v)];
            v = parent_[idx(mate_[idx(v)])];
        }
    }

    void contract(Vertex v, Vertex to) {
        Vertex b = lca(v, to);
        std::fill(in_blossom_.begin(), in_blossom_.end(), 0);
        mark_path(v, b, to);
        mark_path(to, b, v);
        for (Vertex i = 0; i < n_; ++i) {
            if (!in_blossom_[idx(base_[idx(i)])])
                continue;
            base_[idx(i)] = b;
            if (!in_queue_[idx(i)]) {
                in_queue_[idx(i)] = 1;
                queue_.push_back(i);
            }
        }
    }

    const Graph& g_;
    std::vector<Vertex>& mate_;
    int n_;
    std::vector<Vertex> parent_;
    std::vector<Vertex> base_;
    std::vector<char> in_queue_;
    std::vector<char> in_blossom_;
    std::vector<char> on_path_;
    std::deque<Vertex> queue_;
};

void check_is_matching_of(const Graph& g, const Matching& m) {
    for (const Edge& e : m.edges())
        if (!g.adjacent(e.u, e.v))
            throw InputError("matching edge (" + std::to_string(e.u) + ", " + std::to_string(e.v) +
                             ") is not an edge of the graph");
    if (!m.is_vertex_disjoint())
        throw InputError("edge set is not a matching");
}

} // namespace

bool has_augmenting_path(const Graph& g, const Matching& m) {
    check_is_matching_of(g, m);
    auto mate = m.mate_table(g.vertex_count());
    BlossomSearch search(g, mate);
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        if (mate[static_cast<std::size_t>(v)] < 0 && search.find_path(v) >= 0)
            return true;
    return false;
}

MatchingResult maximum_matching(const Graph& g) {
    const int n = g.vertex_count();
    std::vector<Vertex> mate(static_cast<std::size_t>(n), -1);
    // Greedy start, then augment from every exposed vertex once: a vertex
    // with no augmenting path never gains one later.
    for (Vertex v = 0; v < n; ++v) {
        if (mate[static_cast<std::size_t>(v)] >= 0)
            continue;
        for (Vertex w : g.neighbors(v))
            if (mate[static_cast<std::size_t>(w)] < 0) {
                mate[static_cast<std::size_t>(v)] = w;
                mate[static_cast<std::size_t>(w)] = v;
                break;
            }
    }
    BlossomSearch search(g, mate);
    for (Vertex v = 0; v < n; ++v) {
        if (mate[static_cast<std::size_t>(v)] >= 0)
            continue;
        Vertex end = search.find_path(v);
        if (end >= 0)
            search.augment(end);
    }
    MatchingResult out;
    out.matching = matching_from_mates(mate);
    out.cardinality = out.matching.size();
    if (has_augmenting_path(g, out.matching))
        throw std::logic_error("maximum_matching: augmenting path left after search");
    return out;
}

Matching connect_matching(const Graph& g, const Matching& m, std::vector<ConnectTraceRow>* trace) {
    if (g.edge_count() == 0)
        throw InputError("connect_matching needs a graph with at least one edge");
    if (connected_components(g).count != 1)
        throw InputError("connect_matching needs a connected graph");
    check_is_matching_of(g, m);
    if (m.empty())
        throw PreconditionError("empty matching is not maximum in a graph with edges");

    const int n = g.vertex_count();
    auto idx = [](Vertex v) { return static_cast<std::size_t>(v); };
    std::vector<Vertex> mate = m.mate_table(n);
    std::vector<char> in_c(idx(n), 0), in_w(idx(n), 0);
    std::vector<Vertex> c_order, w_order;
    std::deque<Vertex> qs, qn;
    const std::size_t target = static_cast<std::size_t>(2 * m.size());

    auto snapshot = [&](const char* fn, Vertex v) {
        if (!trace)
            return;
        ConnectTraceRow row;
        row.function = fn;
        row.vertex = v;
        row.component = c_order;
        for (Vertex w : w_order)
            if (in_w[idx(w)])
                row.frontier.push_back(w);
        row.saturated_queue.assign(qs.begin(), qs.end());
        row.exposed_queue.assign(qn.begin(), qn.end());
        row.matching = matching_from_mates(mate);
        trace->push_back(std::move(row));
    };
    auto add_to_c = [&](Vertex v) {
        in_c[idx(v)] = 1;
        c_order.push_back(v);
    };

    Vertex root = m.saturated().front();
    add_to_c(root);
    qs.push_back(root);

    while (c_order.size() < target) {
        const std::size_t before = c_order.size();
        while (!qs.empty()) {
            Vertex v = qs.front();
            qs.pop_front();
            for (Vertex w : g.neighbors(v)) {
                if (in_c[idx(w)])
                    continue;
                if (mate[idx(w)] >= 0) {
                    add_to_c(w);
                    qs.push_back(w);
                } else if (!in_w[idx(w)]) {
                    in_w[idx(w)] = 1;
                    w_order.push_back(w);
                    qn.push_back(w);
                }
            }
            snapshot("expand", v);
        }
        while (!qn.empty()) {
            Vertex v = qn.front();
            qn.pop_front();
            auto nb = g.neighbors(v);
            auto it = std::find_if(nb.begin(), nb.end(), [&](Vertex w) { return !in_c[idx(w)]; });
            if (it != nb.end()) {
                Vertex w = *it;
                Vertex u = mate[idx(w)];
                if (u < 0)
                    throw PreconditionError("matching is not maximum: edge (" + std::to_string(v) + ", " +
                                            std::to_string(w) + ") joins two exposed vertices");
                mate[idx(u)] = -1;
                mate[idx(w)] = v;
                mate[idx(v)] = w;
                add_to_c(v);
                add_to_c(w);
                in_w[idx(v)] = 0;
                qs.push_back(v);
                qs.push_back(w);
            }
            snapshot("tryToConnect", v);
        }
        if (qs.empty() && c_order.size() == before && c_order.size() < target)
            throw PreconditionError("connected matching expansion stalled; input matching is not maximum");
    }
    return matching_from_mates(mate);
}

DisconnectedOptimum brute_force_disconnected(const Graph& g, int c) {
    const int n = g.vertex_count();
    if (n > 64)
        throw ResourceError("exhaustive search is limited to 64 vertices");
    const auto edges = g.edges();
    const std::size_t edge_count = edges.size();
    std::vector<std::uint64_t> nb(static_cast<std::size_t>(n), 0);
    std::vector<std::uint64_t> ends(edge_count);
    for (std::size_t j = 0; j < edge_count; ++j) {
        ends[j] = (std::uint64_t{1} << edges[j].u) | (std::uint64_t{1} << edges[j].v);
        nb[static_cast<std::size_t>(edges[j].u)] |= std::uint64_t{1} << edges[j].v;
        nb[static_cast<std::size_t>(edges[j].v)] |= std::uint64_t{1} << edges[j].u;
    }
    auto components = [&nb](std::uint64_t x) {
        int count = 0;
        while (x) {
            std::uint64_t reach = x & (~x + 1), frontier = reach;
            while (frontier) {
                std::uint64_t next = 0;
                for (std::uint64_t f = frontier; f; f &= f - 1)
                    next |= nb[static_cast<std::size_t>(std::countr_zero(f))];
                frontier = next & x & ~reach;
                reach |= frontier;
            }
            x &= ~reach;
            ++count;
        }
        return count;
    };

    // Optimal sets are found in lexicographic order of edge indices, so the
    // first matching of the largest size wins; beta caps the search.
    const int ceiling = maximum_matching(g).cardinality;
    std::vector<std::size_t> chosen, best_set;
    int best = c <= 0 ? 0 : -1;
    bool done = best == ceiling;
    auto search = [&](auto&& self, std::size_t from, std::uint64_t used) -> void {
        const int size = static_cast<int>(chosen.size());
        if (size > best && components(used) >= c) {
            best = size;
            best_set = chosen;
            done = best == ceiling;
        }
        if (done)
            return;
        int free_edges = 0;
        std::uint64_t touched = 0;
        for (std::size_t j = from; j < edge_count; ++j)
            if (!(ends[j] & used)) {
                ++free_edges;
                touched |= ends[j];
            }
        if (best >= 0 && size + std::min(free_edges, std::popcount(touched) / 2) <= best)
            return;
        for (std::size_t j = from; j < edge_count && !done; ++j) {
            if (ends[j] & used)
                continue;
            chosen.push_back(j);
            self(self, j + 1, used | ends[j]);
            chosen.pop_back();
        }
    };
    search(search, 0, 0);

    DisconnectedOptimum out;
    if (best < 0)
        return out;
    std::vector<Edge> witness;
    for (std::size_t j : best_set)
        witness.push_back(edges[j]);
    out.value = best;
    out.witness = Matching(std::move(witness));
    return out;
}

MatchingResult brute_force_induced(const Graph& g) {
    const auto edges = g.edges();
    const int n = g.vertex_count();
    const std::size_t edge_count = edges.size();
    // blocked[v] > 0 when v is saturated or adjacent to a saturated vertex.
    std::vector<int> blocked(static_cast<std::size_t>(n), 0);
    std::vector<std::size_t> chosen, best_set;
    int best = 0;

    auto free_edge = [&](const Edge& e) {
        return blocked[static_cast<std::size_t>(e.u)] == 0 && blocked[static_cast<std::size_t>(e.v)] == 0;
    };
    auto toggle = [&](const Edge& e, int delta) {
        for (Vertex end : {e.u, e.v}) {
            blocked[static_cast<std::size_t>(end)] += delta;
            for (Vertex w : g.neighbors(end))
                blocked[static_cast<std::size_t>(w)] += delta;
        }
    };
    auto search = [&](auto&& self, std::size_t from) -> void {
        const int size = static_cast<int>(chosen.size());
        if (size > best) {
            best = size;
            best_set = chosen;
        }
        int remaining = 0;
        for (std::size_t j = from; j < edge_count; ++j)
            remaining += free_edge(edges[j]) ? 1 : 0;
        if (size + remaining <= best)
            return;
        for (std::size_t j = from; j < edge_count; ++j) {
            if (!free_edge(edges[j]))
                continue;
            toggle(edges[j], +1);
            chosen.push_back(j);
            self(self, j + 1);
            chosen.pop_back();
            toggle(edges[j], -1);
        }
    };
    search(search, 0);

    std::vector<Edge> witness;
    for (std::size_t j : best_set)
        witness.push_back(edges[j]);
    MatchingResult out;
    out.matching = Matching(std::move(witness));
    out.cardinality = out.matching.size();
    return out;
}

} // namespace dmatch
