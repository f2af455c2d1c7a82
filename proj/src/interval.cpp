#include "dmatch/interval.hpp"

#include "dmatch/engines.hpp"
#include "dmatch/errors.hpp"

#include <algorithm>
#include <set>

namespace dmatch {
namespace {

std::size_t idx(int v) { return static_cast<std::size_t>(v); }

struct Runs {
    std::vector<int> first;
    std::vector<int> last;
};

Runs clique_runs(int n, const CliquePath& path) {
    Runs r{std::vector<int>(idx(n), -1), std::vector<int>(idx(n), -1)};
    for (int i = 0; i < path.size(); ++i)
        for (Vertex v : path.cliques[idx(i)]) {
            if (v < 0 || v >= n)
                throw InputError("clique path mentions vertex " + std::to_string(v) + " outside the graph");
            if (r.first[idx(v)] < 0)
                r.first[idx(v)] = i;
            else if (r.last[idx(v)] != i - 1)
                throw InputError("vertex " + std::to_string(v) + " does not occur in consecutive cliques");
            r.last[idx(v)] = i;
        }
    return r;
}

} // namespace

Graph interval_graph(const IntervalModel& model) {
    const int n = model.vertex_count();
    std::vector<Edge> edges;
    for (int u = 0; u < n; ++u) {
        const auto [lu, ru] = model.intervals[idx(u)];
        if (lu > ru)
            throw InputError("interval of vertex " + std::to_string(u) + " has left > right");
        for (int v = u + 1; v < n; ++v) {
            const auto [lv, rv] = model.intervals[idx(v)];
            if (std::max(lu, lv) <= std::min(ru, rv))
                edges.push_back({u, v});
        }
    }
    return Graph(n, edges);
}

void check_interval_model(const Graph& g, const IntervalModel& model) {
    if (model.vertex_count() != g.vertex_count())
        throw InputError("interval model has " + std::to_string(model.vertex_count()) + " intervals for " +
                         std::to_string(g.vertex_count()) + " vertices");
    if (interval_graph(model) != g)
        throw InputError("interval model does not match the graph");
}

CliquePath clique_path(const IntervalModel& model) {
    const int n = model.vertex_count();
    const Graph g = interval_graph(model);
    std::vector<int> points;
    for (const auto& [l, r] : model.intervals)
        points.push_back(r);
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());

    std::vector<std::vector<Vertex>> candidates;
    for (int x : points) {
        std::vector<Vertex> open;
        for (Vertex v = 0; v < n; ++v)
            if (model.intervals[idx(v)].first <= x && x <= model.intervals[idx(v)].second)
                open.push_back(v);
        if (candidates.empty() || candidates.back() != open)
            candidates.push_back(std::move(open));
    }
    CliquePath path;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        bool maximal = true;
        for (std::size_t j = 0; j < candidates.size() && maximal; ++j)
            if (j != i && candidates[j].size() > candidates[i].size() &&
                std::includes(candidates[j].begin(), candidates[j].end(), candidates[i].begin(), candidates[i].end()))
                maximal = false;
        if (maximal)
            path.cliques.push_back(candidates[i]);
    }
    const int p = path.size();
    path.separators.assign(idx(p + 1), {});
    for (int i = 1; i < p; ++i)
        std::set_intersection(path.cliques[idx(i)].begin(), path.cliques[idx(i)].end(), path.cliques[idx(i - 1)].begin(),
                              path.cliques[idx(i - 1)].end(), std::back_inserter(path.separators[idx(i)]));
    validate_clique_path(g, path);
    return path;
}

void validate_clique_path(const Graph& g, const CliquePath& path) {
    const int n = g.vertex_count();
    const int p = path.size();
    if (static_cast<int>(path.separators.size()) != p + 1)
        throw InputError("clique path needs p + 1 separators");
    const Runs runs = clique_runs(n, path);
    for (Vertex v = 0; v < n; ++v)
        if (runs.first[idx(v)] < 0)
            throw InputError("vertex " + std::to_string(v) + " is in no clique");
    for (int i = 0; i < p; ++i) {
        const auto& q = path.cliques[idx(i)];
        if (!std::is_sorted(q.begin(), q.end()) || std::adjacent_find(q.begin(), q.end()) != q.end())
            throw InputError("clique " + std::to_string(i) + " is not a sorted vertex set");
        for (std::size_t a = 0; a < q.size(); ++a)
            for (std::size_t b = a + 1; b < q.size(); ++b)
                if (!g.adjacent(q[a], q[b]))
                    throw InputError("clique " + std::to_string(i) + " is not complete");
        for (Vertex w = 0; w < n; ++w) {
            if (std::binary_search(q.begin(), q.end(), w))
                continue;
            if (std::all_of(q.begin(), q.end(), [&](Vertex u) { return g.adjacent(u, w); }))
                throw InputError("clique " + std::to_string(i) + " is not maximal");
        }
        std::vector<Vertex> expected;
        if (i > 0)
            std::set_intersection(q.begin(), q.end(), path.cliques[idx(i - 1)].begin(), path.cliques[idx(i - 1)].end(),
                                  std::back_inserter(expected));
        if (path.separators[idx(i)] != expected)
            throw InputError("separator " + std::to_string(i) + " differs from the clique intersection");
    }
    if (!path.separators[idx(p)].empty())
        throw InputError("last separator must be empty");
    for (const Edge& e : g.edges())
        if (std::max(runs.first[idx(e.u)], runs.first[idx(e.v)]) > std::min(runs.last[idx(e.u)], runs.last[idx(e.v)]))
            throw InputError("edge (" + std::to_string(e.u) + ", " + std::to_string(e.v) + ") lies in no clique");
}

IntervalTable::IntervalTable(const Graph& g, const CliquePath& path, int c) : p_(path.size()), c_(c) {
    if (c < 0)
        throw InputError("component target must be non-negative");
    validate_clique_path(g, path);
    const int n = g.vertex_count();
    const Runs runs = clique_runs(n, path);

    // G_{i,j}: vertices whose clique run lies within [i, j], i.e. the union
    // of Q_i..Q_j minus the boundary separators S_i and S_{j+1}.
    std::vector<int> range_size(idx(p_) * idx(p_), 0);
    range_matching_.resize(idx(p_) * idx(p_));
    for (int i = 0; i < p_; ++i)
        for (int j = i; j < p_; ++j) {
            std::vector<Vertex> vs;
            for (Vertex v = 0; v < n; ++v)
                if (runs.first[idx(v)] >= i && runs.last[idx(v)] <= j)
                    vs.push_back(v);
            auto sub = induced_subgraph(g, vs);
            auto local = maximum_matching(sub.graph);
            std::vector<Edge> edges;
            for (const Edge& e : local.matching.edges())
                edges.push_back(make_edge(sub.to_host[idx(e.u)], sub.to_host[idx(e.v)]));
            range_matching_[idx(i) * idx(p_) + idx(j)] = Matching(std::move(edges));
            range_size[idx(i) * idx(p_) + idx(j)] = static_cast<int>(vs.size());
        }

    table_.assign(idx(p_) * idx(p_) * idx(c_ + 1), Entry{});
    for (int len = 1; len <= p_; ++len)
        for (int i = 0; i + len - 1 < p_; ++i) {
            const int j = i + len - 1;
            const int vertices = range_size[idx(i) * idx(p_) + idx(j)];
            const int beta = range_matching_[idx(i) * idx(p_) + idx(j)].size();
            for (int cc = 0; cc <= c_; ++cc) {
                Entry& e = table_[at(i, j, cc)];
                if (cc <= 1) {
                    // beta(K_1) = beta(empty) = -inf, and an edgeless range is
                    // -inf for c' = 1 as well.
                    if (vertices <= 1 || (cc == 1 && beta == 0))
                        continue;
                    e.value = beta;
                    continue;
                }
                if (i == j)
                    continue;
                for (int split = i; split < j; ++split)
                    for (int c1 = 0; c1 <= cc; ++c1) {
                        const Entry& left = table_[at(i, split, c1)];
                        const Entry& right = table_[at(split + 1, j, cc - c1)];
                        if (left.value == kNone || right.value == kNone)
                            continue;
                        if (left.value + right.value > e.value) {
                            e.value = left.value + right.value;
                            e.split = split;
                            e.left_c = c1;
                        }
                    }
            }
        }
}

std::optional<int> IntervalTable::value(int i, int j, int c) const {
    if (i < 0 || j >= p_ || i > j || c < 0 || c > c_)
        throw std::out_of_range("interval table index");
    const int v = table_[at(i, j, c)].value;
    if (v == kNone)
        return std::nullopt;
    return v;
}

Matching IntervalTable::witness(int i, int j, int c) const {
    if (!value(i, j, c))
        throw PreconditionError("no witness for an infeasible interval table entry");
    std::vector<Edge> edges;
    struct Frame {
        int i, j, c;
    };
    std::vector<Frame> stack{{i, j, c}};
    while (!stack.empty()) {
        Frame f = stack.back();
        stack.pop_back();
        const Entry& e = table_[at(f.i, f.j, f.c)];
        if (e.split < 0) {
            const auto& m = range_matching_[idx(f.i) * idx(p_) + idx(f.j)];
            edges.insert(edges.end(), m.edges().begin(), m.edges().end());
            continue;
        }
        stack.push_back({f.i, e.split, e.left_c});
        stack.push_back({e.split + 1, f.j, f.c - e.left_c});
    }
    return Matching(std::move(edges));
}

DisconnectedOptimum interval_solve(const Graph& g, const CliquePath& path, int c) {
    if (c < 1)
        throw InputError("component target c must be at least 1");
    DisconnectedOptimum out;
    // Every component holds an edge, so more than n/2 components is impossible.
    if (2 * c > g.vertex_count() || path.size() == 0) {
        validate_clique_path(g, path);
        return out;
    }
    IntervalTable table(g, path, c);
    const int p = table.cliques();
    if (auto v = table.value(0, p - 1, c)) {
        out.value = *v;
        out.witness = table.witness(0, p - 1, c);
    }
    return out;
}

} // namespace dmatch
