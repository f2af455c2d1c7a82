#include "dmatch/treewidth.hpp"

#include "dmatch/errors.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <map>
#include <numeric>
#include <set>

namespace dmatch {
namespace {

std::size_t idx(int v) { return static_cast<std::size_t>(v); }

std::string bag_name(int b) { return "bag " + std::to_string(b); }

// Adjacency lists of the decomposition tree, or an error message.
std::optional<std::string> tree_shape_error(const TreeDecomposition& td, std::vector<std::vector<int>>& adj) {
    const int nb = static_cast<int>(td.bags.size());
    adj.assign(idx(nb), {});
    if (nb == 0)
        return "decomposition has no bags";
    if (static_cast<int>(td.tree_edges.size()) != nb - 1)
        return "tree has " + std::to_string(td.tree_edges.size()) + " edges for " + std::to_string(nb) + " bags";
    for (auto [a, b] : td.tree_edges) {
        if (a < 0 || b < 0 || a >= nb || b >= nb || a == b)
            return "tree edge " + std::to_string(a) + "-" + std::to_string(b) + " is invalid";
        adj[idx(a)].push_back(b);
        adj[idx(b)].push_back(a);
    }
    std::vector<char> seen(idx(nb), 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int reached = 1;
    while (!stack.empty()) {
        const int x = stack.back();
        stack.pop_back();
        for (int y : adj[idx(x)])
            if (!seen[idx(y)]) {
                seen[idx(y)] = 1;
                ++reached;
                stack.push_back(y);
            }
    }
    if (reached != nb)
        return "tree is disconnected";
    return std::nullopt;
}

std::optional<std::string> bag_error(const std::vector<Vertex>& bag, int b, int n) {
    for (std::size_t i = 0; i < bag.size(); ++i) {
        if (bag[i] < 0 || (n >= 0 && bag[i] >= n))
            return bag_name(b) + " contains out-of-range vertex " + std::to_string(bag[i]);
        if (i > 0 && bag[i - 1] >= bag[i])
            return bag_name(b) + " is not strictly increasing";
    }
    return std::nullopt;
}

// Does every vertex occur in a connected set of bags?
std::optional<std::string> running_intersection_error(const TreeDecomposition& td,
                                                      const std::vector<std::vector<int>>& adj) {
    std::map<Vertex, std::vector<int>> holders;
    for (int b = 0; b < static_cast<int>(td.bags.size()); ++b)
        for (Vertex v : td.bags[idx(b)])
            holders[v].push_back(b);
    std::vector<char> mark(td.bags.size(), 0);
    for (const auto& [v, list] : holders) {
        for (int b : list)
            mark[idx(b)] = 1;
        std::vector<int> stack{list.front()};
        mark[idx(list.front())] = 2;
        std::size_t reached = 1;
        while (!stack.empty()) {
            const int x = stack.back();
            stack.pop_back();
            for (int y : adj[idx(x)])
                if (mark[idx(y)] == 1) {
                    mark[idx(y)] = 2;
                    ++reached;
                    stack.push_back(y);
                }
        }
        for (int b : list)
            mark[idx(b)] = 0;
        if (reached != list.size())
            return "bags containing vertex " + std::to_string(v) + " are not connected";
    }
    return std::nullopt;
}

} // namespace

int TreeDecomposition::width() const {
    std::size_t w = 0;
    for (const auto& b : bags)
        w = std::max(w, b.size());
    return static_cast<int>(w) - 1;
}

int NiceTreeDecomposition::width() const {
    std::size_t w = 0;
    for (const auto& node : nodes)
        w = std::max(w, node.bag.size());
    return static_cast<int>(w) - 1;
}

std::string to_string(DecompositionVerdict::Kind kind) {
    switch (kind) {
    case DecompositionVerdict::Kind::valid: return "valid";
    case DecompositionVerdict::Kind::not_a_tree: return "not-a-tree";
    case DecompositionVerdict::Kind::bad_bag: return "bad-bag";
    case DecompositionVerdict::Kind::vertex_coverage: return "vertex-coverage";
    case DecompositionVerdict::Kind::edge_coverage: return "edge-coverage";
    case DecompositionVerdict::Kind::connectivity: return "connectivity";
    }
    return "unknown";
}

DecompositionVerdict validate_decomposition(const Graph& g, const TreeDecomposition& td) {
    using K = DecompositionVerdict::Kind;
    std::vector<std::vector<int>> adj;
    if (auto e = tree_shape_error(td, adj))
        return {K::not_a_tree, *e};
    const int n = g.vertex_count();
    for (int b = 0; b < static_cast<int>(td.bags.size()); ++b)
        if (auto e = bag_error(td.bags[idx(b)], b, n))
            return {K::bad_bag, *e};

    std::vector<char> covered(idx(n), 0);
    for (const auto& bag : td.bags)
        for (Vertex v : bag)
            covered[idx(v)] = 1;
    for (Vertex v = 0; v < n; ++v)
        if (!covered[idx(v)])
            return {K::vertex_coverage, "vertex " + std::to_string(v) + " is in no bag"};

    for (const Edge& e : g.edges()) {
        const bool found = std::any_of(td.bags.begin(), td.bags.end(), [&](const std::vector<Vertex>& bag) {
            return std::binary_search(bag.begin(), bag.end(), e.u) && std::binary_search(bag.begin(), bag.end(), e.v);
        });
        if (!found)
            return {K::edge_coverage, "edge " + std::to_string(e.u) + "-" + std::to_string(e.v) + " is in no bag"};
    }
    if (auto e = running_intersection_error(td, adj))
        return {K::connectivity, *e};
    return {};
}

TreeDecomposition min_degree_decomposition(const Graph& g) {
    const int n = g.vertex_count();
    TreeDecomposition td;
    if (n == 0) {
        td.bags.push_back({});
        return td;
    }
    std::vector<std::set<Vertex>> fill(idx(n));
    for (Vertex v = 0; v < n; ++v)
        for (Vertex u : g.neighbors(v))
            fill[idx(v)].insert(u);
    std::vector<char> gone(idx(n), 0);
    std::vector<int> position(idx(n), -1);
    std::vector<Vertex> order;
    for (int step = 0; step < n; ++step) {
        Vertex best = -1;
        for (Vertex v = 0; v < n; ++v)
            if (!gone[idx(v)] && (best < 0 || fill[idx(v)].size() < fill[idx(best)].size()))
                best = v;
        std::vector<Vertex> bag(fill[idx(best)].begin(), fill[idx(best)].end());
        for (Vertex a : bag) {
            fill[idx(a)].erase(best);
            for (Vertex b : bag)
                if (a != b)
                    fill[idx(a)].insert(b);
        }
        bag.push_back(best);
        std::sort(bag.begin(), bag.end());
        gone[idx(best)] = 1;
        position[idx(best)] = step;
        order.push_back(best);
        td.bags.push_back(std::move(bag));
    }
    // Bag i hangs below the bag of its earliest-eliminated later neighbour.
    int previous_root = -1;
    for (int i = 0; i < n; ++i) {
        int parent = -1;
        for (Vertex u : td.bags[idx(i)])
            if (position[idx(u)] > i && (parent < 0 || position[idx(u)] < parent))
                parent = position[idx(u)];
        if (parent >= 0) {
            td.tree_edges.push_back({i, parent});
        } else {
            if (previous_root >= 0)
                td.tree_edges.push_back({previous_root, i});
            previous_root = i;
        }
    }
    return td;
}

NiceTreeDecomposition nicify(const TreeDecomposition& input) {
    TreeDecomposition td = input;
    for (auto& bag : td.bags) {
        std::sort(bag.begin(), bag.end());
        if (std::adjacent_find(bag.begin(), bag.end()) != bag.end())
            throw InputError("bag lists a vertex twice");
    }
    std::vector<std::vector<int>> adj;
    if (auto e = tree_shape_error(td, adj))
        throw InputError(*e);
    for (int b = 0; b < static_cast<int>(td.bags.size()); ++b)
        if (auto e = bag_error(td.bags[idx(b)], b, -1))
            throw InputError(*e);
    if (auto e = running_intersection_error(td, adj))
        throw InputError(*e);

    NiceTreeDecomposition out;
    auto add = [&out](NiceKind kind, Vertex v, std::vector<Vertex> bag, int left, int right = -1) {
        out.nodes.push_back({kind, v, std::move(bag), left, right});
        return out.root();
    };
    // Walks from node `cur` with bag `from` to a node with bag `to`.
    auto morph = [&](int cur, std::vector<Vertex> from, const std::vector<Vertex>& to) {
        std::vector<Vertex> drop;
        std::set_difference(from.begin(), from.end(), to.begin(), to.end(), std::back_inserter(drop));
        for (Vertex v : drop) {
            from.erase(std::find(from.begin(), from.end(), v));
            cur = add(NiceKind::forget, v, from, cur);
        }
        std::vector<Vertex> gain;
        std::set_difference(to.begin(), to.end(), from.begin(), from.end(), std::back_inserter(gain));
        for (Vertex v : gain) {
            from.insert(std::lower_bound(from.begin(), from.end(), v), v);
            cur = add(NiceKind::introduce, v, from, cur);
        }
        return cur;
    };

    const int nb = static_cast<int>(td.bags.size());
    std::vector<int> parent(idx(nb), -1), order{0};
    std::vector<char> seen(idx(nb), 0);
    seen[0] = 1;
    for (std::size_t i = 0; i < order.size(); ++i)
        for (int y : adj[idx(order[i])])
            if (!seen[idx(y)]) {
                seen[idx(y)] = 1;
                parent[idx(y)] = order[i];
                order.push_back(y);
            }
    std::vector<std::vector<int>> children(idx(nb));
    for (int x : order)
        if (parent[idx(x)] >= 0)
            children[idx(parent[idx(x)])].push_back(x);

    std::vector<int> top(idx(nb), -1);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        const int x = *it;
        const auto& bag = td.bags[idx(x)];
        int cur = -1;
        if (children[idx(x)].empty()) {
            cur = morph(add(NiceKind::leaf, -1, {}, -1), {}, bag);
        } else {
            for (int y : children[idx(x)]) {
                const int branch = morph(top[idx(y)], td.bags[idx(y)], bag);
                cur = cur < 0 ? branch : add(NiceKind::join, -1, bag, cur, branch);
            }
        }
        top[idx(x)] = cur;
    }
    morph(top[0], td.bags[0], {});
    return out;
}

TreeDecomposition to_tree_decomposition(const NiceTreeDecomposition& ntd) {
    TreeDecomposition td;
    for (int x = 0; x < static_cast<int>(ntd.nodes.size()); ++x) {
        const NiceNode& node = ntd.nodes[idx(x)];
        td.bags.push_back(node.bag);
        if (node.left >= 0)
            td.tree_edges.push_back({node.left, x});
        if (node.right >= 0)
            td.tree_edges.push_back({node.right, x});
    }
    return td;
}

DecompositionVerdict validate_nice(const Graph& g, const NiceTreeDecomposition& ntd) {
    using K = DecompositionVerdict::Kind;
    if (ntd.nodes.empty())
        return {K::not_a_tree, "decomposition has no nodes"};
    if (!ntd.nodes.back().bag.empty())
        return {K::bad_bag, "root bag is not empty"};
    std::vector<int> uses(ntd.nodes.size(), 0);
    for (int x = 0; x < static_cast<int>(ntd.nodes.size()); ++x) {
        const NiceNode& node = ntd.nodes[idx(x)];
        const std::string at = "node " + std::to_string(x) + ": ";
        for (int ch : {node.left, node.right})
            if (ch >= 0) {
                if (ch >= x)
                    return {K::not_a_tree, at + "child id is not smaller than the parent"};
                ++uses[idx(ch)];
            }
        if (auto e = bag_error(node.bag, x, g.vertex_count()))
            return {K::bad_bag, at + *e};
        auto child_bag = [&](int ch) -> const std::vector<Vertex>& { return ntd.nodes[idx(ch)].bag; };
        switch (node.kind) {
        case NiceKind::leaf:
            if (node.left >= 0 || node.right >= 0 || !node.bag.empty())
                return {K::bad_bag, at + "leaf must have an empty bag and no children"};
            break;
        case NiceKind::introduce:
        case NiceKind::forget: {
            if (node.left < 0 || node.right >= 0)
                return {K::not_a_tree, at + "introduce and forget nodes need exactly one child"};
            std::vector<Vertex> expect = child_bag(node.left);
            const auto pos = std::lower_bound(expect.begin(), expect.end(), node.vertex);
            const bool present = pos != expect.end() && *pos == node.vertex;
            if (node.kind == NiceKind::introduce) {
                if (present)
                    return {K::bad_bag, at + "introduced vertex already in the child bag"};
                expect.insert(pos, node.vertex);
            } else {
                if (!present)
                    return {K::bad_bag, at + "forgotten vertex missing from the child bag"};
                expect.erase(pos);
            }
            if (expect != node.bag)
                return {K::bad_bag, at + "bag does not match its child"};
            break;
        }
        case NiceKind::join:
            if (node.left < 0 || node.right < 0)
                return {K::not_a_tree, at + "join needs two children"};
            if (child_bag(node.left) != node.bag || child_bag(node.right) != node.bag)
                return {K::bad_bag, at + "join children have different bags"};
            break;
        }
    }
    for (std::size_t x = 0; x + 1 < uses.size(); ++x)
        if (uses[x] != 1)
            return {K::not_a_tree, "node " + std::to_string(x) + " has " + std::to_string(uses[x]) + " parents"};
    return validate_decomposition(g, to_tree_decomposition(ntd));
}

// ---------------------------------------------------------------- partitions

BlockPartition::BlockPartition(std::vector<Vertex> ground, std::span<const int> labels) : ground_(std::move(ground)) {
    if (labels.size() != ground_.size())
        throw InputError("partition labels do not match the ground set");
    for (std::size_t i = 1; i < ground_.size(); ++i)
        if (ground_[i - 1] >= ground_[i])
            throw InputError("partition ground set must be strictly increasing");
    std::map<int, int> rename;
    labels_.reserve(labels.size());
    for (int l : labels) {
        auto [it, fresh] = rename.try_emplace(l, static_cast<int>(rename.size()));
        labels_.push_back(it->second);
    }
    blocks_ = static_cast<int>(rename.size());
}

BlockPartition BlockPartition::from_blocks(std::vector<std::vector<Vertex>> blocks) {
    std::vector<std::pair<Vertex, int>> tagged;
    for (int b = 0; b < static_cast<int>(blocks.size()); ++b) {
        if (blocks[idx(b)].empty())
            throw InputError("partition block is empty");
        for (Vertex v : blocks[idx(b)])
            tagged.push_back({v, b});
    }
    std::sort(tagged.begin(), tagged.end());
    std::vector<Vertex> ground;
    std::vector<int> labels;
    for (auto [v, b] : tagged) {
        ground.push_back(v);
        labels.push_back(b);
    }
    return BlockPartition(std::move(ground), labels);
}

std::vector<std::vector<Vertex>> BlockPartition::blocks() const {
    std::vector<std::vector<Vertex>> out(idx(blocks_));
    for (std::size_t i = 0; i < ground_.size(); ++i)
        out[idx(labels_[i])].push_back(ground_[i]);
    return out;
}

int BlockPartition::block_of(Vertex v) const {
    const auto it = std::lower_bound(ground_.begin(), ground_.end(), v);
    if (it == ground_.end() || *it != v)
        return -1;
    return labels_[idx(static_cast<int>(it - ground_.begin()))];
}

BlockPartition partition_join(const BlockPartition& a, const BlockPartition& b) {
    if (!std::ranges::equal(a.ground(), b.ground()))
        throw PreconditionError("partition join needs equal ground sets");
    const std::size_t n = a.ground().size();
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&parent](int x) {
        while (parent[idx(x)] != x)
            x = parent[idx(x)] = parent[idx(parent[idx(x)])];
        return x;
    };
    for (const BlockPartition* p : {&a, &b}) {
        std::vector<int> first(idx(p->block_count()), -1);
        for (std::size_t i = 0; i < n; ++i) {
            int& f = first[idx(p->rgs()[i])];
            if (f < 0)
                f = static_cast<int>(i);
            else
                parent[idx(find(static_cast<int>(i)))] = find(f);
        }
    }
    std::vector<int> labels(n);
    for (std::size_t i = 0; i < n; ++i)
        labels[i] = find(static_cast<int>(i));
    return BlockPartition({a.ground().begin(), a.ground().end()}, labels);
}

std::vector<BlockPartition> sift(const BlockPartition& gamma, Vertex v, const Graph& g) {
    const int home = gamma.block_of(v);
    if (home < 0)
        throw PreconditionError("sift vertex is not in the partition");
    std::vector<std::vector<Vertex>> kept;
    std::vector<Vertex> rest;
    for (auto& block : gamma.blocks()) {
        if (std::find(block.begin(), block.end(), v) == block.end()) {
            kept.push_back(std::move(block));
            continue;
        }
        for (Vertex u : block)
            if (u != v)
                rest.push_back(u);
    }
    std::set<BlockPartition> out;
    std::vector<int> rgs(rest.size(), 0);
    // Enumerate all restricted-growth strings over `rest`.
    auto accept = [&]() {
        const int q = rest.empty() ? 0 : *std::max_element(rgs.begin(), rgs.end()) + 1;
        std::vector<std::vector<Vertex>> pi(idx(q));
        for (std::size_t i = 0; i < rest.size(); ++i)
            pi[idx(rgs[i])].push_back(rest[i]);
        for (const auto& block : pi)
            if (std::none_of(block.begin(), block.end(), [&](Vertex u) { return g.adjacent(u, v); }))
                return;
        for (std::size_t i = 0; i < rest.size(); ++i)
            for (std::size_t j = i + 1; j < rest.size(); ++j)
                if (rgs[i] != rgs[j] && g.adjacent(rest[i], rest[j]))
                    return;
        auto blocks = kept;
        blocks.insert(blocks.end(), pi.begin(), pi.end());
        out.insert(BlockPartition::from_blocks(std::move(blocks)));
    };
    if (rest.empty()) {
        accept();
        return {out.begin(), out.end()};
    }
    std::vector<int> high(rest.size(), 0);
    while (true) {
        accept();
        std::size_t i = rest.size() - 1;
        while (i > 0 && rgs[i] > high[i - 1])
            --i;
        if (i == 0)
            break;
        ++rgs[i];
        high[i] = std::max(high[i - 1], rgs[i]);
        for (std::size_t j = i + 1; j < rest.size(); ++j) {
            rgs[j] = 0;
            high[j] = high[i];
        }
    }
    return {out.begin(), out.end()};
}

// ------------------------------------------------------------------ dynamic program

namespace {

constexpr int kMaxBag = 16;

// Bag vertices are addressed by their position in the sorted bag.
// meta packs saturated | S << 16 | U << 32 | ell << 48; rgs holds one 4-bit
// block label per saturated position, zero elsewhere.
struct Key {
    std::uint64_t meta = 0;
    std::uint64_t rgs = 0;

    std::uint32_t sat() const { return static_cast<std::uint32_t>(meta & 0xFFFF); }
    std::uint32_t inner() const { return static_cast<std::uint32_t>((meta >> 16) & 0xFFFF); }
    std::uint32_t pending() const { return static_cast<std::uint32_t>((meta >> 32) & 0xFFFF); }
    int ell() const { return static_cast<int>(meta >> 48); }

    friend auto operator<=>(const Key&, const Key&) = default;
};

using Labels = std::array<int, kMaxBag>;

Key make_key(std::uint32_t sat, std::uint32_t inner, std::uint32_t pending, int ell, const Labels& lab, int b) {
    std::array<int, 64> rename;
    rename.fill(-1);
    int next = 0;
    std::uint64_t rgs = 0;
    for (int p = 0; p < b; ++p)
        if (sat >> p & 1u) {
            int& r = rename[idx(lab[idx(p)])];
            if (r < 0)
                r = next++;
            rgs |= static_cast<std::uint64_t>(r) << (4 * p);
        }
    return {sat | static_cast<std::uint64_t>(inner) << 16 | static_cast<std::uint64_t>(pending) << 32 |
                static_cast<std::uint64_t>(ell) << 48,
            rgs};
}

Labels labels_of(const Key& k, int b) {
    Labels lab;
    lab.fill(-1);
    for (int p = 0; p < b; ++p)
        if (k.sat() >> p & 1u)
            lab[idx(p)] = static_cast<int>(k.rgs >> (4 * p) & 0xF);
    return lab;
}

std::uint32_t insert_bit(std::uint32_t mask, int pos) {
    const std::uint32_t low = mask & ((1u << pos) - 1);
    return low | ((mask >> pos) << (pos + 1));
}

std::uint32_t remove_bit(std::uint32_t mask, int pos) {
    const std::uint32_t low = mask & ((1u << pos) - 1);
    return low | ((mask >> (pos + 1)) << pos);
}

enum class Step : std::uint8_t { leaf, copy, forget_edge, join };

struct Entry {
    int value = 0;
    Step step = Step::leaf;
    Key from;
    Key other;
    Edge edge{-1, -1};
};

using Table = std::map<Key, Entry>;

void offer(Table& t, const Key& k, const Entry& e) {
    auto [it, fresh] = t.try_emplace(k, e);
    if (!fresh && e.value > it->second.value)
        it->second = e;
}

std::uint32_t neighbour_mask(const Graph& g, const std::vector<Vertex>& bag, Vertex v) {
    std::uint32_t m = 0;
    for (std::size_t p = 0; p < bag.size(); ++p)
        if (g.adjacent(v, bag[p]))
            m |= 1u << p;
    return m;
}

Table introduce(const Graph& g, const NiceNode& node, const Table& child) {
    const int b = static_cast<int>(node.bag.size());
    const int pv = static_cast<int>(std::lower_bound(node.bag.begin(), node.bag.end(), node.vertex) - node.bag.begin());
    const std::uint32_t nb = neighbour_mask(g, node.bag, node.vertex);
    const std::uint32_t vbit = 1u << pv;
    Table out;
    for (const auto& [key, entry] : child) {
        Labels lab{};
        lab.fill(-1);
        const Labels old = labels_of(key, b - 1);
        for (int p = 0; p < b - 1; ++p)
            lab[idx(p < pv ? p : p + 1)] = old[idx(p)];
        const std::uint32_t sat = insert_bit(key.sat(), pv);
        const std::uint32_t inner = insert_bit(key.inner(), pv);
        const std::uint32_t pending = insert_bit(key.pending(), pv);
        const Entry keep{entry.value, Step::copy, key, {}, {-1, -1}};
        offer(out, make_key(sat, inner, pending, key.ell(), lab, b), keep);

        // v becomes saturated: every block holding a saturated neighbour merges with v.
        Labels merged = lab;
        constexpr int fresh = 32;
        for (int p = 0; p < b; ++p)
            if ((sat & nb) >> p & 1u) {
                const int l = lab[idx(p)];
                for (int q = 0; q < b; ++q)
                    if (merged[idx(q)] == l && (sat >> q & 1u))
                        merged[idx(q)] = fresh;
            }
        merged[idx(pv)] = fresh;
        offer(out, make_key(sat | vbit, inner, pending | vbit, key.ell(), merged, b), keep);
        for (std::uint32_t cand = pending & nb; cand; cand &= cand - 1) {
            const std::uint32_t ubit = cand & (~cand + 1);
            offer(out, make_key(sat | vbit, inner | ubit | vbit, pending & ~ubit, key.ell(), merged, b), keep);
        }
    }
    return out;
}

Table forget(const Graph& g, const NiceNode& node, const NiceTreeDecomposition& ntd, const Table& child, int cap) {
    const std::vector<Vertex>& cbag = ntd.nodes[idx(node.left)].bag;
    const int b = static_cast<int>(cbag.size());
    const int pv = static_cast<int>(std::lower_bound(cbag.begin(), cbag.end(), node.vertex) - cbag.begin());
    const std::uint32_t nb = neighbour_mask(g, cbag, node.vertex);
    const std::uint32_t vbit = 1u << pv;
    Table out;
    for (const auto& [key, entry] : child) {
        const Labels old = labels_of(key, b);
        Labels lab;
        lab.fill(-1);
        for (int p = 0; p < b; ++p)
            if (p != pv)
                lab[idx(p < pv ? p : p - 1)] = old[idx(p)];
        auto shrink = [pv](std::uint32_t m) { return remove_bit(m, pv); };
        const std::uint32_t sat = key.sat(), inner = key.inner(), pending = key.pending();
        if (!(sat & vbit)) {
            offer(out, make_key(shrink(sat), shrink(inner), shrink(pending), key.ell(), lab, b - 1),
                  {entry.value, Step::copy, key, {}, {-1, -1}});
        } else if (pending & vbit) {
            continue;
        } else if (inner & vbit) {
            for (std::uint32_t cand = inner & nb; cand; cand &= cand - 1) {
                const std::uint32_t ubit = cand & (~cand + 1);
                const Vertex u = cbag[idx(std::countr_zero(ubit))];
                offer(out,
                      make_key(shrink(sat), shrink(inner & ~ubit & ~vbit), shrink(pending), key.ell(), lab, b - 1),
                      {entry.value + 1, Step::forget_edge, key, {}, make_edge(node.vertex, u)});
            }
        } else {
            bool alone = true;
            for (int p = 0; p < b; ++p)
                if (p != pv && (sat >> p & 1u) && old[idx(p)] == old[idx(pv)])
                    alone = false;
            const int ell = alone ? std::min(cap, key.ell() + 1) : key.ell();
            offer(out, make_key(shrink(sat), shrink(inner), shrink(pending), ell, lab, b - 1),
                  {entry.value, Step::copy, key, {}, {-1, -1}});
        }
    }
    return out;
}

Table join(const NiceNode& node, const Table& left, const Table& right, int cap) {
    const int b = static_cast<int>(node.bag.size());
    std::map<std::uint64_t, std::vector<Table::const_iterator>> groups;
    for (auto it = right.begin(); it != right.end(); ++it)
        groups[it->first.meta & 0xFFFFFFFFull].push_back(it);
    Table out;
    for (const auto& [ka, ea] : left) {
        const auto found = groups.find(ka.meta & 0xFFFFFFFFull);
        if (found == groups.end())
            continue;
        const std::uint32_t sat = ka.sat(), inner = ka.inner();
        const std::uint32_t free_a = sat & ~inner & ~ka.pending();
        const Labels la = labels_of(ka, b);
        for (auto it : found->second) {
            const Key& kb = it->first;
            const std::uint32_t free_b = sat & ~inner & ~kb.pending();
            if (free_a & free_b)
                continue;
            const Labels lb = labels_of(kb, b);
            std::array<int, kMaxBag> parent;
            for (int p = 0; p < b; ++p)
                parent[idx(p)] = p;
            auto find = [&parent](int x) {
                while (parent[idx(x)] != x)
                    x = parent[idx(x)] = parent[idx(parent[idx(x)])];
                return x;
            };
            for (const Labels* lab : {&la, &lb}) {
                std::array<int, kMaxBag> first;
                first.fill(-1);
                for (int p = 0; p < b; ++p)
                    if (sat >> p & 1u) {
                        int& f = first[idx((*lab)[idx(p)])];
                        if (f < 0)
                            f = p;
                        else
                            parent[idx(find(p))] = find(f);
                    }
            }
            Labels merged;
            merged.fill(-1);
            for (int p = 0; p < b; ++p)
                if (sat >> p & 1u)
                    merged[idx(p)] = find(p);
            const int ell = std::min(cap, ka.ell() + kb.ell());
            offer(out, make_key(sat, inner, ka.pending() & kb.pending(), ell, merged, b),
                  {ea.value + it->second.value, Step::join, ka, kb, {-1, -1}});
        }
    }
    return out;
}

std::vector<Table> run_tables(const Graph& g, const NiceTreeDecomposition& ntd, int cap) {
    if (auto verdict = validate_nice(g, ntd); !verdict.ok())
        throw InputError("invalid nice tree decomposition: " + verdict.detail);
    if (ntd.width() + 1 > kMaxBag)
        throw ResourceError("bags larger than " + std::to_string(kMaxBag) + " vertices are not supported");
    std::vector<Table> tables(ntd.nodes.size());
    for (std::size_t x = 0; x < ntd.nodes.size(); ++x) {
        const NiceNode& node = ntd.nodes[x];
        switch (node.kind) {
        case NiceKind::leaf: tables[x].emplace(Key{}, Entry{}); break;
        case NiceKind::introduce: tables[x] = introduce(g, node, tables[idx(node.left)]); break;
        case NiceKind::forget: tables[x] = forget(g, node, ntd, tables[idx(node.left)], cap); break;
        case NiceKind::join: tables[x] = join(node, tables[idx(node.left)], tables[idx(node.right)], cap); break;
        }
    }
    return tables;
}

} // namespace

DisconnectedOptimum tw_solve(const Graph& g, const NiceTreeDecomposition& ntd, int c, TreewidthStats* stats) {
    const int cap = std::max(c, 0);
    if (2 * cap > g.vertex_count()) {
        if (auto verdict = validate_nice(g, ntd); !verdict.ok())
            throw InputError("invalid nice tree decomposition: " + verdict.detail);
        return {};
    }
    const std::vector<Table> tables = run_tables(g, ntd, cap);
    if (stats) {
        *stats = {};
        stats->width = ntd.width();
        for (const Table& t : tables) {
            stats->max_states = std::max(stats->max_states, t.size());
            stats->total_states += t.size();
        }
    }
    const Key goal{static_cast<std::uint64_t>(cap) << 48, 0};
    const auto hit = tables.back().find(goal);
    if (hit == tables.back().end())
        return {};

    std::vector<Edge> edges;
    std::vector<std::pair<int, Key>> stack{{ntd.root(), goal}};
    while (!stack.empty()) {
        const auto [x, key] = stack.back();
        stack.pop_back();
        const NiceNode& node = ntd.nodes[idx(x)];
        const Entry& e = tables[idx(x)].at(key);
        switch (e.step) {
        case Step::leaf: break;
        case Step::forget_edge: edges.push_back(e.edge); [[fallthrough]];
        case Step::copy: stack.push_back({node.left, e.from}); break;
        case Step::join:
            stack.push_back({node.left, e.from});
            stack.push_back({node.right, e.other});
            break;
        }
    }
    return {hit->second.value, Matching(std::move(edges))};
}

std::vector<std::pair<DPState, int>> tw_node_table(const Graph& g, const NiceTreeDecomposition& ntd, int c, int node) {
    if (node < 0 || node >= static_cast<int>(ntd.nodes.size()))
        throw InputError("node id out of range");
    const int cap = std::max(c, 0);
    const std::vector<Table> tables = run_tables(g, ntd, cap);
    const std::vector<Vertex>& bag = ntd.nodes[idx(node)].bag;
    const int b = static_cast<int>(bag.size());
    std::vector<std::pair<DPState, int>> out;
    for (const auto& [key, entry] : tables[idx(node)]) {
        DPState s;
        s.ell = key.ell();
        std::vector<Vertex> ground;
        std::vector<int> labels;
        const Labels lab = labels_of(key, b);
        for (int p = 0; p < b; ++p) {
            if (key.inner() >> p & 1u)
                s.inner.push_back(bag[idx(p)]);
            if (key.pending() >> p & 1u)
                s.pending.push_back(bag[idx(p)]);
            if (key.sat() >> p & 1u) {
                ground.push_back(bag[idx(p)]);
                labels.push_back(lab[idx(p)]);
            }
        }
        s.gamma = BlockPartition(std::move(ground), labels);
        out.push_back({std::move(s), entry.value});
    }
    return out;
}

} // namespace dmatch
