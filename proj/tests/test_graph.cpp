#include "doctest.h"

#include "dmatch/errors.hpp"
#include "dmatch/graph.hpp"
#include "dmatch/matching.hpp"
#include "support.hpp"

using namespace dmatch;

namespace {

bool two_colourable_by_search(const Graph& g) {
    const int n = g.vertex_count();
    for (std::uint32_t colour = 0; colour < (1u << n); ++colour) {
        bool ok = true;
        for (const Edge& e : g.edges())
            if (((colour >> e.u) & 1u) == ((colour >> e.v) & 1u)) {
                ok = false;
                break;
            }
        if (ok)
            return true;
    }
    return n == 0;
}

// Chordal iff no vertex subset of size >= 4 induces a cycle.
bool chordal_by_search(const Graph& g) {
    const int n = g.vertex_count();
    const auto nb = oracle::neighbour_masks(g);
    for (std::uint32_t x = 0; x < (1u << n); ++x) {
        if (std::popcount(x) < 4)
            continue;
        bool all_two = true;
        for (std::uint32_t y = x; y && all_two; y &= y - 1)
            all_two = std::popcount(nb[static_cast<std::size_t>(std::countr_zero(y))] & x) == 2;
        if (all_two && oracle::components_of(nb, x) == 1)
            return false;
    }
    return true;
}

} // namespace

TEST_CASE("graph construction rejects malformed edge lists") {
    std::vector<Edge> loop{{1, 1}};
    CHECK_THROWS_AS(Graph(3, loop), InputError);
    std::vector<Edge> dup{{0, 1}, {1, 0}};
    CHECK_THROWS_AS(Graph(3, dup), InputError);
    std::vector<Edge> range{{0, 3}};
    CHECK_THROWS_AS(Graph(3, range), InputError);

    Graph g = cycle_graph(5);
    CHECK(g.edge_count() == 5);
    int degree_sum = 0;
    for (Vertex v = 0; v < 5; ++v) {
        degree_sum += g.degree(v);
        for (Vertex w : g.neighbors(v))
            CHECK(g.adjacent(w, v));
    }
    CHECK(degree_sum == 2 * g.edge_count());
}

TEST_CASE("induced subgraphs") {
    Graph p4 = path_graph(4);
    std::vector<Vertex> abd{0, 1, 3};
    auto sub = induced_subgraph(p4, abd);
    CHECK(sub.graph.vertex_count() == 3);
    CHECK(sub.graph.edge_count() == 1);
    CHECK(sub.graph.adjacent(0, 1));
    CHECK(sub.graph.degree(2) == 0);
    CHECK(sub.to_host == abd);

    CHECK(induced_subgraph(p4, std::vector<Vertex>{}).graph.vertex_count() == 0);
    CHECK(induced_subgraph(complete_graph(4), std::vector<Vertex>{3, 0, 2}).graph == complete_graph(3));
    CHECK_THROWS_AS(induced_subgraph(p4, std::vector<Vertex>{4}), InputError);

    std::vector<Vertex> all{0, 1, 2, 3};
    CHECK(induced_subgraph(p4, all).graph == p4);
}

TEST_CASE("connected components") {
    CHECK(connected_components(complete_graph(2)).count == 1);
    std::vector<Edge> two{{0, 1}, {2, 3}};
    auto lab = connected_components(Graph(4, two));
    CHECK(lab.count == 2);
    CHECK(lab.label[0] == lab.label[1]);
    CHECK(lab.label[0] != lab.label[2]);
    CHECK(connected_components(Graph(3)).count == 3);

    std::mt19937 rng(7);
    for (int round = 0; round < 100; ++round) {
        Graph g = oracle::random_graph(1 + round % 10, 0.25, rng);
        auto nb = oracle::neighbour_masks(g);
        auto cc = connected_components(g);
        CHECK(cc.count == oracle::components_of(nb, (1u << g.vertex_count()) - 1));
    }
}

TEST_CASE("matching verification reasons") {
    Graph p5 = path_graph(5);
    Verdict v = verify_matching(p5, Matching({{0, 1}, {3, 4}}), 2, 2);
    CHECK(v.ok());
    CHECK(v.components == 2);

    Graph p4 = path_graph(4);
    v = verify_matching(p4, Matching({{0, 1}, {2, 3}}), 2, 2);
    CHECK(v.kind == Verdict::Kind::too_few_components);
    CHECK(v.components == 1);

    CHECK(verify_matching(p4, Matching(), 0, 0).ok());
    CHECK(verify_matching(p4, Matching({{0, 1}}), 2, 1).kind == Verdict::Kind::too_few_edges);
    CHECK(verify_matching(p4, Matching({{0, 2}}), 1, 1).kind == Verdict::Kind::not_a_matching);
    CHECK(verify_matching(p4, Matching({{0, 1}, {1, 2}}), 1, 1).kind == Verdict::Kind::not_a_matching);
    CHECK(to_string(Verdict::Kind::too_few_components) == "too-few-components");
}

TEST_CASE("verified component counts agree with the induced subgraph") {
    std::mt19937 rng(11);
    for (int round = 0; round < 200; ++round) {
        Graph g = oracle::random_graph(8, 0.35, rng);
        std::vector<Edge> chosen;
        std::vector<char> used(8, 0);
        for (const Edge& e : g.edges())
            if (!used[e.u] && !used[e.v] && rng() % 2) {
                used[e.u] = used[e.v] = 1;
                chosen.push_back(e);
            }
        Matching m(chosen);
        Verdict v = verify_matching(g, m, 0, 0);
        REQUIRE(v.ok());
        auto sat = m.saturated();
        CHECK(v.components == connected_components(induced_subgraph(g, sat).graph).count);
        CHECK(v.components == matching_components(g, m));
    }
}

TEST_CASE("diameter") {
    CHECK(diameter(complete_graph(5)) == 1);
    CHECK(diameter(path_graph(4)) == 3);
    std::vector<Edge> two{{0, 1}, {2, 3}};
    CHECK_FALSE(diameter(Graph(4, two)).has_value());
    CHECK(diameter(petersen_graph()) == 2);
}

TEST_CASE("bipartiteness") {
    auto c4 = is_bipartite(cycle_graph(4));
    REQUIRE(c4);
    CHECK((*c4)[0] == (*c4)[2]);
    CHECK((*c4)[1] == (*c4)[3]);
    CHECK((*c4)[0] != (*c4)[1]);
    CHECK_FALSE(is_bipartite(complete_graph(3)));

    std::mt19937 rng(3);
    for (int round = 0; round < 300; ++round) {
        Graph g = oracle::random_graph(1 + round % 8, 0.3, rng);
        auto colour = is_bipartite(g);
        CHECK(colour.has_value() == two_colourable_by_search(g));
        if (colour)
            for (const Edge& e : g.edges())
                CHECK((*colour)[e.u] != (*colour)[e.v]);
    }
}

TEST_CASE("chordality") {
    CHECK_FALSE(is_chordal(cycle_graph(4)));
    std::vector<Edge> tree{{0, 1}, {0, 2}, {2, 3}, {2, 4}, {4, 5}};
    Graph t(6, tree);
    auto peo = is_chordal(t);
    REQUIRE(peo);
    CHECK(is_perfect_elimination_order(t, *peo));

    std::mt19937 rng(5);
    for (int round = 0; round < 300; ++round) {
        Graph g = oracle::random_graph(1 + round % 8, 0.5, rng);
        auto order = is_chordal(g);
        CHECK(order.has_value() == chordal_by_search(g));
        if (order)
            CHECK(is_perfect_elimination_order(g, *order));
    }
}
