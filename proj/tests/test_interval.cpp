#include "doctest.h"

#include "dmatch/engines.hpp"
#include "dmatch/errors.hpp"
#include "dmatch/interval.hpp"
#include "support.hpp"

using namespace dmatch;

namespace {

using Cliques = std::vector<std::vector<Vertex>>;

IntervalModel model_of(std::vector<std::pair<int, int>> iv) { return IntervalModel{std::move(iv)}; }

} // namespace

TEST_CASE("clique paths of small models") {
    auto p4 = model_of({{1, 2}, {2, 3}, {3, 4}, {4, 5}});
    auto path = clique_path(p4);
    CHECK(path.cliques == Cliques{{0, 1}, {1, 2}, {2, 3}});
    CHECK(path.separators == Cliques{{}, {1}, {2}, {}});
    validate_clique_path(interval_graph(p4), path);

    CHECK(clique_path(model_of({{0, 5}, {1, 6}, {2, 7}})).cliques == Cliques{{0, 1, 2}});

    auto two = clique_path(model_of({{0, 1}, {1, 2}, {5, 6}, {6, 7}}));
    CHECK(two.cliques == Cliques{{0, 1}, {2, 3}});
    CHECK(two.separators[1].empty());
}

TEST_CASE("interval model consistency") {
    CHECK_THROWS_AS(interval_graph(model_of({{3, 1}})), InputError);
    CHECK_THROWS_AS(check_interval_model(path_graph(3), model_of({{0, 1}, {1, 2}, {5, 6}})), InputError);
    check_interval_model(path_graph(3), model_of({{0, 1}, {1, 2}, {2, 3}}));

    Graph p4 = path_graph(4);
    CliquePath bad;
    bad.cliques = {{0, 1}, {2, 3}, {1, 2}};
    bad.separators = {{}, {}, {}, {}};
    CHECK_THROWS_AS(validate_clique_path(p4, bad), InputError);
    CHECK_THROWS_AS(interval_solve(p4, bad, 1), InputError);
}

TEST_CASE("interval solver examples") {
    auto p5 = model_of({{1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}});
    Graph g = interval_graph(p5);
    CHECK(interval_solve(g, clique_path(p5), 2).value == 2);

    auto two_triangles = model_of({{0, 2}, {1, 3}, {2, 4}, {10, 12}, {11, 13}, {12, 14}});
    Graph t = interval_graph(two_triangles);
    auto res = interval_solve(t, clique_path(two_triangles), 2);
    CHECK(res.value == 2);
    CHECK(res.value == oracle::disconnected_matching_number(t, 2));

    auto k6 = model_of({{0, 9}, {1, 9}, {2, 9}, {3, 9}, {4, 9}, {5, 9}});
    CHECK_FALSE(interval_solve(interval_graph(k6), clique_path(k6), 2).feasible());
    CHECK(interval_solve(interval_graph(k6), clique_path(k6), 1).value == 3);
}

TEST_CASE("interval solver matches the oracle on random models") {
    std::mt19937 rng(31);
    for (int round = 0; round < 300; ++round) {
        auto model = model_of(oracle::random_intervals(1 + round % 12, 20, rng));
        Graph g = interval_graph(model);
        auto path = clique_path(model);
        validate_clique_path(g, path);
        const int beta_star = brute_force_induced(g).cardinality;
        for (int c = 1; c <= beta_star + 1; ++c) {
            CAPTURE(round);
            CAPTURE(c);
            auto res = interval_solve(g, path, c);
            REQUIRE(res.value == oracle::disconnected_matching_number(g, c));
            if (res.feasible())
                CHECK(verify_matching(g, *res.witness, *res.value, c).ok());
        }
    }
}

TEST_CASE("interval table is monotone in the component count") {
    std::mt19937 rng(37);
    for (int round = 0; round < 100; ++round) {
        auto model = model_of(oracle::random_intervals(3 + round % 10, 16, rng));
        Graph g = interval_graph(model);
        auto path = clique_path(model);
        IntervalTable table(g, path, 4);
        const int p = table.cliques();
        for (int i = 0; i < p; ++i)
            for (int j = i; j < p; ++j)
                for (int c = 1; c < 4; ++c) {
                    auto hi = table.value(i, j, c + 1);
                    if (hi) {
                        auto lo = table.value(i, j, c);
                        REQUIRE(lo);
                        CHECK(*lo >= *hi);
                    }
                }
        auto full = table.value(0, p - 1, 1);
        CHECK(full.value_or(0) == maximum_matching(g).cardinality);
    }
}
