#include "succweave/structure.hpp"

#include "succweave/errors.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

#include <doctest.h>

#include <random>

using namespace succweave;

TEST_CASE("signature validation") {
    CHECK_THROWS_AS(Signature({{"S", 2}}), InputError);
    CHECK_THROWS_AS(Signature({{"E", 2}, {"E", 2}}), InputError);
    CHECK_THROWS_AS(Signature({{"R", 0}}), InputError);
    Signature sig({{"E", 2}, {"R", 3}});
    CHECK(sig.index_of("R") == 1);
    CHECK_THROWS_AS(sig.index_of("Q"), InputError);
}

TEST_CASE("structure validation") {
    CHECK_THROWS_AS(Structure::graph(2, {{0, 5}}), InputError);
    CHECK_THROWS_AS(Structure(Signature({{"E", 2}}), 3, {{{0, 1, 2}}}), InputError);
    // duplicate tuples collapse to a set
    Structure s = Structure::graph(2, {{0, 1}, {0, 1}});
    CHECK(s.table(0).size() == 1);
}

TEST_CASE("gaifman_neighbors") {
    Structure e = Structure::graph(2, {{0, 1}});
    CHECK(gaifman_neighbors(e, 0, false) == std::vector<Element>{1});

    Structure r3(Signature({{"R", 3}}), 3, {{{0, 1, 2}}});
    CHECK(gaifman_neighbors(r3, 0, false) == std::vector<Element>{1, 2});

    Structure loop = Structure::graph(1, {{0, 0}});
    CHECK(gaifman_neighbors(loop, 0, false).empty());

    CHECK_THROWS_AS(gaifman_neighbors(e, 7, false), InputError);
}

TEST_CASE("gaifman_distance") {
    Structure tri = fixtures::directed_cycle(3);
    CHECK(gaifman_distance(tri, 0, 2, false) == 1);
    CHECK(gaifman_distance(tri, 1, 1, false) == 0);

    Structure two = Structure::graph(4, {{0, 1}, {2, 3}});
    CHECK(gaifman_distance(two, 0, 3, false) == kUnreachable);
    CHECK_THROWS_AS(gaifman_distance(two, 0, 9, false), InputError);
}

TEST_CASE("distance includes successor edges only on request") {
    Structure s = Structure::graph(4, {{0, 1}}).with_succ({{1, 2}});
    CHECK(gaifman_distance(s, 0, 2, false) == kUnreachable);
    CHECK(gaifman_distance(s, 0, 2, true) == 2);
}

TEST_CASE("ball") {
    Structure tri = fixtures::directed_cycle(3);
    CHECK(ball(tri, 1, 0, false) == std::vector<Element>{1});
    CHECK(ball(tri, 0, 1, false) == std::vector<Element>{0, 1, 2});

    Structure sq = fixtures::directed_cycle(4);
    CHECK(ball(sq, 0, 1, false) == std::vector<Element>{0, 1, 3});
}

TEST_CASE("neighborhood") {
    Structure loop = Structure::graph(1, {{0, 0}});
    PointedStructure nb0 = neighborhood(loop, 0, 0, false);
    CHECK(nb0.structure.size() == 1);
    CHECK(nb0.structure.table(0) == std::vector<Tuple>{{0, 0}}); // self-tuples preserved

    Structure tri = fixtures::directed_cycle(3);
    PointedStructure whole = neighborhood(tri, 0, 1, false);
    CHECK(whole.structure.size() == 3);
    CHECK(whole.structure.table(0).size() == 3);
    CHECK(whole.center == 0);

    Structure sq = fixtures::directed_cycle(4);
    PointedStructure path = neighborhood(sq, 0, 1, false);
    CHECK(path.structure.size() == 3);
    // renumbered by (distance, index): 0 -> 0, 1 -> 1, 3 -> 2
    CHECK(path.structure.table(0) == std::vector<Tuple>{{0, 1}, {2, 0}});
}

TEST_CASE("structure_degree") {
    CHECK(structure_degree(fixtures::tri(4), false) == 2);
    Structure r3(Signature({{"R", 3}}), 3, {{{0, 1, 2}}});
    CHECK(structure_degree(r3, false) == 2);
    CHECK(structure_degree(Structure::graph(0, {}), false) == 0);
}

TEST_CASE("n_bound closed forms") {
    CHECK(n_bound(2, 3) == 7);
    CHECK(n_bound(3, 2) == 10);
    CHECK(n_bound(4, 1) == 5);
    CHECK(n_bound(4, 2) == 17);
    CHECK(n_bound(4, 3) == 53);
    for (unsigned d : {0u, 1u, 2u, 3u, 9u}) CHECK(n_bound(d, 0) == 1);
    CHECK(n_bound(0, 5) == 1);
    CHECK(n_bound(1, 5) == 2);
}

TEST_CASE("distance is a metric (vs Floyd-Warshall oracle)") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 60; ++trial) {
        std::size_t n = 2 + rng() % 9;
        Structure s = fixtures::random_graph(rng, n, 0.25);
        auto oracle = oracles::all_distances(s, false);
        for (Element x = 0; x < n; ++x)
            for (Element y = 0; y < n; ++y) {
                CHECK(gaifman_distance(s, x, y, false) == oracle[x][y]);
                CHECK(oracle[x][y] == oracle[y][x]);
                for (Element z = 0; z < n; ++z) {
                    if (oracle[x][z] == kUnreachable || oracle[z][y] == kUnreachable) continue;
                    CHECK(oracle[x][y] <= oracle[x][z] + oracle[z][y]);
                }
            }
    }
}

TEST_CASE("ball size bounded by n_bound") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 120; ++trial) {
        std::size_t n = 1 + rng() % 10;
        Structure s = trial % 3 == 0 ? fixtures::random_two_relation(rng, n, 0.2)
                                     : fixtures::random_graph(rng, n, 0.2);
        unsigned d = structure_degree(s, false);
        for (unsigned r = 0; r <= 3; ++r)
            for (Element x = 0; x < n; ++x)
                CHECK(ball(s, x, r, false).size() <= n_bound(d, r));
    }
}

TEST_CASE("neighborhood restriction coherence") {
    std::mt19937_64 rng(13);
    int checked = 0;
    for (int trial = 0; trial < 200 && checked < 40; ++trial) {
        std::size_t n = 2 + rng() % 8;
        Structure s = fixtures::random_graph(rng, n, 0.3);
        Element x = static_cast<Element>(rng() % n);
        unsigned r = 1 + rng() % 2;
        PointedStructure big = neighborhood(s, x, r, false);
        if (big.structure.size() > 7) continue;
        PointedStructure restricted = neighborhood(big.structure, big.center, r - 1, false);
        PointedStructure direct = neighborhood(s, x, r - 1, false);
        CHECK(oracles::pointed_isomorphic(restricted, direct));
        ++checked;
    }
    CHECK(checked >= 20);
}
