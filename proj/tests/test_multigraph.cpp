#include <doctest.h>

#include <sstream>

#include "subvc/generators.hpp"
#include "subvc/multigraph.hpp"
#include "subvc/rng.hpp"

using namespace subvc;

TEST_CASE("parsing the edge-list format") {
    MultiGraph g = MultiGraph::parse("2 1\n0 1\n");
    CHECK(g.vertex_count() == 2);
    CHECK(g.edge_count() == 1);
    CHECK(g.degree(0) == 1);

    MultiGraph loops = MultiGraph::parse("1 2\n0 0\n0 0\n");
    CHECK(loops.degree(0) == 2);
    CHECK(loops.loop_count() == 2);

    MultiGraph empty = MultiGraph::parse("3 0\n");
    CHECK(empty.vertex_count() == 3);
    CHECK(empty.edge_count() == 0);
}

TEST_CASE("parse errors carry line numbers") {
    CHECK_THROWS_WITH_AS(MultiGraph::parse("2 1\nx y\n"), doctest::Contains("line 2"), parse_error);
    CHECK_THROWS_WITH_AS(MultiGraph::parse("2 1\n0 5\n"), doctest::Contains("line 2"), parse_error);
    CHECK_THROWS_AS(MultiGraph::parse("2 2\n0 1\n"), parse_error);   // short
    CHECK_THROWS_AS(MultiGraph::parse("2 1\n0 1\n0 1\n"), parse_error);  // trailing
    CHECK_THROWS_AS(MultiGraph::parse("nope\n"), parse_error);
}

TEST_CASE("degree query examples") {
    QueryStats stats;
    MultiGraph iso(1, {});
    CHECK(CountingGraph(iso, stats).degree(0) == 0);

    MultiGraph loop(1, {{0, 0}});
    CHECK(CountingGraph(loop, stats).degree(0) == 1);

    MultiGraph k3(3, {{0, 1}, {1, 2}, {0, 2}});
    CountingGraph q(k3, stats);
    CHECK(q.degree(0) == 2);
    CHECK(q.degree(1) == 2);
    CHECK_THROWS_AS(q.degree(3), input_error);
}

TEST_CASE("neighbor query examples") {
    QueryStats stats;
    MultiGraph e(2, {{0, 1}});
    CountingGraph qe(e, stats);
    auto nb = qe.neighbor(0, 1);
    CHECK(nb.other == 1);
    CHECK(nb.reciprocal == 1);
    CHECK(nb.edge == 0);

    MultiGraph loop(1, {{0, 0}});
    auto lb = CountingGraph(loop, stats).neighbor(0, 1);
    CHECK(lb.other == 0);
    CHECK(lb.reciprocal == 1);

    MultiGraph path(3, {{0, 1}, {1, 2}});
    auto pb = CountingGraph(path, stats).neighbor(1, 2);
    CHECK(pb.other == 2);
    CHECK(pb.reciprocal == 1);
    CHECK(pb.edge == 1);

    CHECK_THROWS_AS(qe.neighbor(0, 2), input_error);
    CHECK_THROWS_AS(qe.neighbor(0, 0), input_error);
}

TEST_CASE("pair query examples") {
    QueryStats stats;
    GenSpec spec;
    spec.family = "complete";
    spec.n = 4;
    MultiGraph k4 = generate(spec);
    k4.build_pair_index();
    CHECK(CountingGraph(k4, stats).pair(0, 3));

    MultiGraph empty(2, {});
    empty.build_pair_index();
    CHECK_FALSE(CountingGraph(empty, stats).pair(0, 1));

    MultiGraph loop(3, {{2, 2}});
    loop.build_pair_index();
    CountingGraph ql(loop, stats);
    CHECK(ql.pair(2, 2));
    CHECK_FALSE(ql.pair(0, 0));

    MultiGraph no_index(2, {{0, 1}});
    CHECK_THROWS_AS(CountingGraph(no_index, stats).pair(0, 1), state_error);
}

TEST_CASE("serialization round trip keeps the slot structure") {
    Prng prng(42);
    for (int i = 0; i < 30; ++i) {
        MultiGraph g = gen_random_multigraph(1 + prng.below(9), prng.below(18), prng.next());
        MultiGraph back = MultiGraph::parse(g.serialize());
        REQUIRE(back.vertex_count() == g.vertex_count());
        REQUIRE(back.edge_count() == g.edge_count());
        for (Vertex v = 0; v < g.vertex_count(); ++v) {
            REQUIRE(back.degree(v) == g.degree(v));
            for (std::size_t s = 1; s <= g.degree(v); ++s) {
                CHECK(back.slot(v, s).other == g.slot(v, s).other);
                CHECK(back.slot(v, s).reciprocal == g.slot(v, s).reciprocal);
                CHECK(back.slot(v, s).edge == g.slot(v, s).edge);
            }
        }
    }
}

TEST_CASE("reciprocity and degree-sum invariants") {
    Prng prng(7);
    for (int i = 0; i < 30; ++i) {
        MultiGraph g = gen_random_multigraph(1 + prng.below(10), prng.below(25), prng.next());
        std::size_t loops = g.loop_count();
        CHECK(g.slot_degree_sum() == 2 * (g.edge_count() - loops) + loops);
        for (Vertex v = 0; v < g.vertex_count(); ++v)
            for (std::size_t s = 1; s <= g.degree(v); ++s) {
                const auto& slot = g.slot(v, s);
                const auto& back = g.slot(slot.other, slot.reciprocal);
                CHECK(back.other == v);
                CHECK(back.edge == slot.edge);
                if (slot.other != v) CHECK(back.reciprocal == s);
            }
    }
}

TEST_CASE("shuffled slots stay reciprocal") {
    MultiGraph g = gen_random_multigraph(8, 20, 3);
    g.shuffle_slots(99);
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        for (std::size_t s = 1; s <= g.degree(v); ++s) {
            const auto& slot = g.slot(v, s);
            const auto& back = g.slot(slot.other, slot.reciprocal);
            CHECK(back.other == v);
            CHECK(back.edge == slot.edge);
        }
}

TEST_CASE("query counters track every invocation") {
    QueryStats stats;
    MultiGraph g(3, {{0, 1}, {1, 2}});
    g.build_pair_index();
    CountingGraph q(g, stats);
    q.degree(0);
    q.degree(1);
    q.neighbor(1, 1);
    q.neighbor(1, 2);
    q.neighbor(1, 2);
    q.pair(0, 2);
    CHECK(stats.degree_queries == 2);
    CHECK(stats.neighbor_queries == 3);
    CHECK(stats.pair_queries == 1);
    stats.reset();
    CHECK(stats.total() == 0);
}
