#include <doctest.h>

#include <cmath>

#include "subvc/estimator.hpp"
#include "subvc/generators.hpp"
#include "subvc/oracles.hpp"
#include "subvc/rng.hpp"
#include "subvc/transforms.hpp"
#include "subvc/verify.hpp"

using namespace subvc;

TEST_CASE("bounded-degree shadow layout") {
    MultiGraph g = gen_regular(6, 4, 1, true);
    QueryStats stats;
    CountingGraph base(g, stats);
    VirtualGraph vg = VirtualGraph::bounded_degree(base, 4, 0.5);

    CHECK(vg.fan() == 2);  // floor(0.5 * 4)
    CHECK(vg.loops() == 32);
    CHECK(vg.vertex_count() == 12);
    for (Vertex v = 0; v < 6; ++v) {
        CHECK(vg.degree(v) == g.degree(v) + 2);
        CHECK(vg.degree(static_cast<Vertex>(6 + v)) == 2 + 32);
    }

    auto diff = verify::diff_against(vg, verify::materialize_bounded_degree(g, 4, 0.5));
    CHECK_FALSE(diff.has_value());

    CHECK_THROWS_AS(VirtualGraph::bounded_degree(base, 4, 1.5), input_error);
    CHECK_THROWS_AS(VirtualGraph::bounded_degree(base, 1, 0.5), input_error);
}

TEST_CASE("bounded-degree wrapper answers cost at most two underlying queries") {
    MultiGraph g = gen_random_multigraph(8, 14, 3);
    QueryStats stats;
    CountingGraph base(g, stats);
    VirtualGraph vg = VirtualGraph::bounded_degree(base, std::max<std::size_t>(g.max_degree(), 3),
                                                   0.9);
    for (Vertex v = 0; v < vg.vertex_count(); ++v) {
        std::uint64_t before = stats.total();
        const std::size_t d = vg.degree(v);
        CHECK(stats.total() - before <= 1);
        for (std::size_t i = 1; i <= d; ++i) {
            before = stats.total();
            vg.neighbor(v, i);
            CHECK(stats.total() - before <= 2);
        }
    }
}

TEST_CASE("bounded-average shadow layout") {
    // all degrees small: one group per vertex, used ids exactly 3n
    GenSpec spec;
    spec.family = "cycle";
    spec.n = 8;
    MultiGraph cyc = generate(spec);
    QueryStats stats;
    CountingGraph base(cyc, stats);
    VirtualGraph vg = VirtualGraph::bounded_average(base, 2, 0.5);
    std::size_t used = 0;
    for (Vertex v = 0; v < vg.vertex_count(); ++v) used += vg.degree(v) > 0 ? 1 : 0;
    CHECK(used == 3 * 8);

    // degree-0 vertex keeps only the shadow attachment
    MultiGraph lonely(3, {{0, 1}});
    QueryStats st2;
    CountingGraph b2(lonely, st2);
    VirtualGraph vg2 = VirtualGraph::bounded_average(b2, 1, 0.5);
    CHECK(vg2.degree(2) == 1);                                    // one edge to its shadow
    CHECK(vg2.degree(static_cast<Vertex>(3 + 2)) == 1 + vg2.loops());
    CHECK(vg2.degree(static_cast<Vertex>(2 * 3 + 2 * vg2.group_stride())) == 0);  // no groups

    auto diff = verify::diff_against(vg2, verify::materialize_bounded_average(lonely, 1, 0.5));
    CHECK_FALSE(diff.has_value());
}

TEST_CASE("bounded-average redirects hub edges to group vertices") {
    std::vector<Edge> edges;
    for (Vertex i = 1; i < 10; ++i) edges.push_back({0, i});
    edges.push_back({1, 2});
    edges.push_back({3, 4});
    MultiGraph g(10, std::move(edges));
    QueryStats stats;
    CountingGraph base(g, stats);
    // dbar = 1, eps = 0.9: tau = 8.88..., the hub (degree 9) lands in L.
    VirtualGraph vg = VirtualGraph::bounded_average(base, 1, 0.9);
    CHECK(vg.degree(0) == 0);
    CHECK(vg.degree(static_cast<Vertex>(10 + 0)) == 0);
    // leaf 5: one hub edge redirected to its group vertex, plus the shadow edge
    CHECK(vg.degree(5) == 2);
    auto nb = vg.neighbor(5, 1);
    CHECK(nb.other >= 2 * 10);  // a group vertex
    auto back = vg.neighbor(nb.other, nb.reciprocal);
    CHECK(back.other == 5);
    CHECK(back.reciprocal == 1);

    auto diff = verify::diff_against(vg, verify::materialize_bounded_average(g, 1, 0.9));
    CHECK_FALSE(diff.has_value());
}

TEST_CASE("bounded-average wrapper answers cost at most two underlying queries") {
    MultiGraph g = gen_random_multigraph(12, 30, 5);
    QueryStats stats;
    CountingGraph base(g, stats);
    VirtualGraph vg = VirtualGraph::bounded_average(base, 2, 0.5);
    for (Vertex v = 0; v < vg.vertex_count(); ++v) {
        std::uint64_t before = stats.total();
        const std::size_t d = vg.degree(v);  // warms the underlying degree
        CHECK(stats.total() - before <= 1);
        for (std::size_t i = 1; i <= d; ++i) {
            before = stats.total();
            vg.neighbor(v, i);
            CHECK(stats.total() - before <= 2);
        }
    }
}

TEST_CASE("high degree shortcut") {
    GenSpec spec;
    spec.family = "star";
    spec.n = 41;  // 40 leaves
    MultiGraph star = generate(spec);
    QueryStats stats;
    CountingGraph base(star, stats);
    // dbar = ceil(80/41) = 2, eps = 0.5 -> tau = 32; center degree 40 > 32.
    CHECK(high_degree_shortcut(base, 2, 0.5, 0).value_or(false));
    CHECK_FALSE(high_degree_shortcut(base, 2, 0.5, 1).has_value());

    MultiGraph lone(1, {});
    QueryStats st;
    CountingGraph b(lone, st);
    CHECK_FALSE(high_degree_shortcut(b, 2, 0.5, 0).has_value());
}

TEST_CASE("dense adapter layout and query budget") {
    MultiGraph g = gen_gnp(8, 0.5, 4);
    g.build_pair_index();
    QueryStats stats;
    CountingGraph base(g, stats);
    VirtualGraph vg = VirtualGraph::dense(base, 0.5);
    for (Vertex v = 0; v < 8; ++v) CHECK(vg.degree(v) == 8);

    for (Vertex v = 0; v < vg.vertex_count(); ++v) {
        const std::size_t d = vg.degree(v);
        for (std::size_t i = 1; i <= d; i += 7) {
            const std::uint64_t before = stats.total();
            vg.neighbor(v, i);
            CHECK(stats.total() - before <= 1);
            CHECK(stats.degree_queries == 0);
            CHECK(stats.neighbor_queries == 0);
        }
    }

    auto diff = verify::diff_against(vg, verify::materialize_dense(g, 0.5));
    CHECK_FALSE(diff.has_value());

    MultiGraph no_index(3, {{0, 1}});
    QueryStats st2;
    CountingGraph b2(no_index, st2);
    CHECK_THROWS_AS(VirtualGraph::dense(b2, 0.5), state_error);
}

TEST_CASE("dense adapter on complete graphs") {
    GenSpec spec;
    spec.family = "complete";
    spec.n = 5;
    MultiGraph k5 = generate(spec);
    k5.build_pair_index();
    QueryStats stats;
    CountingGraph base(k5, stats);
    VirtualGraph vg = VirtualGraph::dense(base, 0.5);
    // every slot except the self candidate resolves to a real edge
    for (Vertex v = 0; v < 5; ++v)
        for (std::size_t j = 1; j <= 5; ++j) {
            const auto nb = vg.neighbor(v, j);
            if (j == static_cast<std::size_t>(v) + 1)
                CHECK(nb.other == 5 + v);
            else
                CHECK(nb.other == static_cast<Vertex>(j - 1));
        }

    // with loops added, every slot is real
    std::vector<Edge> edges = k5.edges();
    for (Vertex v = 0; v < 5; ++v) edges.push_back({v, v});
    MultiGraph looped(5, std::move(edges));
    looped.build_pair_index();
    QueryStats st2;
    CountingGraph b2(looped, st2);
    VirtualGraph vg2 = VirtualGraph::dense(b2, 0.5);
    for (Vertex v = 0; v < 5; ++v)
        for (std::size_t j = 1; j <= 5; ++j) CHECK(vg2.neighbor(v, j).other < 5);
}

TEST_CASE("shadow race frequency stays near its analytic bound") {
    const std::size_t n = 200;
    const double eps = 0.2;
    MultiGraph g = gen_regular(n, 10, 2, true);
    const double fan = 2.0, loops = 80.0;
    const double p = fan / (fan + loops);  // per-vertex analytic win probability

    std::size_t wins = 0, total = 0;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        ProbeSession session(g, TransformMode::max_degree, eps, seed, 1ULL << 20);
        auto& ctx = session.context();
        for (Vertex v = 0; v < n; ++v) {
            ctx.engine().materialize(static_cast<Vertex>(n + v));
            wins += ctx.matched(v, static_cast<Vertex>(n + v)) ? 1 : 0;
            ++total;
        }
    }
    const double frac = static_cast<double>(wins) / static_cast<double>(total);
    const double se = std::sqrt(p * (1.0 - p) / static_cast<double>(total));
    CHECK(frac <= p + 3.0 * se);
    CHECK(frac <= eps / 8.0);
}

TEST_CASE("dense race bound analog") {
    const std::size_t n = 60;
    MultiGraph g = gen_gnp(n, 0.5, 9);
    g.build_pair_index();
    const double eps = 0.25;
    const double p = 1.0 / (1.0 + std::ceil(8.0 / eps));  // n/(n + 32n)

    std::size_t wins = 0, total = 0;
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
        ProbeSession session(g, TransformMode::dense, eps, seed, 1ULL << 20);
        auto& ctx = session.context();
        for (Vertex v = 0; v < n; ++v) {
            ctx.engine().materialize(static_cast<Vertex>(n + v));
            wins += ctx.matched(v, static_cast<Vertex>(n + v)) ? 1 : 0;
            ++total;
        }
    }
    const double frac = static_cast<double>(wins) / static_cast<double>(total);
    const double se = std::sqrt(p * (1.0 - p) / static_cast<double>(total));
    CHECK(frac <= p + 3.0 * se);
    CHECK(frac <= eps / 8.0 + 3.0 * se);
}
