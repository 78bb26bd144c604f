#include <doctest.h>

#include <algorithm>
#include <map>
#include <numeric>

#include "subvc/generators.hpp"
#include "subvc/oracles.hpp"
#include "subvc/rng.hpp"
#include "subvc/verify.hpp"

using namespace subvc;

namespace {

constexpr std::uint64_t kQ = 1ULL << 40;

OracleContext make_context(const MultiGraph& g, QueryStats& stats, const CountingGraph& view,
                           std::uint64_t seed) {
    (void)g;
    return OracleContext(view, std::max<std::size_t>(1, view.graph().max_degree()), seed, kQ);
}

}  // namespace

TEST_CASE("reference oracle on fixed rankings") {
    MultiGraph single(2, {{0, 1}});
    ReferenceOracle r1(single, {0});
    CHECK(r1.matched(0));
    CHECK(r1.covered(0));
    CHECK(r1.covered(1));

    MultiGraph path(3, {{0, 1}, {1, 2}});
    ReferenceOracle r2(path, {0, 1});
    CHECK(r2.matched(0));
    CHECK_FALSE(r2.matched(1));

    MultiGraph k3(3, {{0, 1}, {1, 2}, {0, 2}});
    ReferenceOracle r3(k3, {0, 1, 2});
    CHECK(r3.matched(0));
    CHECK_FALSE(r3.matched(1));
    CHECK_FALSE(r3.matched(2));

    MultiGraph iso(1, {});
    ReferenceOracle r4(iso, {});
    CHECK_FALSE(r4.covered(0));

    GenSpec spec;
    spec.family = "star";
    spec.n = 6;
    MultiGraph star = generate(spec);
    ReferenceOracle r5(star, {4, 0, 1, 2, 3});
    CHECK(r5.covered(0));
    std::size_t leaves = 0;
    for (Vertex v = 1; v < 6; ++v) leaves += r5.covered(v) ? 1 : 0;
    CHECK(leaves == 1);

    CHECK_THROWS_AS(ReferenceOracle(path, {0, 0}), input_error);
    CHECK_THROWS_AS(r2.matched(9), input_error);
}

TEST_CASE("lazy oracle basics") {
    QueryStats stats;

    MultiGraph loop(1, {{0, 0}});
    CountingGraph vloop(loop, stats);
    OracleContext ctx = make_context(loop, stats, vloop, 3);
    CHECK(ctx.covered(0));
    CHECK(ctx.last_probe_calls() == 1);

    MultiGraph single(2, {{0, 1}});
    CountingGraph vs(single, stats);
    OracleContext ctx2 = make_context(single, stats, vs, 5);
    CHECK(ctx2.covered(0));
    CHECK(ctx2.last_probe_calls() == 1);
    CHECK(ctx2.covered(1));

    MultiGraph iso(1, {});
    CountingGraph vi(iso, stats);
    OracleContext ctx3 = make_context(iso, stats, vi, 7);
    CHECK_FALSE(ctx3.covered(0));
    CHECK(ctx3.last_probe_calls() == 0);
}

TEST_CASE("matching oracle needs a revealed rank") {
    QueryStats stats;
    MultiGraph g(2, {{0, 1}});
    CountingGraph view(g, stats);
    OracleContext ctx = make_context(g, stats, view, 1);
    CHECK_THROWS_AS(ctx.matched(0, 1), state_error);
    ctx.engine().lowest(0, 1);
    CHECK(ctx.matched(0, 1));
}

TEST_CASE("lazy and reference answers agree on small multigraphs") {
    std::size_t cases = 0;
    verify::for_each_small_multigraph(3, 4, [&](const MultiGraph& g) {
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            ++cases;
            auto bad = verify::equivalence_counterexample(g, seed);
            if (bad) CAPTURE(g.serialize());
            REQUIRE_FALSE(bad.has_value());
        }
    });
    CHECK(cases > 1000);
}

TEST_CASE("memoized answers form a maximal matching") {
    Prng prng(5);
    for (int trial = 0; trial < 20; ++trial) {
        MultiGraph g = gen_random_multigraph(2 + prng.below(8), 1 + prng.below(16), prng.next());
        QueryStats stats;
        CountingGraph view(g, stats);
        OracleContext ctx = make_context(g, stats, view, prng.next());
        std::vector<char> cover(g.vertex_count());
        for (Vertex v = 0; v < g.vertex_count(); ++v) cover[v] = ctx.covered(v) ? 1 : 0;

        // matching: no two positive pairs share an endpoint
        std::vector<char> used(g.vertex_count(), 0);
        for (const auto& [key, ans] : ctx.matching_memo()) {
            if (!ans) continue;
            const Vertex u = static_cast<Vertex>(key >> 32);
            const Vertex v = static_cast<Vertex>(key & 0xFFFFFFFFu);
            CHECK_FALSE(used[u]);
            used[u] = 1;
            if (v != u) {
                CHECK_FALSE(used[v]);
                used[v] = 1;
            }
        }
        // maximality: every edge has a covered endpoint
        for (const Edge& e : g.edges()) CHECK((cover[e.u] || cover[e.v]));
    }
}

TEST_CASE("cover size is sandwiched by the optimum") {
    Prng prng(21);
    for (int trial = 0; trial < 40; ++trial) {
        MultiGraph g = gen_random_multigraph(2 + prng.below(15), prng.below(24), prng.next());
        QueryStats stats;
        CountingGraph view(g, stats);
        OracleContext ctx = make_context(g, stats, view, prng.next());
        std::size_t cover = 0;
        for (Vertex v = 0; v < g.vertex_count(); ++v) cover += ctx.covered(v) ? 1 : 0;
        const std::size_t opt = brute_force_min_vc(g);
        CHECK(opt <= cover);
        CHECK(cover <= 2 * opt);
    }
}

TEST_CASE("derived ranking is a bijection consistent with revealed order") {
    MultiGraph g(2, {{0, 1}});
    QueryStats stats;
    CountingGraph view(g, stats);
    OracleContext ctx = make_context(g, stats, view, 8);
    CHECK_THROWS_AS(derive_ranking(ctx.engine(), g), state_error);
    ctx.engine().materialize(0);
    ctx.engine().materialize(1);
    auto ranking = derive_ranking(ctx.engine(), g);
    REQUIRE(ranking.size() == 1);
    CHECK(ranking[0] == 0);

    Prng prng(123);
    for (int trial = 0; trial < 15; ++trial) {
        MultiGraph h = gen_random_multigraph(2 + prng.below(7), 1 + prng.below(14), prng.next());
        QueryStats st;
        CountingGraph hv(h, st);
        OracleContext hc = make_context(h, st, hv, prng.next());
        for (Vertex v = 0; v < h.vertex_count(); ++v) hc.engine().materialize(v);
        auto pi = derive_ranking(hc.engine(), h);
        std::vector<std::uint32_t> sorted = pi;
        std::sort(sorted.begin(), sorted.end());
        for (std::size_t i = 0; i < sorted.size(); ++i) REQUIRE(sorted[i] == i);

        // group minima appear in ascending numeric order of their ranks
        std::vector<std::pair<std::uint32_t, double>> mins;
        std::unordered_set<std::uint64_t> seen;
        for (const Edge& e : h.edges()) {
            if (!seen.insert(pack_pair(e.u, e.v)).second) continue;
            auto r = hc.engine().assigned_value(e.u, e.v);
            REQUIRE(r.has_value());
            std::uint32_t best = UINT32_MAX;
            for (std::size_t ei = 0; ei < h.edge_count(); ++ei) {
                const Edge& o = h.edges()[ei];
                if (pack_pair(o.u, o.v) == pack_pair(e.u, e.v)) best = std::min(best, pi[ei]);
            }
            mins.push_back({best, hc.engine().numeric(*r)});
        }
        std::sort(mins.begin(), mins.end());
        for (std::size_t i = 1; i < mins.size(); ++i) CHECK(mins[i - 1].second <= mins[i].second);
    }
}

TEST_CASE("lazy ranks induce the uniform-ranking cover distribution") {
    // Exact distribution of the cover set over all m! rankings, against the
    // sampled distribution of the lazy path. Exercises uniformity of the
    // interval process, endpoint consistency, and the parallel/loop collapse
    // in one observable.
    struct Case {
        const char* name;
        MultiGraph g;
    };
    std::vector<Case> cases;
    cases.push_back({"triangle", MultiGraph(3, {{0, 1}, {1, 2}, {0, 2}})});
    cases.push_back({"path", MultiGraph(4, {{0, 1}, {1, 2}, {2, 3}})});
    cases.push_back({"parallel+loop", MultiGraph(3, {{0, 1}, {0, 1}, {1, 2}, {2, 2}})});
    cases.push_back({"star+loop", MultiGraph(4, {{0, 1}, {0, 2}, {0, 3}, {0, 0}})});

    for (auto& c : cases) {
        CAPTURE(c.name);
        const std::size_t m = c.g.edge_count();
        std::vector<std::uint32_t> ranking(m);
        std::iota(ranking.begin(), ranking.end(), 0);
        std::map<std::uint32_t, double> exact;
        std::size_t perms = 0;
        std::sort(ranking.begin(), ranking.end());
        do {
            ReferenceOracle ref(c.g, ranking);
            std::uint32_t mask = 0;
            for (Vertex v = 0; v < c.g.vertex_count(); ++v)
                if (ref.covered(v)) mask |= 1u << v;
            exact[mask] += 1.0;
            ++perms;
        } while (std::next_permutation(ranking.begin(), ranking.end()));
        for (auto& [mask, cnt] : exact) cnt /= static_cast<double>(perms);

        const std::size_t draws = 30000;
        std::map<std::uint32_t, std::size_t> freq;
        for (std::uint64_t seed = 1; seed <= draws; ++seed) {
            QueryStats stats;
            CountingGraph view(c.g, stats);
            OracleContext ctx(view, std::max<std::size_t>(1, c.g.max_degree()), seed, kQ);
            std::uint32_t mask = 0;
            for (Vertex v = 0; v < c.g.vertex_count(); ++v)
                if (ctx.covered(v)) mask |= 1u << v;
            ++freq[mask];
        }

        // every sampled mask must be feasible
        for (const auto& [mask, cnt] : freq) CHECK(exact.count(mask) == 1);

        double chi = 0;
        std::size_t bins = 0;
        for (const auto& [mask, p] : exact) {
            const double expect = p * draws;
            REQUIRE(expect >= 10.0);  // these graphs have no rare masks
            const double got = static_cast<double>(freq.count(mask) ? freq[mask] : 0);
            chi += (got - expect) * (got - expect) / expect;
            ++bins;
        }
        CHECK(chi < verify::chi2_crit_999(bins - 1));
    }
}

TEST_CASE("reveal order does not bias the cover distribution") {
    // Random lowest() warmups force different materialization interleavings;
    // the induced cover law must stay the uniform-ranking one.
    MultiGraph g(3, {{0, 1}, {0, 1}, {1, 2}, {2, 2}});
    const std::size_t m = g.edge_count();
    std::vector<std::uint32_t> ranking(m);
    std::iota(ranking.begin(), ranking.end(), 0);
    std::map<std::uint32_t, double> exact;
    std::size_t perms = 0;
    do {
        ReferenceOracle ref(g, ranking);
        std::uint32_t mask = 0;
        for (Vertex v = 0; v < 3; ++v)
            if (ref.covered(v)) mask |= 1u << v;
        exact[mask] += 1.0;
        ++perms;
    } while (std::next_permutation(ranking.begin(), ranking.end()));
    for (auto& [mask, cnt] : exact) cnt /= static_cast<double>(perms);

    const std::size_t draws = 30000;
    std::map<std::uint32_t, std::size_t> freq;
    for (std::uint64_t seed = 1; seed <= draws; ++seed) {
        QueryStats stats;
        CountingGraph view(g, stats);
        OracleContext ctx(view, g.max_degree(), seed, kQ);
        Prng warm(RngStream::derive(seed, 0xCAFE));
        for (int i = 0; i < 5; ++i)
            ctx.engine().lowest(static_cast<Vertex>(warm.below(3)), 1 + warm.below(3));
        std::uint32_t mask = 0;
        for (Vertex v = 0; v < 3; ++v)
            if (ctx.covered(v)) mask |= 1u << v;
        ++freq[mask];
    }

    double chi = 0;
    std::size_t bins = 0;
    for (const auto& [mask, p] : exact) {
        const double expect = p * draws;
        REQUIRE(expect >= 10.0);
        const double got = static_cast<double>(freq.count(mask) ? freq[mask] : 0);
        chi += (got - expect) * (got - expect) / expect;
        ++bins;
    }
    CHECK(chi < verify::chi2_crit_999(bins - 1));
}

TEST_CASE("probe call counts stay modest on a regular graph") {
    MultiGraph g = gen_regular(1000, 4, 3, true);
    QueryStats stats;
    CountingGraph view(g, stats);
    OracleContext ctx(view, 4, 11, kQ);
    Prng prng(2);
    for (int i = 0; i < 500; ++i) ctx.covered(static_cast<Vertex>(prng.below(1000)));
    CHECK(ctx.mean_probe_calls() < 200.0);
    CHECK(ctx.probes() == 500);
}
