#include <algorithm>
#include <cmath>
#include <sstream>

#include "subvc/estimator.hpp"
#include "subvc/generators.hpp"
#include "subvc/oracles.hpp"
#include "subvc/rng.hpp"
#include "subvc/verify.hpp"

namespace subvc::verify {

namespace {

constexpr std::uint64_t kQuality = 1ULL << 40;

std::string describe_failure(const MultiGraph& g, std::uint64_t seed, const std::string& what) {
    // Minimize first; the shrunken instance is the useful artifact.
    MultiGraph small = shrink_by_vertex_deletion(
        g, [&](const MultiGraph& c) { return equivalence_counterexample(c, seed).has_value(); });
    std::ostringstream out;
    out << what << "; seed=" << seed << "; counterexample: " << small.serialize();
    return out.str();
}

}  // namespace

CheckResult check_oracle_equivalence(Level level) {
    CheckResult res{"oracle-equivalence", true, ""};
    const std::size_t max_n = level == Level::full ? 5 : 4;
    const std::size_t max_m = level == Level::full ? 7 : 5;
    const std::uint64_t seeds = level == Level::full ? 20 : 5;
    const std::size_t randoms = level == Level::full ? 1000 : 100;

    std::uint64_t cases = 0;
    bool failed = false;
    for_each_small_multigraph(max_n, max_m, [&](const MultiGraph& g) {
        if (failed) return;
        for (std::uint64_t s = 1; s <= seeds; ++s) {
            ++cases;
            if (auto bad = equivalence_counterexample(g, s)) {
                res.pass = false;
                res.detail = describe_failure(g, s, *bad);
                failed = true;
                return;
            }
        }
    });
    if (!res.pass) return res;

    Prng prng(0xEC0FEE);
    for (std::size_t i = 0; i < randoms && !failed; ++i) {
        const std::size_t n = 1 + prng.below(10);
        const std::size_t m = prng.below(21);
        MultiGraph g = gen_random_multigraph(n, m, prng.next());
        for (std::uint64_t s = 1; s <= seeds; ++s) {
            ++cases;
            if (auto bad = equivalence_counterexample(g, s)) {
                res.pass = false;
                res.detail = describe_failure(g, s, *bad);
                failed = true;
                break;
            }
        }
    }
    if (res.pass) res.detail = std::to_string(cases) + " graph/seed cases, exact match";
    return res;
}

CheckResult check_sandwich_bound(Level level) {
    CheckResult res{"sandwich-bound", true, ""};
    const std::size_t count = level == Level::full ? 500 : 100;
    Prng prng(0x5a4d);
    for (std::size_t i = 0; i < count; ++i) {
        MultiGraph g = i % 2 == 0
                           ? gen_random_multigraph(2 + prng.below(15), prng.below(25), prng.next())
                           : gen_gnp(2 + prng.below(15), 0.2 + 0.2 * (i % 4), prng.next());
        const std::size_t opt = brute_force_min_vc(g);
        const std::uint64_t seed = prng.next();
        const std::size_t cover = exact_cover_size(g, TransformMode::plain, 0.5, seed);
        if (!(opt <= cover && cover <= 2 * opt)) {
            res.pass = false;
            auto violated = [&](const MultiGraph& c) {
                const std::size_t o = brute_force_min_vc(c);
                const std::size_t cv = exact_cover_size(c, TransformMode::plain, 0.5, seed);
                return !(o <= cv && cv <= 2 * o);
            };
            const MultiGraph small = shrink_by_vertex_deletion(g, violated);
            std::ostringstream out;
            out << "cover " << cover << " outside [" << opt << ", " << 2 * opt
                << "]; seed=" << seed << "; counterexample: " << small.serialize();
            res.detail = out.str();
            return res;
        }
    }
    res.detail = std::to_string(count) + " graphs within [opt, 2*opt]";
    return res;
}

CheckResult check_binomial_tv(Level level) {
    CheckResult res{"binomial-sampler-tv", true, ""};
    const std::uint64_t max_k = level == Level::full ? 32 : 12;
    const std::vector<std::pair<std::uint64_t, std::uint64_t>> ratios = {
        {1, 4}, {1, 3}, {1, 2}, {3, 4}};
    const std::vector<std::uint64_t> qualities =
        level == Level::full ? std::vector<std::uint64_t>{100, 1000} : std::vector<std::uint64_t>{100};
    std::size_t cases = 0;
    for (std::uint64_t k = 1; k <= max_k; ++k)
        for (auto [a, b] : ratios)
            for (std::uint64_t q : qualities) {
                ++cases;
                if (!binomial_tv_within(k, a, b, q)) {
                    res.pass = false;
                    std::ostringstream out;
                    out << "TV above 1/" << q << " at k=" << k << " p=" << a << "/" << b;
                    res.detail = out.str();
                    return res;
                }
            }
    res.detail = std::to_string(cases) + " (k,p,Q) cells within 1/Q";
    return res;
}

CheckResult check_rank_uniformity(Level level) {
    CheckResult res{"rank-uniformity", true, ""};
    const std::size_t edges = level == Level::full ? 100000 : 20000;
    const std::size_t bound = 256;  // forces a 9-interval ladder

    GenSpec spec;
    spec.family = "matching";
    spec.n = 2 * edges;
    MultiGraph g = generate(spec);
    QueryStats stats;
    CountingGraph counted(g, stats);
    RankEngine engine(counted, bound, 0xBADA55, kQuality);

    std::vector<double> values;
    values.reserve(edges);
    std::vector<std::uint64_t> level_counts(engine.interval_count() + 1, 0);
    for (std::size_t e = 0; e < edges; ++e) {
        const Vertex v = static_cast<Vertex>(2 * e);
        engine.materialize(v);
        const auto& revealed = engine.revealed(v);
        if (revealed.size() != 1) {
            res.pass = false;
            res.detail = "matching edge revealed " + std::to_string(revealed.size()) + " entries";
            return res;
        }
        values.push_back(engine.numeric(revealed[0].second));
        ++level_counts[revealed[0].second.level];
    }

    const double d = ks_statistic(values);
    const double crit = 1.9495 / std::sqrt(static_cast<double>(edges));
    if (d > crit) {
        res.pass = false;
        res.detail = "KS statistic " + std::to_string(d) + " above " + std::to_string(crit);
        return res;
    }

    for (std::uint32_t lvl = 1; lvl <= engine.interval_count(); ++lvl) {
        const double p = lvl == engine.interval_count() ? std::exp2(-static_cast<double>(engine.dstar()))
                                                        : std::exp2(-static_cast<double>(lvl));
        const double expect = p * static_cast<double>(edges);
        const double sigma = std::sqrt(static_cast<double>(edges) * p * (1.0 - p));
        const double got = static_cast<double>(level_counts[lvl]);
        if (std::fabs(got - expect) > 4.0 * sigma) {
            res.pass = false;
            std::ostringstream out;
            out << "level " << lvl << " count " << got << " vs " << expect << " (sigma " << sigma
                << ")";
            res.detail = out.str();
            return res;
        }
    }
    std::ostringstream out;
    out << edges << " ranks, KS " << d << " <= " << crit << ", levels within 4 sigma";
    res.detail = out.str();
    return res;
}

CheckResult check_recursive_call_scaling(Level level) {
    CheckResult res{"recursive-call-scaling", true, ""};
    const std::size_t n = level == Level::full ? 10000 : 2000;
    const std::size_t probes = level == Level::full ? 10000 : 2000;
    const std::vector<std::size_t> degrees =
        level == Level::full ? std::vector<std::size_t>{4, 8, 16} : std::vector<std::size_t>{4, 8};

    std::vector<double> means;
    for (std::size_t d : degrees) {
        MultiGraph g = gen_regular(n, d, 7, true);
        ProbeSession session(g, TransformMode::plain, 0.5, 0xCA11 + d, 1ULL << 20);
        Prng prng(0xD00D + d);
        for (std::size_t i = 0; i < probes; ++i)
            session.probe(static_cast<Vertex>(prng.below(n)));
        const double mean = session.context().mean_probe_calls();
        means.push_back(mean);
        if (mean > 50.0 * static_cast<double>(d)) {
            res.pass = false;
            std::ostringstream out;
            out << "mean calls " << mean << " above 50*d at d=" << d;
            res.detail = out.str();
            return res;
        }
    }
    for (std::size_t i = 1; i < means.size(); ++i) {
        if (means[i] > 3.0 * means[i - 1]) {
            res.pass = false;
            std::ostringstream out;
            out << "mean calls grew " << means[i] / means[i - 1] << "x on degree doubling";
            res.detail = out.str();
            return res;
        }
    }
    std::ostringstream out;
    out << "mean calls per probe:";
    for (std::size_t i = 0; i < degrees.size(); ++i) out << " d=" << degrees[i] << ":" << means[i];
    res.detail = out.str();
    return res;
}

CheckResult check_query_scaling(Level level) {
    CheckResult res{"query-scaling", true, ""};
    const std::size_t n = level == Level::full ? 20000 : 4000;

    EstimateConfig cfg;
    cfg.epsilon = 0.2;
    cfg.mode = TransformMode::max_degree;
    cfg.seed = 11;
    if (level != Level::full) cfg.sample_override = 512;

    MultiGraph g8 = gen_regular(n, 8, 3, true);
    MultiGraph g128 = gen_regular(n, 128, 3, true);
    const EstimateReport r8 = estimate_vc(g8, cfg);
    const EstimateReport r128 = estimate_vc(g128, cfg);

    const double ratio = static_cast<double>(r128.queries.neighbor_queries) /
                         static_cast<double>(std::max<std::uint64_t>(1, r8.queries.neighbor_queries));
    res.pass = ratio <= 40.0;
    std::ostringstream out;
    out << "neighbor queries " << r8.queries.neighbor_queries << " (d=8) vs "
        << r128.queries.neighbor_queries << " (d=128), ratio " << ratio << " (limit 40)";
    res.detail = out.str();
    return res;
}

CheckResult check_transform_fidelity(Level) {
    CheckResult res{"transform-fidelity", true, ""};
    QueryStats sink;

    struct Case {
        std::string name;
        MultiGraph g;
        TransformMode mode;
        std::size_t param;
        double eps;
    };
    std::vector<Case> cases;
    cases.push_back({"max-deg 4-regular", gen_regular(6, 4, 1, true), TransformMode::max_degree, 4, 0.5});
    cases.push_back(
        {"max-deg multigraph", gen_random_multigraph(6, 10, 2), TransformMode::max_degree, 0, 0.5});
    {
        // Hub exceeding the cutoff: star plus leaf chords, tight dbar.
        std::vector<Edge> edges;
        for (Vertex i = 1; i < 10; ++i) edges.push_back({0, i});
        edges.push_back({1, 2});
        edges.push_back({3, 4});
        cases.push_back({"avg-deg hub", MultiGraph(10, std::move(edges)), TransformMode::avg_degree,
                         1, 0.9});
    }
    cases.push_back(
        {"avg-deg no-high", gen_random_multigraph(10, 14, 3), TransformMode::avg_degree, 2, 0.5});
    {
        MultiGraph gd = gen_gnp(8, 0.5, 4);
        gd.build_pair_index();
        cases.push_back({"dense gnp", std::move(gd), TransformMode::dense, 0, 0.5});
    }
    {
        GenSpec spec;
        spec.family = "complete";
        spec.n = 6;
        MultiGraph gc = generate(spec);
        gc.build_pair_index();
        cases.push_back({"dense complete", std::move(gc), TransformMode::dense, 0, 0.25});
    }
    {
        std::vector<Edge> edges = gen_gnp(7, 0.4, 8).edges();
        edges.push_back({2, 2});
        edges.push_back({5, 5});
        MultiGraph gl(7, std::move(edges));
        gl.build_pair_index();
        cases.push_back({"dense with loops", std::move(gl), TransformMode::dense, 0, 0.5});
    }

    for (auto& c : cases) {
        CountingGraph counted(c.g, sink);
        std::optional<std::string> bad;
        switch (c.mode) {
            case TransformMode::max_degree: {
                const std::size_t d = c.param ? c.param : std::max<std::size_t>(c.g.max_degree(), 3);
                VirtualGraph vg = VirtualGraph::bounded_degree(counted, d, c.eps);
                bad = diff_against(vg, materialize_bounded_degree(c.g, d, c.eps));
                break;
            }
            case TransformMode::avg_degree: {
                VirtualGraph vg = VirtualGraph::bounded_average(counted, c.param, c.eps);
                bad = diff_against(vg, materialize_bounded_average(c.g, c.param, c.eps));
                break;
            }
            case TransformMode::dense: {
                VirtualGraph vg = VirtualGraph::dense(counted, c.eps);
                bad = diff_against(vg, materialize_dense(c.g, c.eps));
                break;
            }
            case TransformMode::plain: break;
        }
        if (bad) {
            res.pass = false;
            res.detail = c.name + ": " + *bad;
            return res;
        }
    }
    res.detail = std::to_string(cases.size()) + " wrapper/materialization diffs empty";
    return res;
}

CheckResult check_shadow_race_bound(Level level) {
    CheckResult res{"shadow-race-bound", true, ""};
    const std::size_t n = level == Level::full ? 10000 : 2000;
    const std::size_t trials = level == Level::full ? 20 : 5;
    const std::size_t need = level == Level::full ? 19 : 4;
    const double eps = 0.2;

    MultiGraph g = gen_regular(n, 10, 1, true);
    std::size_t ok = 0;
    std::vector<double> fractions;
    for (std::size_t t = 0; t < trials; ++t) {
        ProbeSession session(g, TransformMode::max_degree, eps, 1000 + t, 1ULL << 20);
        OracleContext& ctx = session.context();
        std::size_t wins = 0;
        for (Vertex v = 0; v < n; ++v) {
            const Vertex shadow = static_cast<Vertex>(n + v);
            ctx.engine().materialize(shadow);
            if (ctx.matched(v, shadow)) ++wins;
        }
        const double frac = static_cast<double>(wins) / static_cast<double>(n);
        fractions.push_back(frac);
        if (frac <= eps / 4.0) ++ok;
    }
    res.pass = ok >= need;
    std::ostringstream out;
    out << ok << "/" << trials << " trials with shadow-attachment fraction <= " << eps / 4.0
        << " (min " << *std::min_element(fractions.begin(), fractions.end()) << ", max "
        << *std::max_element(fractions.begin(), fractions.end()) << ")";
    res.detail = out.str();
    return res;
}

CheckResult check_estimator_guarantee(Level level) {
    CheckResult res{"estimator-guarantee", true, ""};

    // Desk-scale guarantee against brute force.
    const std::size_t graphs = level == Level::full ? 50 : 10;
    const std::size_t seeds_per = 10;
    const double eps_small = 0.25;
    Prng prng(0x9e5f);
    std::size_t total_ok = 0;
    std::size_t worst_graph_ok = seeds_per;
    for (std::size_t i = 0; i < graphs; ++i) {
        MultiGraph g = i % 2 == 0
                           ? gen_random_multigraph(4 + prng.below(13), 2 + prng.below(23), prng.next())
                           : gen_gnp(4 + prng.below(13), 0.3 + 0.1 * (i % 5), prng.next());
        const double opt = static_cast<double>(brute_force_min_vc(g));
        const double slack = eps_small * static_cast<double>(g.vertex_count());
        std::size_t graph_ok = 0;
        for (std::size_t s = 0; s < seeds_per; ++s) {
            EstimateConfig cfg;
            cfg.epsilon = eps_small;
            cfg.mode = TransformMode::max_degree;
            cfg.seed = prng.next();
            const EstimateReport rep = estimate_vc(g, cfg);
            if (rep.estimate >= opt - slack && rep.estimate <= 2.0 * opt + slack) ++graph_ok;
        }
        total_ok += graph_ok;
        worst_graph_ok = std::min(worst_graph_ok, graph_ok);
        if (3 * graph_ok < 2 * seeds_per) {
            res.pass = false;
            std::ostringstream out;
            out << "graph " << i << " within bounds only " << graph_ok << "/" << seeds_per;
            res.detail = out.str();
            return res;
        }
    }
    const std::size_t total = graphs * seeds_per;
    if (total_ok * 10 < total * 9) {
        res.pass = false;
        res.detail = "aggregate success " + std::to_string(total_ok) + "/" + std::to_string(total);
        return res;
    }

    // Sampling accuracy against a full sweep under the same rank assignment.
    const std::size_t trials = level == Level::full ? 100 : 20;
    const std::size_t need = level == Level::full ? 95 : 16;
    const std::size_t n = 2000;
    const double eps = 0.1;
    const std::uint64_t s = sample_size(eps, 0.05);
    std::size_t ok = 0;
    for (std::size_t t = 0; t < trials; ++t) {
        MultiGraph g = gen_regular(n, 10, 50 + t, true);
        ProbeSession session(g, TransformMode::plain, eps, 90 + t, 1ULL << 20);
        std::size_t sweep = 0;
        for (Vertex v = 0; v < n; ++v)
            if (session.probe(v)) ++sweep;
        Prng draw(RngStream::derive(777, t));
        std::uint64_t trues = 0;
        for (std::uint64_t i = 0; i < s; ++i)
            if (session.probe(static_cast<Vertex>(draw.below(n)))) ++trues;
        const double mu_n = static_cast<double>(trues) / static_cast<double>(s) * n;
        if (std::fabs(mu_n - static_cast<double>(sweep)) <= eps * n / 4.0) ++ok;
    }
    res.pass = ok >= need;
    std::ostringstream out;
    out << "desk-scale " << total_ok << "/" << total << " in bounds (worst graph "
        << worst_graph_ok << "/" << seeds_per << "); sampling accuracy " << ok << "/" << trials
        << " within eps*n/4";
    res.detail = out.str();
    return res;
}

CheckResult check_biclique_family_cover(Level) {
    CheckResult res{"biclique-family-cover", true, ""};
    for (std::size_t n : {std::size_t(8), std::size_t(16)}) {
        for (std::uint64_t seed = 1; seed <= 3; ++seed) {
            MultiGraph g = gen_lb_family(n, seed);
            const std::size_t opt = brute_force_min_vc(g);
            if (opt != n / 4 + 1) {
                res.pass = false;
                std::ostringstream out;
                out << "n=" << n << " seed=" << seed << " min cover " << opt << " != " << n / 4 + 1;
                res.detail = out.str();
                return res;
            }
        }
    }
    res.detail = "minimum cover n/4+1 at n=8,16";
    return res;
}

CheckResult check_dense_pair_budget(Level level) {
    CheckResult res{"dense-pair-budget", true, ""};
    const std::size_t n = 500;
    MultiGraph g = gen_gnp(n, 0.5, 31);
    g.build_pair_index();

    EstimateConfig cfg;
    cfg.epsilon = 0.25;
    cfg.mode = TransformMode::dense;
    cfg.seed = 5;
    if (level != Level::full) cfg.sample_override = 400;
    const EstimateReport rep = estimate_vc(g, cfg);

    const std::uint64_t budget = n * n / 10;
    res.pass = rep.queries.degree_queries == 0 && rep.queries.neighbor_queries == 0 &&
               rep.queries.pair_queries <= budget;
    std::ostringstream out;
    out << "pair=" << rep.queries.pair_queries << " (budget " << budget
        << "), degree=" << rep.queries.degree_queries
        << ", neighbor=" << rep.queries.neighbor_queries;
    res.detail = out.str();
    return res;
}

std::vector<CheckResult> run_all(Level level, std::ostream& out) {
    std::vector<CheckResult> results;
    const std::vector<CheckResult (*)(Level)> checks = {
        check_oracle_equivalence, check_sandwich_bound,       check_binomial_tv,
        check_rank_uniformity,    check_recursive_call_scaling, check_query_scaling,
        check_transform_fidelity, check_shadow_race_bound,    check_estimator_guarantee,
        check_biclique_family_cover, check_dense_pair_budget};
    for (auto* fn : checks) {
        CheckResult r = fn(level);
        out << (r.pass ? "PASS " : "FAIL ") << r.name << " — " << r.detail << "\n" << std::flush;
        results.push_back(std::move(r));
    }
    return results;
}

}  // namespace subvc::verify
