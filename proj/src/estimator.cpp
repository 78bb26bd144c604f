#include "subvc/estimator.hpp"

#include <chrono>
#include <cmath>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "subvc/generators.hpp"
#include "subvc/rng.hpp"

namespace subvc {

std::uint64_t sample_size(double eps, double delta) {
    if (!(eps > 0.0 && eps < 1.0)) throw input_error("eps must be in (0,1)");
    if (!(delta > 0.0 && delta < 1.0)) throw input_error("delta must be in (0,1)");
    const long double s = (32.0L / (static_cast<long double>(eps) * eps)) *
                          std::log(2.0L / static_cast<long double>(delta));
    return static_cast<std::uint64_t>(std::ceil(s));
}

namespace {

std::uint64_t quality_for(std::uint64_t call_budget) {
    if (call_budget == 0 || call_budget > (1ULL << 43)) throw config_error("call budget out of range");
    return call_budget << 20;
}

}  // namespace

ProbeSession::ProbeSession(const MultiGraph& g, TransformMode mode, double eps,
                           std::uint64_t seed, std::uint64_t call_budget)
    : g_(&g), eps_(eps), counted_(g, stats_) {
    if (!(eps > 0.0 && eps < 1.0)) throw config_error("eps must be in (0,1)");
    const std::uint64_t q = quality_for(call_budget);

    std::size_t engine_bound = 1;
    switch (mode) {
        case TransformMode::max_degree: {
            const std::size_t d = g.max_degree();
            if (eps * static_cast<double>(d) > 1.0) {
                virt_ = std::make_unique<VirtualGraph>(VirtualGraph::bounded_degree(counted_, d, eps));
                applied_ = TransformMode::max_degree;
            } else {
                applied_ = TransformMode::plain;  // degree already at most 1/eps
            }
            break;
        }
        case TransformMode::avg_degree: {
            const std::size_t n = g.vertex_count();
            dbar_ = n == 0 ? 1 : std::max<std::size_t>(1, (g.slot_degree_sum() + n - 1) / n);
            virt_ = std::make_unique<VirtualGraph>(VirtualGraph::bounded_average(counted_, dbar_, eps));
            applied_ = TransformMode::avg_degree;
            break;
        }
        case TransformMode::dense: {
            if (!g.has_pair_index())
                throw config_error("dense mode needs the pair-query index built at load time");
            virt_ = std::make_unique<VirtualGraph>(VirtualGraph::dense(counted_, eps));
            applied_ = TransformMode::dense;
            break;
        }
        case TransformMode::plain:
            applied_ = TransformMode::plain;
            break;
    }

    const GraphQueries* view = virt_ ? static_cast<const GraphQueries*>(virt_.get())
                                     : static_cast<const GraphQueries*>(&counted_);
    engine_bound = virt_ ? virt_->max_degree_bound() : std::max<std::size_t>(1, g.max_degree());
    ctx_ = std::make_unique<OracleContext>(*view, engine_bound, seed, q);
}

bool ProbeSession::probe(Vertex v) {
    if (applied_ == TransformMode::avg_degree) {
        if (high_degree_shortcut(counted_, dbar_, eps_, v).value_or(false)) {
            ++shortcut_hits_;
            return true;
        }
    }
    return ctx_->covered(v);
}

EstimateReport estimate_vc(const MultiGraph& g, const EstimateConfig& cfg) {
    if (!(cfg.epsilon > 0.0 && cfg.epsilon < 1.0)) throw config_error("eps must be in (0,1)");
    const auto t0 = std::chrono::steady_clock::now();

    EstimateReport rep;
    rep.seed = cfg.seed;
    rep.epsilon = cfg.epsilon;
    rep.mode = to_string(cfg.mode);
    rep.n = g.vertex_count();

    const std::size_t n = g.vertex_count();
    const std::size_t tiny = static_cast<std::size_t>(std::ceil(100.0 / cfg.epsilon));

    if (n == 0 || (cfg.allow_exact_fallback && n <= tiny)) {
        // Reference path: one explicit random ranking, exact greedy cover.
        Prng prng(RngStream::derive(cfg.seed, 0x7fa11bacULL));
        std::vector<std::uint32_t> ranking(g.edge_count());
        std::iota(ranking.begin(), ranking.end(), 0);
        for (std::size_t i = ranking.size(); i > 1; --i)
            std::swap(ranking[i - 1], ranking[prng.below(i)]);
        const auto [mm, cc] = greedy_matching(g, ranking);
        (void)mm;
        rep.exact_fallback = true;
        rep.applied_mode = "exact";
        rep.estimate = static_cast<double>(cc);
        rep.mu = n == 0 ? 0.0 : static_cast<double>(cc) / static_cast<double>(n);
        rep.samples = 0;
    } else {
        ProbeSession session(g, cfg.mode, cfg.epsilon, cfg.seed, cfg.call_budget);
        const std::uint64_t s = cfg.sample_override.value_or(sample_size(cfg.epsilon, cfg.delta));
        if (s == 0) throw config_error("sample count must be positive");

        RngStream rng(cfg.seed);
        Prng draw = rng.substream(0x5A3D7E5ULL);
        std::uint64_t trues = 0;
        for (std::uint64_t i = 0; i < s; ++i) {
            const Vertex v = static_cast<Vertex>(draw.below(n));
            if (session.probe(v)) ++trues;
        }
        rep.mu = static_cast<double>(trues) / static_cast<double>(s);
        rep.samples = s;
        rep.applied_mode = to_string(session.applied());
        rep.shortcut_hits = session.shortcut_hits();

        double slack = 0.0;
        switch (session.applied()) {
            case TransformMode::max_degree:
            case TransformMode::dense: slack = cfg.epsilon / 4.0; break;
            case TransformMode::avg_degree: slack = cfg.epsilon / 8.0; break;
            case TransformMode::plain: slack = 0.0; break;
        }
        rep.estimate = (rep.mu + slack) * static_cast<double>(n);
        rep.queries = session.stats();
        rep.mean_calls = session.context().mean_probe_calls();
        rep.max_calls = session.context().max_probe_calls();
        rep.memo_misses = session.context().memo_misses();
    }

    rep.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

std::size_t exact_cover_size(const MultiGraph& g, TransformMode mode, double eps,
                             std::uint64_t seed, std::uint64_t call_budget) {
    ProbeSession session(g, mode, eps, seed, call_budget);
    std::size_t count = 0;
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        if (session.probe(v)) ++count;
    return count;
}

std::string EstimateReport::to_json() const {
    nlohmann::json j;
    j["schema_version"] = schema_version;
    j["estimate"] = estimate;
    j["mu"] = mu;
    j["samples"] = samples;
    j["queries"] = {{"degree", queries.degree_queries},
                    {"neighbor", queries.neighbor_queries},
                    {"pair", queries.pair_queries}};
    j["calls"] = {{"mean", mean_calls}, {"max", max_calls}, {"memo_misses", memo_misses}};
    j["wall_seconds"] = wall_seconds;
    j["seed"] = seed;
    j["config"] = {{"epsilon", epsilon},
                   {"mode", mode},
                   {"applied_mode", applied_mode},
                   {"exact_fallback", exact_fallback},
                   {"n", n},
                   {"shortcut_hits", shortcut_hits}};
    return j.dump();
}

std::string EstimateReport::csv_header() {
    return "family,n,d,eps,mode,applied_mode,seed,estimate,mu,samples,degree_queries,"
           "neighbor_queries,pair_queries,mean_calls,max_calls,wall_seconds,schema_version";
}

std::string EstimateReport::to_csv_row(const std::string& family, std::uint64_t gen_n,
                                       std::uint64_t gen_d) const {
    std::ostringstream out;
    out << family << ',' << gen_n << ',' << gen_d << ',' << epsilon << ',' << mode << ','
        << applied_mode << ',' << seed << ',' << estimate << ',' << mu << ',' << samples << ','
        << queries.degree_queries << ',' << queries.neighbor_queries << ','
        << queries.pair_queries << ',' << mean_calls << ',' << max_calls << ',' << wall_seconds
        << ',' << schema_version;
    return out.str();
}

}  // namespace subvc
