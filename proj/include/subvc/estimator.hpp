#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>

#include "subvc/multigraph.hpp"
#include "subvc/oracles.hpp"
#include "subvc/transforms.hpp"

namespace subvc {

struct EstimateConfig {
    double epsilon = 0.1;
    TransformMode mode = TransformMode::max_degree;
    std::optional<std::uint64_t> sample_override;
    std::uint64_t seed = 1;
    double delta = 0.05;                        // sampling failure budget
    std::uint64_t call_budget = 1ULL << 20;     // sampler quality: Q = 2^20 * call_budget
    std::uint32_t trials = 1;
    bool allow_exact_fallback = true;           // exact cover on tiny inputs
};

struct EstimateReport {
    static constexpr int schema_version = 1;

    double estimate = 0.0;
    double mu = 0.0;
    std::uint64_t samples = 0;
    QueryStats queries;
    double mean_calls = 0.0;
    std::uint64_t max_calls = 0;
    std::uint64_t memo_misses = 0;
    double wall_seconds = 0.0;
    std::uint64_t seed = 0;

    // config echo
    double epsilon = 0.0;
    std::string mode;
    std::string applied_mode;
    bool exact_fallback = false;
    std::uint64_t n = 0;
    std::uint64_t shortcut_hits = 0;

    std::string to_json() const;
    static std::string csv_header();
    std::string to_csv_row(const std::string& family, std::uint64_t gen_n, std::uint64_t gen_d) const;
};

/// Hoeffding sample count for additive error eps/8 at failure budget delta:
/// ceil((32/eps^2) * ln(2/delta)).
std::uint64_t sample_size(double eps, double delta);

/// One rank assignment shared across arbitrary probes of one run: builds the
/// requested transform (or falls back to plain where the transform does not
/// apply), owns the oracle context, and answers per-vertex cover probes.
class ProbeSession {
public:
    ProbeSession(const MultiGraph& g, TransformMode mode, double eps, std::uint64_t seed,
                 std::uint64_t call_budget);

    /// Cover answer for a real vertex (shortcut first in avg-degree mode).
    bool probe(Vertex v);

    TransformMode applied() const { return applied_; }
    OracleContext& context() { return *ctx_; }
    QueryStats& stats() { return stats_; }
    std::uint64_t shortcut_hits() const { return shortcut_hits_; }
    std::size_t dbar() const { return dbar_; }
    const VirtualGraph* virtual_graph() const { return virt_.get(); }

private:
    const MultiGraph* g_;
    double eps_;
    QueryStats stats_;
    CountingGraph counted_;
    std::unique_ptr<VirtualGraph> virt_;
    std::unique_ptr<OracleContext> ctx_;
    TransformMode applied_ = TransformMode::plain;
    std::size_t dbar_ = 0;
    std::uint64_t shortcut_hits_ = 0;
};

/// Runs one estimation trial.
EstimateReport estimate_vc(const MultiGraph& g, const EstimateConfig& cfg);

/// Full sweep of the cover oracle over all real vertices under one rank
/// assignment (plus shortcut answers in avg-degree mode).
std::size_t exact_cover_size(const MultiGraph& g, TransformMode mode, double eps,
                             std::uint64_t seed,
                             std::uint64_t call_budget = EstimateConfig{}.call_budget);

}  // namespace subvc
