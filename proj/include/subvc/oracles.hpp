#pragma once

#include <cstdint>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "subvc/multigraph.hpp"
#include "subvc/rank_engine.hpp"

namespace subvc {

/// Greedy maximal matching M and its endpoint cover C for an explicit edge
/// ranking. `ranking[e]` is the 0-based rank of edge e; must be a bijection.
/// Answers the per-edge and per-vertex membership questions directly.
class ReferenceOracle {
public:
    ReferenceOracle(const MultiGraph& g, const std::vector<std::uint32_t>& ranking);

    bool matched(EdgeId e) const;
    bool covered(Vertex v) const;

    std::size_t matching_size() const { return matching_size_; }
    std::size_t cover_size() const { return cover_size_; }

private:
    std::vector<bool> matched_;
    std::vector<bool> covered_;
    std::size_t matching_size_ = 0;
    std::size_t cover_size_ = 0;
};

/// Shared state of one estimation run: the graph view, its lazy rank engine,
/// the memoized matching answers, and probe instrumentation.
class OracleContext {
public:
    OracleContext(const GraphQueries& g, std::size_t max_degree_bound, std::uint64_t seed,
                  std::uint64_t q);

    /// Whether v is an endpoint of the greedy maximal matching induced by the
    /// lazily revealed ranks. Each call is one probe for call accounting.
    bool covered(Vertex v);

    /// Whether the minimum-rank edge between u and v is in the matching.
    /// The pair's rank must already be revealed by some lowest() call.
    bool matched(Vertex u, Vertex v);

    RankEngine& engine() { return engine_; }
    const GraphQueries& view() const { return *g_; }

    std::uint64_t probes() const { return probes_; }
    std::uint64_t memo_misses() const { return memo_misses_; }
    std::uint64_t max_probe_calls() const { return max_probe_calls_; }
    double mean_probe_calls() const {
        return probes_ == 0 ? 0.0 : static_cast<double>(total_probe_calls_) / static_cast<double>(probes_);
    }
    std::uint64_t last_probe_calls() const { return last_probe_calls_; }

    const std::unordered_map<std::uint64_t, bool>& matching_memo() const { return memo_; }

private:
    bool matched_inner(Vertex u, Vertex v);
    void note_invocation(std::uint64_t key);

    const GraphQueries* g_;
    RankEngine engine_;
    std::unordered_map<std::uint64_t, bool> memo_;
    std::unordered_set<std::uint64_t> probe_pairs_;
    bool in_probe_ = false;
    std::uint64_t probes_ = 0;
    std::uint64_t total_probe_calls_ = 0;
    std::uint64_t max_probe_calls_ = 0;
    std::uint64_t last_probe_calls_ = 0;
    std::uint64_t memo_misses_ = 0;
};

/// Explicit ranking (edge id -> 0-based rank) read off a fully materialized
/// engine over a concrete graph: groups of parallel edges are ordered by
/// their minimum revealed rank, the minimum-carrying edge first and the rest
/// of each group directly after it.
std::vector<std::uint32_t> derive_ranking(const RankEngine& engine, const MultiGraph& g);

}  // namespace subvc
