#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

namespace subvc {

using Vertex = std::uint32_t;
using EdgeId = std::uint32_t;

struct input_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct parse_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct state_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Counters for the three query kinds of the access model.
struct QueryStats {
    std::uint64_t degree_queries = 0;
    std::uint64_t neighbor_queries = 0;
    std::uint64_t pair_queries = 0;

    void reset() { *this = QueryStats{}; }
    std::uint64_t total() const { return degree_queries + neighbor_queries + pair_queries; }
};

/// Answer of a neighbor query: the endpoint, the reciprocal slot index at
/// that endpoint (1-based), and an edge identifier stable across both views.
struct NeighborRef {
    Vertex other = 0;
    std::uint32_t reciprocal = 0;
    std::uint64_t edge = 0;
};

/// Query access to a graph: degree, i-th neighbor (1-based), vertex pair.
class GraphQueries {
public:
    virtual ~GraphQueries() = default;
    virtual std::size_t vertex_count() const = 0;
    virtual std::size_t degree(Vertex v) const = 0;
    virtual NeighborRef neighbor(Vertex v, std::size_t i) const = 0;
    virtual bool pair(Vertex u, Vertex v) const = 0;
    virtual bool supports_pair() const = 0;
};

struct Edge {
    Vertex u = 0;
    Vertex v = 0;
};

/// In-memory multigraph with parallel edges and self-loops. A self-loop
/// occupies a single adjacency slot at its vertex. Immutable after
/// construction apart from the optional pair-query index.
class MultiGraph {
public:
    struct Slot {
        Vertex other = 0;
        std::uint32_t reciprocal = 0;  // 1-based slot index at `other`
        EdgeId edge = 0;
    };

    MultiGraph() = default;
    MultiGraph(std::size_t n, std::vector<Edge> edges);

    static MultiGraph parse(std::istream& in);
    static MultiGraph parse(const std::string& text);
    std::string serialize() const;

    std::size_t vertex_count() const { return slots_.size(); }
    std::size_t edge_count() const { return edges_.size(); }
    const std::vector<Edge>& edges() const { return edges_; }

    std::size_t degree(Vertex v) const;
    const Slot& slot(Vertex v, std::size_t i) const;  // 1-based

    void build_pair_index();
    bool has_pair_index() const { return pair_index_built_; }
    bool pair(Vertex u, Vertex v) const;

    std::size_t max_degree() const;
    std::size_t slot_degree_sum() const;
    std::size_t loop_count() const;

    /// Reorders every adjacency list with a seeded shuffle, fixing reciprocal
    /// indices. Edge ids are unchanged.
    void shuffle_slots(std::uint64_t seed);

    /// Builds a graph directly from per-vertex slot lists; validates
    /// reciprocity and dense edge ids. Used by transform materializers.
    static MultiGraph from_slots(std::vector<std::vector<Slot>> slots, std::size_t edge_count);

private:
    void check_vertex(Vertex v) const;

    std::vector<std::vector<Slot>> slots_;
    std::vector<Edge> edges_;
    std::unordered_set<std::uint64_t> pair_index_;
    bool pair_index_built_ = false;
};

/// Query facade over a MultiGraph that counts every invocation.
class CountingGraph final : public GraphQueries {
public:
    CountingGraph(const MultiGraph& g, QueryStats& stats) : g_(&g), stats_(&stats) {}

    std::size_t vertex_count() const override { return g_->vertex_count(); }
    std::size_t degree(Vertex v) const override;
    NeighborRef neighbor(Vertex v, std::size_t i) const override;
    bool pair(Vertex u, Vertex v) const override;
    bool supports_pair() const override { return g_->has_pair_index(); }

    const MultiGraph& graph() const { return *g_; }
    QueryStats& stats() const { return *stats_; }

private:
    const MultiGraph* g_;
    QueryStats* stats_;
};

inline std::uint64_t pack_pair(Vertex u, Vertex v) {
    if (u > v) std::swap(u, v);
    return (static_cast<std::uint64_t>(u) << 32) | v;
}

}  // namespace subvc
