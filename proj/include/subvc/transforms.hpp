#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>

#include "subvc/multigraph.hpp"

namespace subvc {

enum class TransformMode { plain, max_degree, avg_degree, dense };

const char* to_string(TransformMode mode);
std::optional<TransformMode> transform_mode_from(const std::string& name);

/// A transformed graph presented through the query interface, answering each
/// query with O(1) queries to the underlying graph.
///
/// Vertex id layout (n = underlying vertex count):
///   max-degree:  real v in [0,n); shadow v' = n+v.
///   avg-degree:  real v; v' = n+v; group vertices v''_i = 2n + v*G + (i-1)
///                for a fixed stride G = ceil(8/eps). Vertices of the
///                high-degree set L, their shadows, and unused group ids are
///                isolated.
///   dense:       real v; v' = n+v.
///
/// Slot order inside shadow vertices is fixed: real edges first, shadow
/// attachment edges next, self-loops last.
class VirtualGraph final : public GraphQueries {
public:
    /// Adds a shadow v' per vertex with floor(eps*d) parallel edges to v and
    /// 8d self-loops. Requires 0 < eps < 1, d >= max degree, 1/eps < d.
    static VirtualGraph bounded_degree(const GraphQueries& base, std::size_t d, double eps);

    /// Caps the effective degree at tau = 8*dbar/eps: vertices above tau are
    /// isolated, their edges rerouted to per-vertex group shadows; every kept
    /// vertex gains a dbar-edge shadow attachment. dbar is an integer bound
    /// on the average degree.
    static VirtualGraph bounded_average(const GraphQueries& base, std::size_t dbar, double eps);

    /// Equalizes all real degrees to n using only pair queries; v' absorbs
    /// the non-edges and carries ceil(8/eps)*n extra self-loops.
    static VirtualGraph dense(const GraphQueries& base, double eps);

    std::size_t vertex_count() const override { return total_; }
    std::size_t degree(Vertex v) const override;
    NeighborRef neighbor(Vertex v, std::size_t i) const override;
    bool pair(Vertex u, Vertex v) const override;
    bool supports_pair() const override;

    TransformMode mode() const { return mode_; }
    std::size_t real_count() const { return n_; }
    /// Upper bound on the transformed graph's maximum degree.
    std::size_t max_degree_bound() const;

    // Derived constants, exposed for tests.
    std::size_t fan() const { return fan_; }      // parallel edges to the shadow
    std::size_t loops() const { return loops_; }  // self-loops per shadow
    double tau() const { return tau_; }           // avg-degree cutoff
    std::size_t group_stride() const { return group_stride_; }

private:
    VirtualGraph(const GraphQueries& base, TransformMode mode);

    std::size_t base_degree(Vertex v) const;  // cached underlying degree
    bool in_high_set(Vertex v) const { return static_cast<double>(base_degree(v)) > tau_; }

    std::size_t degree_max(Vertex v) const;
    std::size_t degree_avg(Vertex v) const;
    std::size_t degree_dense(Vertex v) const;
    NeighborRef neighbor_max(Vertex v, std::size_t i) const;
    NeighborRef neighbor_avg(Vertex v, std::size_t i) const;
    NeighborRef neighbor_dense(Vertex v, std::size_t i) const;

    const GraphQueries* base_;
    TransformMode mode_;
    std::size_t n_ = 0;
    std::size_t total_ = 0;
    std::size_t fan_ = 0;
    std::size_t loops_ = 0;
    std::size_t dbar_ = 0;
    double tau_ = 0.0;
    std::size_t group_stride_ = 0;
    double eps_ = 0.0;
    mutable std::unordered_map<Vertex, std::size_t> degree_cache_;
};

/// Immediate TRUE for vertices whose degree exceeds 8*dbar/eps (one degree
/// query); nullopt means the caller should probe the transformed graph.
std::optional<bool> high_degree_shortcut(const GraphQueries& g, std::size_t dbar, double eps,
                                         Vertex v);

inline std::uint64_t virtual_edge_id(Vertex u, std::uint32_t i, Vertex w, std::uint32_t j) {
    if (w < u || (w == u && j < i)) {
        std::swap(u, w);
        std::swap(i, j);
    }
    return (static_cast<std::uint64_t>(u) << 32) | i;
}

}  // namespace subvc
