#include "subvc/transforms.hpp"

#include <cmath>
#include <string>

namespace subvc {

const char* to_string(TransformMode mode) {
    switch (mode) {
        case TransformMode::plain: return "plain";
        case TransformMode::max_degree: return "max-deg";
        case TransformMode::avg_degree: return "avg-deg";
        case TransformMode::dense: return "dense";
    }
    return "?";
}

std::optional<TransformMode> transform_mode_from(const std::string& name) {
    if (name == "plain") return TransformMode::plain;
    if (name == "max-deg") return TransformMode::max_degree;
    if (name == "avg-deg") return TransformMode::avg_degree;
    if (name == "dense") return TransformMode::dense;
    return std::nullopt;
}

VirtualGraph::VirtualGraph(const GraphQueries& base, TransformMode mode)
    : base_(&base), mode_(mode), n_(base.vertex_count()) {}

VirtualGraph VirtualGraph::bounded_degree(const GraphQueries& base, std::size_t d, double eps) {
    if (!(eps > 0.0 && eps < 1.0)) throw input_error("eps must be in (0,1)");
    if (d == 0 || eps * static_cast<double>(d) <= 1.0)
        throw input_error("bounded-degree transform needs 1/eps < d");
    VirtualGraph vg(base, TransformMode::max_degree);
    vg.eps_ = eps;
    vg.fan_ = static_cast<std::size_t>(eps * static_cast<double>(d));
    vg.loops_ = 8 * d;
    vg.total_ = 2 * vg.n_;
    return vg;
}

VirtualGraph VirtualGraph::bounded_average(const GraphQueries& base, std::size_t dbar,
                                           double eps) {
    if (!(eps > 0.0 && eps < 1.0)) throw input_error("eps must be in (0,1)");
    if (dbar == 0) throw input_error("average degree bound must be positive");
    VirtualGraph vg(base, TransformMode::avg_degree);
    vg.eps_ = eps;
    vg.dbar_ = dbar;
    vg.fan_ = dbar;
    vg.tau_ = 8.0 * static_cast<double>(dbar) / eps;
    vg.loops_ = static_cast<std::size_t>(std::ceil(32.0 * static_cast<double>(dbar) / eps));
    vg.group_stride_ = static_cast<std::size_t>(std::ceil(8.0 / eps));
    vg.total_ = 2 * vg.n_ + vg.n_ * vg.group_stride_;
    return vg;
}

VirtualGraph VirtualGraph::dense(const GraphQueries& base, double eps) {
    if (!(eps > 0.0 && eps < 1.0)) throw input_error("eps must be in (0,1)");
    if (!base.supports_pair()) throw state_error("dense transform needs a pair-query index");
    VirtualGraph vg(base, TransformMode::dense);
    vg.eps_ = eps;
    vg.fan_ = vg.n_;
    vg.loops_ = static_cast<std::size_t>(std::ceil(8.0 / eps)) * vg.n_;
    vg.total_ = 2 * vg.n_;
    return vg;
}

std::size_t VirtualGraph::base_degree(Vertex v) const {
    auto it = degree_cache_.find(v);
    if (it != degree_cache_.end()) return it->second;
    std::size_t d = base_->degree(v);
    degree_cache_.emplace(v, d);
    return d;
}

std::size_t VirtualGraph::max_degree_bound() const {
    switch (mode_) {
        case TransformMode::max_degree: return fan_ + loops_;
        case TransformMode::avg_degree:
            return std::max<std::size_t>(static_cast<std::size_t>(tau_) + dbar_, dbar_ + loops_);
        case TransformMode::dense: return n_ + loops_;
        case TransformMode::plain: break;
    }
    throw state_error("no transform");
}

std::size_t VirtualGraph::degree(Vertex v) const {
    if (v >= total_) throw input_error("vertex out of range");
    switch (mode_) {
        case TransformMode::max_degree: return degree_max(v);
        case TransformMode::avg_degree: return degree_avg(v);
        case TransformMode::dense: return degree_dense(v);
        case TransformMode::plain: break;
    }
    throw state_error("no transform");
}

NeighborRef VirtualGraph::neighbor(Vertex v, std::size_t i) const {
    if (v >= total_) throw input_error("vertex out of range");
    if (i < 1) throw input_error("slot index is 1-based");
    switch (mode_) {
        case TransformMode::max_degree: return neighbor_max(v, i);
        case TransformMode::avg_degree: return neighbor_avg(v, i);
        case TransformMode::dense: return neighbor_dense(v, i);
        case TransformMode::plain: break;
    }
    throw state_error("no transform");
}

// --- bounded maximum degree -------------------------------------------------

std::size_t VirtualGraph::degree_max(Vertex v) const {
    if (v < n_) return base_degree(v) + fan_;
    return fan_ + loops_;
}

NeighborRef VirtualGraph::neighbor_max(Vertex v, std::size_t i) const {
    if (v < n_) {
        const std::size_t d = base_degree(v);
        if (i <= d) {
            NeighborRef nb = base_->neighbor(v, i);
            nb.edge = virtual_edge_id(v, static_cast<std::uint32_t>(i), nb.other, nb.reciprocal);
            return nb;
        }
        const std::size_t k = i - d;
        if (k > fan_) throw input_error("slot index out of range");
        const Vertex shadow = static_cast<Vertex>(n_ + v);
        return {shadow, static_cast<std::uint32_t>(k),
                virtual_edge_id(v, static_cast<std::uint32_t>(i), shadow, static_cast<std::uint32_t>(k))};
    }
    const Vertex real = static_cast<Vertex>(v - n_);
    if (i <= fan_) {
        const std::uint32_t back = static_cast<std::uint32_t>(base_degree(real) + i);
        return {real, back, virtual_edge_id(real, back, v, static_cast<std::uint32_t>(i))};
    }
    if (i > fan_ + loops_) throw input_error("slot index out of range");
    return {v, static_cast<std::uint32_t>(i),
            virtual_edge_id(v, static_cast<std::uint32_t>(i), v, static_cast<std::uint32_t>(i))};
}

// --- bounded average degree --------------------------------------------------

std::size_t VirtualGraph::degree_avg(Vertex v) const {
    if (v < n_) {
        if (in_high_set(v)) return 0;
        return base_degree(v) + dbar_;
    }
    if (v < 2 * n_) {
        const Vertex real = static_cast<Vertex>(v - n_);
        return in_high_set(real) ? 0 : dbar_ + loops_;
    }
    const Vertex real = static_cast<Vertex>((v - 2 * n_) / group_stride_);
    const std::size_t group = (v - 2 * n_) % group_stride_ + 1;  // 1-based
    if (in_high_set(real)) return 0;
    const std::size_t d = base_degree(real);
    const std::size_t groups = (d + dbar_ - 1) / dbar_;
    return group <= groups ? dbar_ + loops_ : 0;
}

NeighborRef VirtualGraph::neighbor_avg(Vertex v, std::size_t i) const {
    if (v < n_) {
        if (in_high_set(v)) throw input_error("slot index out of range");
        const std::size_t d = base_degree(v);
        if (i <= d) {
            NeighborRef nb = base_->neighbor(v, i);
            if (static_cast<double>(base_degree(nb.other)) > tau_) {
                const std::size_t group = (i - 1) / dbar_ + 1;
                const Vertex gv = static_cast<Vertex>(2 * n_ + v * group_stride_ + group - 1);
                const std::uint32_t back = static_cast<std::uint32_t>(i - (group - 1) * dbar_);
                return {gv, back, virtual_edge_id(v, static_cast<std::uint32_t>(i), gv, back)};
            }
            nb.edge = virtual_edge_id(v, static_cast<std::uint32_t>(i), nb.other, nb.reciprocal);
            return nb;
        }
        const std::size_t k = i - d;
        if (k > dbar_) throw input_error("slot index out of range");
        const Vertex shadow = static_cast<Vertex>(n_ + v);
        return {shadow, static_cast<std::uint32_t>(k),
                virtual_edge_id(v, static_cast<std::uint32_t>(i), shadow, static_cast<std::uint32_t>(k))};
    }
    if (v < 2 * n_) {
        const Vertex real = static_cast<Vertex>(v - n_);
        if (in_high_set(real)) throw input_error("slot index out of range");
        if (i <= dbar_) {
            const std::uint32_t back = static_cast<std::uint32_t>(base_degree(real) + i);
            return {real, back, virtual_edge_id(real, back, v, static_cast<std::uint32_t>(i))};
        }
        if (i > dbar_ + loops_) throw input_error("slot index out of range");
        return {v, static_cast<std::uint32_t>(i),
                virtual_edge_id(v, static_cast<std::uint32_t>(i), v, static_cast<std::uint32_t>(i))};
    }
    const Vertex real = static_cast<Vertex>((v - 2 * n_) / group_stride_);
    const std::size_t group = (v - 2 * n_) % group_stride_ + 1;
    if (in_high_set(real)) throw input_error("slot index out of range");
    const std::size_t d = base_degree(real);
    if (group > (d + dbar_ - 1) / dbar_) throw input_error("slot index out of range");
    if (i <= dbar_) {
        const std::size_t t = (group - 1) * dbar_ + i;
        if (t <= d) {
            NeighborRef nb = base_->neighbor(real, t);
            if (static_cast<double>(base_degree(nb.other)) > tau_) {
                const std::uint32_t back = static_cast<std::uint32_t>(t);
                return {real, back, virtual_edge_id(real, back, v, static_cast<std::uint32_t>(i))};
            }
        }
        return {v, static_cast<std::uint32_t>(i),
                virtual_edge_id(v, static_cast<std::uint32_t>(i), v, static_cast<std::uint32_t>(i))};
    }
    if (i > dbar_ + loops_) throw input_error("slot index out of range");
    return {v, static_cast<std::uint32_t>(i),
            virtual_edge_id(v, static_cast<std::uint32_t>(i), v, static_cast<std::uint32_t>(i))};
}

// --- dense (vertex-pair query model) -----------------------------------------

std::size_t VirtualGraph::degree_dense(Vertex v) const {
    return v < n_ ? n_ : n_ + loops_;
}

NeighborRef VirtualGraph::neighbor_dense(Vertex v, std::size_t i) const {
    if (v < n_) {
        if (i > n_) throw input_error("slot index out of range");
        const Vertex cand = static_cast<Vertex>(i - 1);
        if (base_->pair(v, cand)) {
            const std::uint32_t back = static_cast<std::uint32_t>(v + 1);
            return {cand, v == cand ? static_cast<std::uint32_t>(i) : back,
                    virtual_edge_id(v, static_cast<std::uint32_t>(i), cand,
                                    v == cand ? static_cast<std::uint32_t>(i) : back)};
        }
        const Vertex shadow = static_cast<Vertex>(n_ + v);
        return {shadow, static_cast<std::uint32_t>(i),
                virtual_edge_id(v, static_cast<std::uint32_t>(i), shadow, static_cast<std::uint32_t>(i))};
    }
    const Vertex real = static_cast<Vertex>(v - n_);
    if (i <= n_) {
        if (!base_->pair(real, static_cast<Vertex>(i - 1)))
            return {real, static_cast<std::uint32_t>(i),
                    virtual_edge_id(real, static_cast<std::uint32_t>(i), v, static_cast<std::uint32_t>(i))};
        return {v, static_cast<std::uint32_t>(i),
                virtual_edge_id(v, static_cast<std::uint32_t>(i), v, static_cast<std::uint32_t>(i))};
    }
    if (i > n_ + loops_) throw input_error("slot index out of range");
    return {v, static_cast<std::uint32_t>(i),
            virtual_edge_id(v, static_cast<std::uint32_t>(i), v, static_cast<std::uint32_t>(i))};
}

bool VirtualGraph::pair(Vertex u, Vertex v) const {
    if (u >= total_ || v >= total_) throw input_error("vertex out of range");
    if (u < n_ && v < n_) return base_->pair(u, v);
    throw state_error("pair queries on shadow vertices are not supported");
}

bool VirtualGraph::supports_pair() const {
    return mode_ != TransformMode::avg_degree && base_->supports_pair();
}

std::optional<bool> high_degree_shortcut(const GraphQueries& g, std::size_t dbar, double eps,
                                         Vertex v) {
    if (!(eps > 0.0 && eps < 1.0)) throw input_error("eps must be in (0,1)");
    const double tau = 8.0 * static_cast<double>(dbar) / eps;
    if (static_cast<double>(g.degree(v)) > tau) return true;
    return std::nullopt;
}

}  // namespace subvc
