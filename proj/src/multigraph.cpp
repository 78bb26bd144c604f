#include "subvc/multigraph.hpp"

#include <algorithm>
#include <sstream>

#include "subvc/rng.hpp"

namespace subvc {

MultiGraph::MultiGraph(std::size_t n, std::vector<Edge> edges) {
    slots_.resize(n);
    edges_ = std::move(edges);
    for (std::size_t e = 0; e < edges_.size(); ++e) {
        const Edge& ed = edges_[e];
        if (ed.u >= n || ed.v >= n)
            throw input_error("edge endpoint out of range");
        if (ed.u == ed.v) {
            auto& lu = slots_[ed.u];
            lu.push_back({ed.u, static_cast<std::uint32_t>(lu.size() + 1), static_cast<EdgeId>(e)});
        } else {
            auto& lu = slots_[ed.u];
            auto& lv = slots_[ed.v];
            const auto iu = static_cast<std::uint32_t>(lu.size() + 1);
            const auto iv = static_cast<std::uint32_t>(lv.size() + 1);
            lu.push_back({ed.v, iv, static_cast<EdgeId>(e)});
            lv.push_back({ed.u, iu, static_cast<EdgeId>(e)});
        }
    }
}

MultiGraph MultiGraph::parse(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    auto next_line = [&](bool required) -> bool {
        while (std::getline(in, line)) {
            ++line_no;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (!line.empty()) return true;
        }
        if (required)
            throw parse_error("unexpected end of input at line " + std::to_string(line_no + 1));
        return false;
    };

    if (!next_line(true)) {}
    std::istringstream header(line);
    long long n = -1, m = -1;
    if (!(header >> n >> m) || n < 0 || m < 0)
        throw parse_error("bad header at line " + std::to_string(line_no));

    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(m));
    for (long long e = 0; e < m; ++e) {
        next_line(true);
        std::istringstream row(line);
        long long u = -1, v = -1;
        if (!(row >> u >> v) || u < 0 || v < 0)
            throw parse_error("bad edge at line " + std::to_string(line_no));
        if (u >= n || v >= n)
            throw parse_error("vertex out of range at line " + std::to_string(line_no));
        edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v)});
    }
    if (next_line(false))
        throw parse_error("trailing content at line " + std::to_string(line_no));
    return MultiGraph(static_cast<std::size_t>(n), std::move(edges));
}

MultiGraph MultiGraph::parse(const std::string& text) {
    std::istringstream in(text);
    return parse(in);
}

std::string MultiGraph::serialize() const {
    std::ostringstream out;
    out << vertex_count() << ' ' << edge_count() << '\n';
    for (const Edge& e : edges_) out << e.u << ' ' << e.v << '\n';
    return out.str();
}

void MultiGraph::check_vertex(Vertex v) const {
    if (v >= slots_.size()) throw input_error("vertex out of range");
}

std::size_t MultiGraph::degree(Vertex v) const {
    check_vertex(v);
    return slots_[v].size();
}

const MultiGraph::Slot& MultiGraph::slot(Vertex v, std::size_t i) const {
    check_vertex(v);
    if (i < 1 || i > slots_[v].size()) throw input_error("slot index out of range");
    return slots_[v][i - 1];
}

void MultiGraph::build_pair_index() {
    if (pair_index_built_) return;
    pair_index_.reserve(edges_.size() * 2);
    for (const Edge& e : edges_) pair_index_.insert(pack_pair(e.u, e.v));
    pair_index_built_ = true;
}

bool MultiGraph::pair(Vertex u, Vertex v) const {
    check_vertex(u);
    check_vertex(v);
    if (!pair_index_built_) throw state_error("pair-query index not built");
    return pair_index_.count(pack_pair(u, v)) > 0;
}

std::size_t MultiGraph::max_degree() const {
    std::size_t d = 0;
    for (const auto& l : slots_) d = std::max(d, l.size());
    return d;
}

std::size_t MultiGraph::slot_degree_sum() const {
    std::size_t s = 0;
    for (const auto& l : slots_) s += l.size();
    return s;
}

std::size_t MultiGraph::loop_count() const {
    std::size_t c = 0;
    for (const Edge& e : edges_)
        if (e.u == e.v) ++c;
    return c;
}

void MultiGraph::shuffle_slots(std::uint64_t seed) {
    Prng prng(seed);
    for (auto& l : slots_) {
        for (std::size_t i = l.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(prng.below(i));
            std::swap(l[i - 1], l[j]);
        }
    }
    // Rebuild reciprocal indices: locate each edge's one or two slot positions.
    std::vector<std::pair<Vertex, std::uint32_t>> first(edges_.size(), {0, 0});
    std::vector<bool> seen(edges_.size(), false);
    for (Vertex v = 0; v < slots_.size(); ++v) {
        for (std::uint32_t i = 0; i < slots_[v].size(); ++i) {
            EdgeId e = slots_[v][i].edge;
            if (!seen[e]) {
                seen[e] = true;
                first[e] = {v, i + 1};
            } else {
                auto [w, j] = first[e];
                slots_[v][i].reciprocal = j;
                slots_[w][j - 1].reciprocal = i + 1;
            }
        }
    }
    for (std::size_t e = 0; e < edges_.size(); ++e) {
        if (edges_[e].u == edges_[e].v) {
            auto [v, i] = first[e];
            slots_[v][i - 1].reciprocal = i;
        }
    }
}

MultiGraph MultiGraph::from_slots(std::vector<std::vector<Slot>> slots, std::size_t edge_count) {
    MultiGraph g;
    g.slots_ = std::move(slots);
    g.edges_.assign(edge_count, Edge{});
    std::vector<bool> seen(edge_count, false);
    for (Vertex v = 0; v < g.slots_.size(); ++v) {
        for (std::uint32_t i = 1; i <= g.slots_[v].size(); ++i) {
            const Slot& s = g.slots_[v][i - 1];
            if (s.edge >= edge_count) throw state_error("edge id out of range in slot table");
            if (s.other >= g.slots_.size()) throw state_error("endpoint out of range in slot table");
            const Slot& back = g.slots_[s.other][s.reciprocal - 1];
            if (back.other != v || back.reciprocal != i || back.edge != s.edge)
                throw state_error("slot table violates reciprocity");
            if (!seen[s.edge]) {
                seen[s.edge] = true;
                g.edges_[s.edge] = {std::min(v, s.other), std::max(v, s.other)};
            }
        }
    }
    for (bool b : seen)
        if (!b) throw state_error("edge ids not dense");
    return g;
}

std::size_t CountingGraph::degree(Vertex v) const {
    ++stats_->degree_queries;
    return g_->degree(v);
}

NeighborRef CountingGraph::neighbor(Vertex v, std::size_t i) const {
    ++stats_->neighbor_queries;
    const auto& s = g_->slot(v, i);
    return {s.other, s.reciprocal, s.edge};
}

bool CountingGraph::pair(Vertex u, Vertex v) const {
    ++stats_->pair_queries;
    return g_->pair(u, v);
}

}  // namespace subvc
