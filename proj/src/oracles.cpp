#include "subvc/oracles.hpp"

#include <algorithm>
#include <cassert>

namespace subvc {

ReferenceOracle::ReferenceOracle(const MultiGraph& g, const std::vector<std::uint32_t>& ranking) {
    const std::size_t m = g.edge_count();
    if (ranking.size() != m) throw input_error("ranking size mismatch");
    std::vector<EdgeId> order(m);
    std::vector<bool> hit(m, false);
    for (std::size_t e = 0; e < m; ++e) {
        std::uint32_t r = ranking[e];
        if (r >= m || hit[r]) throw input_error("ranking is not a bijection");
        hit[r] = true;
        order[r] = static_cast<EdgeId>(e);
    }

    matched_.assign(m, false);
    covered_.assign(g.vertex_count(), false);
    for (EdgeId e : order) {
        const Edge& ed = g.edges()[e];
        if (covered_[ed.u] || covered_[ed.v]) continue;
        matched_[e] = true;
        ++matching_size_;
        covered_[ed.u] = true;
        covered_[ed.v] = true;
        cover_size_ += ed.u == ed.v ? 1 : 2;
    }
}

bool ReferenceOracle::matched(EdgeId e) const {
    if (e >= matched_.size()) throw input_error("unknown edge id");
    return matched_[e];
}

bool ReferenceOracle::covered(Vertex v) const {
    if (v >= covered_.size()) throw input_error("vertex out of range");
    return covered_[v];
}

OracleContext::OracleContext(const GraphQueries& g, std::size_t max_degree_bound,
                             std::uint64_t seed, std::uint64_t q)
    : g_(&g), engine_(g, max_degree_bound, seed, q) {}

void OracleContext::note_invocation(std::uint64_t key) {
    if (in_probe_) probe_pairs_.insert(key);
}

bool OracleContext::covered(Vertex v) {
    probe_pairs_.clear();
    in_probe_ = true;
    bool result = false;
    for (std::size_t i = 1;; ++i) {
        auto [w, r] = engine_.lowest(v, i);
        if (r.infinite()) break;
        if (matched_inner(v, w)) {
            result = true;
            break;
        }
    }
    in_probe_ = false;
    ++probes_;
    last_probe_calls_ = probe_pairs_.size();
    total_probe_calls_ += last_probe_calls_;
    max_probe_calls_ = std::max(max_probe_calls_, last_probe_calls_);
    return result;
}

bool OracleContext::matched(Vertex u, Vertex v) { return matched_inner(u, v); }

namespace {

struct MergeFrame {
    MergeFrame(Vertex u_, Vertex v_, std::uint64_t key_) : u(u_), v(v_), key(key_) {}

    Vertex u, v;
    std::uint64_t key;
    RankValue own_rank;
    std::size_t k1 = 1, k2 = 1;
    Vertex w1 = 0, w2 = 0;
    RankValue r1, r2;
    int pending_side = 0;  // which pointer waits on the child's answer
    bool initialized = false;
};

}  // namespace

bool OracleContext::matched_inner(Vertex u, Vertex v) {
    const std::uint64_t root_key = pack_pair(u, v);
    note_invocation(root_key);
    if (auto it = memo_.find(root_key); it != memo_.end()) return it->second;

    std::vector<MergeFrame> stack;
    stack.emplace_back(u, v, root_key);

    bool child_result = false;
    bool have_child_result = false;

    while (!stack.empty()) {
        MergeFrame& f = stack.back();

        if (!f.initialized) {
            f.initialized = true;
            ++memo_misses_;
            auto own = engine_.assigned_value(f.u, f.v);
            if (!own) throw state_error("matching oracle called before the pair's rank exists");
            f.own_rank = *own;
            std::tie(f.w1, f.r1) = engine_.lowest(f.u, f.k1);
            if (f.u != f.v) std::tie(f.w2, f.r2) = engine_.lowest(f.v, f.k2);
        } else if (have_child_result) {
            have_child_result = false;
            if (child_result) {
                memo_.emplace(f.key, false);
                child_result = false;  // this frame answers false
                have_child_result = true;
                stack.pop_back();
                continue;
            }
            if (f.pending_side == 1) {
                ++f.k1;
                std::tie(f.w1, f.r1) = engine_.lowest(f.u, f.k1);
            } else {
                ++f.k2;
                std::tie(f.w2, f.r2) = engine_.lowest(f.v, f.k2);
            }
        }

        // Two-pointer merge of the two neighbor lists in ascending rank order;
        // single-sided when the pair is a self-loop.
        bool answered = false;
        while (true) {
            const bool left_done = f.w1 == f.v;
            const bool right_done = f.u == f.v || f.w2 == f.u;
            if (left_done && right_done) {
                memo_.emplace(f.key, true);
                child_result = true;
                have_child_result = true;
                stack.pop_back();
                answered = true;
                break;
            }
            int side;
            if (left_done)
                side = 2;
            else if (right_done)
                side = 1;
            else
                side = f.r1 < f.r2 ? 1 : 2;

            const Vertex a = side == 1 ? f.u : f.v;
            const Vertex b = side == 1 ? f.w1 : f.w2;
            const RankValue& child_rank = side == 1 ? f.r1 : f.r2;
            if (child_rank.infinite() || !(child_rank < f.own_rank))
                throw state_error("recursion must descend in rank");

            const std::uint64_t child_key = pack_pair(a, b);
            note_invocation(child_key);
            if (auto it = memo_.find(child_key); it != memo_.end()) {
                if (it->second) {
                    memo_.emplace(f.key, false);
                    child_result = false;
                    have_child_result = true;
                    stack.pop_back();
                    answered = true;
                    break;
                }
                if (side == 1) {
                    ++f.k1;
                    std::tie(f.w1, f.r1) = engine_.lowest(f.u, f.k1);
                } else {
                    ++f.k2;
                    std::tie(f.w2, f.r2) = engine_.lowest(f.v, f.k2);
                }
                continue;
            }
            f.pending_side = side;
            stack.emplace_back(a, b, child_key);
            break;
        }
        (void)answered;
    }

    assert(have_child_result);
    return child_result;
}

std::vector<std::uint32_t> derive_ranking(const RankEngine& engine, const MultiGraph& g) {
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        if (g.degree(v) > 0 && !engine.at_top(v))
            throw state_error("engine not fully materialized");

    struct Group {
        RankValue min_rank;
        EdgeId carrier;
        std::vector<EdgeId> rest;
    };
    std::unordered_map<std::uint64_t, Group> groups;
    groups.reserve(g.edge_count());
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
        const Edge& ed = g.edges()[e];
        const std::uint64_t key = pack_pair(ed.u, ed.v);
        auto it = groups.find(key);
        if (it == groups.end()) {
            auto r = engine.assigned_value(ed.u, ed.v);
            if (!r) throw state_error("materialized engine misses a pair rank");
            // The carrier is the edge named by the rank's tiebreak key.
            const MultiGraph::Slot& s = g.slot(r->tb_u, r->tb_slot);
            assert(s.other == r->tb_v);
            groups.emplace(key, Group{*r, s.edge, {}});
            it = groups.find(key);
        }
        if (static_cast<EdgeId>(e) != it->second.carrier) it->second.rest.push_back(static_cast<EdgeId>(e));
    }

    std::vector<const Group*> order;
    order.reserve(groups.size());
    for (const auto& [key, grp] : groups) order.push_back(&grp);
    std::sort(order.begin(), order.end(),
              [](const Group* a, const Group* b) { return a->min_rank < b->min_rank; });

    std::vector<std::uint32_t> ranking(g.edge_count());
    std::uint32_t next = 0;
    for (const Group* grp : order) {
        ranking[grp->carrier] = next++;
        for (EdgeId e : grp->rest) ranking[e] = next++;
    }
    return ranking;
}

}  // namespace subvc
