#include "subvc/rank_engine.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <sstream>

namespace subvc {

using u128 = unsigned __int128;

std::uint32_t ceil_log2(std::uint64_t x) {
    std::uint32_t r = 0;
    while ((std::uint64_t(1) << r) < x) ++r;
    return r;
}

std::uint64_t sample_binomial(std::uint64_t k, std::uint64_t a, std::uint64_t b, std::uint64_t q,
                              Prng& prng) {
    if (k == 0 || a > b || a == 0 || b == 0 || q <= 1) throw input_error("bad binomial sampler arguments");
    if (a == b) return k;
    BinomialWeights w = binomial_weights(k, a, b, q);
    u128 total = 0;
    for (u128 x : w.weights) total += x;
    u128 pick = prng.below_u128(total);
    u128 acc = 0;
    for (std::size_t i = 0; i < w.weights.size(); ++i) {
        acc += w.weights[i];
        if (pick < acc) return i;
    }
    return w.weights.size() - 1;
}

BinomialWeights binomial_weights(std::uint64_t k, std::uint64_t a, std::uint64_t b,
                                 std::uint64_t q) {
    if (k == 0 || a == 0 || a >= b || q <= 1) throw input_error("bad binomial weight arguments");

    const double ratio = static_cast<double>(k) * static_cast<double>(a) / static_cast<double>(b);
    const double s_real = 6.0 * std::log(2.0 * static_cast<double>(q)) * std::max(1.0, ratio);
    const std::uint64_t s = std::min<std::uint64_t>(static_cast<std::uint64_t>(std::ceil(s_real)), k);

    // Significand width: alpha = ceil(log2((3Ck+2) * 4(k+1)^2 * q)), C = 4.
    const double alpha_real = std::log2(12.0 * static_cast<double>(k) + 2.0) + 2.0 +
                              2.0 * std::log2(static_cast<double>(k) + 1.0) +
                              std::log2(static_cast<double>(q));
    std::uint32_t alpha = static_cast<std::uint32_t>(std::ceil(alpha_real));
    alpha = std::max(alpha, ceil_log2(k * b) + 1);
    if (alpha + ceil_log2(k * b + 1) + 2 > 126) throw input_error("binomial sampler arguments too large");

    const u128 lo = u128(1) << alpha;
    const u128 hi = lo << 1;

    struct Term {
        u128 sig;
        std::int64_t exp;
    };
    std::vector<Term> t(s + 1);
    t[0] = {lo, -static_cast<std::int64_t>(alpha)};
    for (std::uint64_t i = 1; i <= s; ++i) {
        u128 v = t[i - 1].sig * (u128(k + 1 - i) * a);
        std::int64_t e = t[i - 1].exp;
        const u128 den = u128(i) * (b - a);
        // Keep the quotient at full significand width so the floor keeps the
        // per-step relative error below 2^-alpha.
        while (v < (den << alpha)) {
            v <<= 1;
            --e;
        }
        v /= den;
        assert(v >= lo);
        while (v >= hi) {
            v >>= 1;
            ++e;
        }
        t[i] = {v, e};
    }

    std::int64_t emax = t[0].exp;
    for (const Term& x : t) emax = std::max(emax, x.exp);

    BinomialWeights out;
    out.s = s;
    out.weights.resize(s + 1);
    for (std::uint64_t i = 0; i <= s; ++i) {
        const std::int64_t shift = emax - t[i].exp;
        out.weights[i] = shift >= 127 ? u128(0) : (t[i].sig >> shift);
    }
    return out;
}

std::vector<std::uint32_t> select_tentative(std::size_t deg, Boundary lb, Boundary next_lb,
                                            std::uint64_t q, Prng& prng) {
    std::vector<std::uint32_t> labels;
    if (deg == 0) return labels;
    if (lb.den_log2 != next_lb.den_log2 || lb.num >= next_lb.num)
        throw input_error("bad interval boundaries");
    const std::uint64_t den = std::uint64_t(1) << lb.den_log2;
    const std::uint64_t a = next_lb.num - lb.num;
    const std::uint64_t b = den - lb.num;

    std::uint64_t count = a == b ? deg : sample_binomial(deg, a, b, q, prng);
    if (count >= deg) {
        labels.resize(deg);
        for (std::size_t i = 0; i < deg; ++i) labels[i] = static_cast<std::uint32_t>(i + 1);
        return labels;
    }
    if (count == 0) return labels;

    // Uniform count-subset by partial Fisher-Yates over a sparse position map.
    std::unordered_map<std::uint64_t, std::uint64_t> moved;
    moved.reserve(count * 2);
    auto at = [&](std::uint64_t i) {
        auto it = moved.find(i);
        return it == moved.end() ? i : it->second;
    };
    labels.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) {
        std::uint64_t j = i + prng.below(deg - i);
        std::uint64_t vi = at(i), vj = at(j);
        moved[j] = vi;
        moved[i] = vj;
        labels.push_back(static_cast<std::uint32_t>(vj + 1));
    }
    std::sort(labels.begin(), labels.end());
    return labels;
}

RankValue sample_rank_in(std::uint32_t level, Prng& prng) {
    RankValue r;
    r.level = level;
    r.offset = prng.next();
    return r;
}

const std::vector<std::pair<Vertex, RankValue>> RankEngine::empty_sorted_{};

RankEngine::RankEngine(const GraphQueries& g, std::size_t max_degree_bound, std::uint64_t seed,
                       std::uint64_t q)
    : g_(&g),
      dstar_(ceil_log2(std::max<std::size_t>(max_degree_bound, 1))),
      q_(q),
      rng_(seed),
      states_(g.vertex_count()) {
    if (q_ <= 1) throw input_error("sampler quality must exceed 1");
}

RankEngine::State& RankEngine::state(Vertex v) {
    if (v >= states_.size()) throw input_error("vertex out of range");
    auto& p = states_[v];
    if (!p) p = std::make_unique<State>();
    return *p;
}

const RankEngine::State* RankEngine::peek(Vertex v) const {
    if (v >= states_.size()) throw input_error("vertex out of range");
    return states_[v].get();
}

Boundary RankEngine::boundary_of(std::uint32_t completed) const {
    Boundary b;
    b.den_log2 = dstar_;
    b.num = completed == 0 ? 0 : (std::uint64_t(1) << (completed - 1));
    return b;
}

Boundary RankEngine::lower_bound(Vertex v) const {
    const State* st = peek(v);
    return boundary_of(st ? st->advances : 0);
}

void RankEngine::set_value(Vertex v, Vertex w, RankValue r) {
    State& st = state(v);
    auto& entry = st.assigned[w];
    assert(entry.r.infinite() || !(entry.r < r));
    entry.r = r;
    entry.emitted = false;
}

void RankEngine::advance(Vertex v, State& st) {
    const std::uint32_t c = st.advances;
    const std::uint32_t level = dstar_ + 1 - c;
    const Boundary lb = boundary_of(c);
    const Boundary next_lb = boundary_of(c + 1);

    // Ranks already fixed by the other endpoints that fall in this interval.
    std::vector<std::pair<Vertex, RankValue>> batch;
    for (auto& [w, entry] : st.assigned)
        if (!entry.emitted && entry.r.level == level) batch.push_back({w, entry.r});

    auto batch_find = [&](Vertex w) {
        for (auto& p : batch)
            if (p.first == w) return &p;
        return static_cast<std::pair<Vertex, RankValue>*>(nullptr);
    };

    const std::size_t deg = g_->degree(v);
    Prng prng = rng_.substream(v, c);
    const auto labels = select_tentative(deg, lb, next_lb, q_, prng);

    for (std::uint32_t t : labels) {
        const NeighborRef nb = g_->neighbor(v, t);
        const Vertex w = nb.other;
        RankValue r = sample_rank_in(level, prng);
        if (v < w || (v == w && t <= nb.reciprocal)) {
            r.tb_u = v;
            r.tb_v = w;
            r.tb_slot = t;
        } else {
            r.tb_u = w;
            r.tb_v = v;
            r.tb_slot = nb.reciprocal;
        }

        State& ws = state(w);
        if (ws.advances > c) continue;  // w already simulated this interval
        if (auto* hit = batch_find(w)) {
            if (r < hit->second) {
                st.assigned[w] = {r, false};
                set_value(w, v, r);
                hit->second = r;
            }
            continue;
        }
        if (st.assigned.find(w) == st.assigned.end()) {
            st.assigned[w] = {r, false};
            set_value(w, v, r);
            batch.push_back({w, r});
        }
    }

    std::sort(batch.begin(), batch.end(),
              [](const auto& a, const auto& b) { return a.second < b.second; });
    for (const auto& [w, r] : batch) {
        st.sorted.push_back({w, r});
        st.assigned[w].emitted = true;
    }
    st.advances = c + 1;
}

std::pair<Vertex, RankValue> RankEngine::lowest(Vertex v, std::size_t k) {
    if (k == 0) throw input_error("lowest index is 1-based");
    State& st = state(v);
    while (st.sorted.size() < k && st.advances < interval_count()) advance(v, st);
    if (st.sorted.size() < k) return {v, RankValue::infinity()};
    return st.sorted[k - 1];
}

void RankEngine::materialize(Vertex v) {
    State& st = state(v);
    while (st.advances < interval_count()) advance(v, st);
}

bool RankEngine::at_top(Vertex v) const {
    const State* st = peek(v);
    return st && st->advances == interval_count();
}

std::optional<RankValue> RankEngine::assigned_value(Vertex v, Vertex w) const {
    const State* st = peek(v);
    if (!st) return std::nullopt;
    auto it = st->assigned.find(w);
    if (it == st->assigned.end()) return std::nullopt;
    return it->second.r;
}

const std::vector<std::pair<Vertex, RankValue>>& RankEngine::revealed(Vertex v) {
    const State* st = peek(v);
    return st ? st->sorted : empty_sorted_;
}

double RankEngine::numeric(const RankValue& r) const {
    if (r.infinite()) return std::numeric_limits<double>::infinity();
    const long double width = std::exp2l(r.level == dstar_ + 1 ? -static_cast<long double>(dstar_)
                                                               : -static_cast<long double>(r.level));
    const long double lower = r.level == dstar_ + 1 ? 0.0L : width;
    const long double frac = (static_cast<long double>(r.offset) + 1.0L) * 0x1.0p-64L;
    return static_cast<double>(lower + width * frac);
}

std::string RankEngine::debug_dump(Vertex v) const {
    const State* st = peek(v);
    std::ostringstream out;
    out << "{\"vertex\":" << v << ",\"lb\":" << lower_bound(v).value() << ",\"sorted\":[";
    if (st) {
        bool first = true;
        for (const auto& [w, r] : st->sorted) {
            if (!first) out << ',';
            first = false;
            out << "{\"w\":" << w << ",\"level\":" << r.level << ",\"offset\":" << r.offset << "}";
        }
    }
    out << "]}";
    return out.str();
}

}  // namespace subvc
