#include <algorithm>
#include <cassert>
#include <cmath>
#include <sstream>

#include "subvc/estimator.hpp"
#include "subvc/oracles.hpp"
#include "subvc/rank_engine.hpp"
#include "subvc/rng.hpp"
#include "subvc/verify.hpp"

namespace subvc::verify {

using u128 = unsigned __int128;

BigUint::BigUint(std::uint64_t v) {
    if (v) limbs_.push_back(v);
}

BigUint BigUint::from_u128(u128 v) {
    BigUint r;
    if (v) r.limbs_.push_back(static_cast<std::uint64_t>(v));
    if (v >> 64) r.limbs_.push_back(static_cast<std::uint64_t>(v >> 64));
    return r;
}

void BigUint::trim() {
    while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
}

BigUint& BigUint::operator+=(const BigUint& o) {
    limbs_.resize(std::max(limbs_.size(), o.limbs_.size()) + 1, 0);
    u128 carry = 0;
    for (std::size_t i = 0; i < limbs_.size(); ++i) {
        u128 s = carry + limbs_[i];
        if (i < o.limbs_.size()) s += o.limbs_[i];
        limbs_[i] = static_cast<std::uint64_t>(s);
        carry = s >> 64;
    }
    assert(carry == 0);
    trim();
    return *this;
}

BigUint BigUint::operator*(const BigUint& o) const {
    BigUint r;
    if (limbs_.empty() || o.limbs_.empty()) return r;
    r.limbs_.assign(limbs_.size() + o.limbs_.size(), 0);
    for (std::size_t i = 0; i < limbs_.size(); ++i) {
        u128 carry = 0;
        for (std::size_t j = 0; j < o.limbs_.size(); ++j) {
            u128 s = static_cast<u128>(limbs_[i]) * o.limbs_[j] + r.limbs_[i + j] + carry;
            r.limbs_[i + j] = static_cast<std::uint64_t>(s);
            carry = s >> 64;
        }
        r.limbs_[i + o.limbs_.size()] += static_cast<std::uint64_t>(carry);
    }
    r.trim();
    return r;
}

BigUint& BigUint::mul_small(std::uint64_t m) {
    if (m == 0) {
        limbs_.clear();
        return *this;
    }
    u128 carry = 0;
    for (auto& l : limbs_) {
        u128 s = static_cast<u128>(l) * m + carry;
        l = static_cast<std::uint64_t>(s);
        carry = s >> 64;
    }
    if (carry) limbs_.push_back(static_cast<std::uint64_t>(carry));
    return *this;
}

int BigUint::compare(const BigUint& o) const {
    if (limbs_.size() != o.limbs_.size()) return limbs_.size() < o.limbs_.size() ? -1 : 1;
    for (std::size_t i = limbs_.size(); i-- > 0;)
        if (limbs_[i] != o.limbs_[i]) return limbs_[i] < o.limbs_[i] ? -1 : 1;
    return 0;
}

BigUint BigUint::diff(const BigUint& a, const BigUint& b) {
    const BigUint *hi = &a, *lo = &b;
    if (a.compare(b) < 0) std::swap(hi, lo);
    BigUint r;
    r.limbs_.assign(hi->limbs_.size(), 0);
    std::int64_t borrow = 0;
    for (std::size_t i = 0; i < hi->limbs_.size(); ++i) {
        u128 top = hi->limbs_[i];
        u128 sub = (i < lo->limbs_.size() ? lo->limbs_[i] : 0) + (borrow ? 1 : 0);
        if (top >= sub) {
            r.limbs_[i] = static_cast<std::uint64_t>(top - sub);
            borrow = 0;
        } else {
            r.limbs_[i] = static_cast<std::uint64_t>((u128(1) << 64) + top - sub);
            borrow = 1;
        }
    }
    assert(borrow == 0);
    r.trim();
    return r;
}

std::string BigUint::to_string() const {
    if (limbs_.empty()) return "0";
    std::ostringstream out;
    out << std::hex;
    for (std::size_t i = limbs_.size(); i-- > 0;) out << limbs_[i] << (i ? "_" : "");
    return out.str();
}

bool binomial_tv_within(std::uint64_t k, std::uint64_t a, std::uint64_t b, std::uint64_t q) {
    if (k == 0 || k > 64 || a == 0 || a > b) throw input_error("oracle supports 1 <= k <= 64, a <= b");
    if (a == b) return true;  // sampler answers k deterministically

    const BinomialWeights w = binomial_weights(k, a, b, q);

    BigUint total_weight(0);
    for (u128 x : w.weights) total_weight += BigUint::from_u128(x);

    // Exact binomial pmf numerators over denominator b^k.
    std::vector<std::vector<std::uint64_t>> choose(k + 1, std::vector<std::uint64_t>(k + 1, 0));
    for (std::size_t i = 0; i <= k; ++i) {
        choose[i][0] = 1;
        for (std::size_t j = 1; j <= i; ++j)
            choose[i][j] = choose[i - 1][j - 1] + (j <= i - 1 ? choose[i - 1][j] : 0);
    }
    auto upow = [](std::uint64_t base, std::uint64_t e) {
        BigUint r(1);
        for (std::uint64_t i = 0; i < e; ++i) r.mul_small(base);
        return r;
    };
    BigUint denom = upow(b, k);

    BigUint acc(0);
    for (std::uint64_t i = 0; i <= k; ++i) {
        BigUint ni = upow(a, i) * upow(b - a, k - i);
        ni.mul_small(choose[k][i]);
        const BigUint lhs = ni * total_weight;
        const BigUint rhs =
            (i < w.weights.size() ? BigUint::from_u128(w.weights[i]) : BigUint(0)) * denom;
        acc += BigUint::diff(lhs, rhs);
    }

    // TV = acc / (2 * denom * total_weight) <= 1/q.
    BigUint lhs = acc;
    lhs.mul_small(q);
    BigUint rhs = denom * total_weight;
    rhs.mul_small(2);
    return lhs <= rhs;
}

double ks_statistic(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    const double n = static_cast<double>(values.size());
    double d = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double f = values[i];  // uniform(0,1] cdf
        d = std::max(d, f - static_cast<double>(i) / n);
        d = std::max(d, static_cast<double>(i + 1) / n - f);
    }
    return d;
}

double chi2_crit_999(std::size_t df) {
    static const double crit[] = {0,      10.828, 13.816, 16.266, 18.467, 20.515,
                                  22.458, 24.322, 26.125, 27.877, 29.588};
    if (df < 1 || df > 10) throw input_error("chi-square table covers df 1..10");
    return crit[df];
}

namespace {

constexpr EdgeId kUnassigned = 0xFFFFFFFFu;

struct SlotBuilder {
    std::vector<std::vector<MultiGraph::Slot>> slots;

    explicit SlotBuilder(std::size_t total) : slots(total) {}

    void ensure(Vertex v, std::size_t i) {
        if (slots[v].size() < i) slots[v].resize(i, {0, 0, kUnassigned});
    }
    void connect(Vertex v, std::uint32_t i, Vertex w, std::uint32_t j) {
        ensure(v, i);
        ensure(w, j);
        slots[v][i - 1] = {w, j, kUnassigned};
        slots[w][j - 1] = {v, i, kUnassigned};
    }
    void loop(Vertex v, std::uint32_t i) {
        ensure(v, i);
        slots[v][i - 1] = {v, i, kUnassigned};
    }
    MultiGraph build() {
        EdgeId next = 0;
        for (Vertex v = 0; v < slots.size(); ++v) {
            for (std::uint32_t i = 1; i <= slots[v].size(); ++i) {
                MultiGraph::Slot& s = slots[v][i - 1];
                if (s.edge != kUnassigned) continue;
                s.edge = next;
                slots[s.other][s.reciprocal - 1].edge = next;
                ++next;
            }
        }
        return MultiGraph::from_slots(std::move(slots), next);
    }
};

}  // namespace

MultiGraph materialize_bounded_degree(const MultiGraph& g, std::size_t d, double eps) {
    const std::size_t n = g.vertex_count();
    const std::size_t fan = static_cast<std::size_t>(eps * static_cast<double>(d));
    const std::size_t loops = 8 * d;
    SlotBuilder sb(2 * n);
    for (Vertex v = 0; v < n; ++v) {
        const std::size_t deg = g.degree(v);
        for (std::uint32_t i = 1; i <= deg; ++i) {
            const auto& s = g.slot(v, i);
            if (s.other > v || (s.other == v && s.reciprocal >= i))
                sb.connect(v, i, s.other, s.reciprocal);
        }
        const Vertex shadow = static_cast<Vertex>(n + v);
        for (std::uint32_t k = 1; k <= fan; ++k)
            sb.connect(v, static_cast<std::uint32_t>(deg + k), shadow, k);
        for (std::uint32_t t = 1; t <= loops; ++t)
            sb.loop(shadow, static_cast<std::uint32_t>(fan + t));
    }
    return sb.build();
}

MultiGraph materialize_bounded_average(const MultiGraph& g, std::size_t dbar, double eps) {
    const std::size_t n = g.vertex_count();
    const double tau = 8.0 * static_cast<double>(dbar) / eps;
    const std::size_t loops =
        static_cast<std::size_t>(std::ceil(32.0 * static_cast<double>(dbar) / eps));
    const std::size_t stride = static_cast<std::size_t>(std::ceil(8.0 / eps));
    auto high = [&](Vertex v) { return static_cast<double>(g.degree(v)) > tau; };

    SlotBuilder sb(2 * n + n * stride);
    for (Vertex v = 0; v < n; ++v) {
        if (high(v)) continue;
        const std::size_t deg = g.degree(v);
        for (std::uint32_t t = 1; t <= deg; ++t) {
            const auto& s = g.slot(v, t);
            if (high(s.other)) {
                const std::size_t group = (t - 1) / dbar + 1;
                const Vertex gv = static_cast<Vertex>(2 * n + v * stride + group - 1);
                sb.connect(v, t, gv, static_cast<std::uint32_t>(t - (group - 1) * dbar));
            } else if (s.other > v || (s.other == v && s.reciprocal >= t)) {
                sb.connect(v, t, s.other, s.reciprocal);
            }
        }
        const Vertex shadow = static_cast<Vertex>(n + v);
        for (std::uint32_t k = 1; k <= dbar; ++k)
            sb.connect(v, static_cast<std::uint32_t>(deg + k), shadow, k);
        for (std::uint32_t t = 1; t <= loops; ++t)
            sb.loop(shadow, static_cast<std::uint32_t>(dbar + t));

        const std::size_t groups = deg == 0 ? 0 : (deg + dbar - 1) / dbar;
        for (std::size_t gi = 1; gi <= groups; ++gi) {
            const Vertex gv = static_cast<Vertex>(2 * n + v * stride + gi - 1);
            for (std::uint32_t j = 1; j <= dbar; ++j) {
                const std::size_t t = (gi - 1) * dbar + j;
                if (t > deg || !high(g.slot(v, t).other)) sb.loop(gv, j);
                // in-range high-neighbor slots were wired from v's side
            }
            for (std::uint32_t t = 1; t <= loops; ++t)
                sb.loop(gv, static_cast<std::uint32_t>(dbar + t));
        }
    }
    return sb.build();
}

MultiGraph materialize_dense(const MultiGraph& g, double eps) {
    const std::size_t n = g.vertex_count();
    const std::size_t loops = static_cast<std::size_t>(std::ceil(8.0 / eps)) * n;
    SlotBuilder sb(2 * n);
    for (Vertex v = 0; v < n; ++v) {
        const Vertex shadow = static_cast<Vertex>(n + v);
        for (std::uint32_t j = 1; j <= n; ++j) {
            const Vertex cand = static_cast<Vertex>(j - 1);
            if (g.pair(v, cand)) {
                if (cand == v)
                    sb.loop(v, j);
                else if (cand > v)
                    sb.connect(v, j, cand, static_cast<std::uint32_t>(v + 1));
                sb.loop(shadow, j);
            } else {
                sb.connect(v, j, shadow, j);
            }
        }
        for (std::uint32_t t = 1; t <= loops; ++t)
            sb.loop(shadow, static_cast<std::uint32_t>(n + t));
    }
    return sb.build();
}

std::optional<std::string> diff_against(const GraphQueries& wrapper, const MultiGraph& expected) {
    if (wrapper.vertex_count() != expected.vertex_count())
        return "vertex count " + std::to_string(wrapper.vertex_count()) + " vs " +
               std::to_string(expected.vertex_count());
    for (Vertex v = 0; v < expected.vertex_count(); ++v) {
        const std::size_t dw = wrapper.degree(v);
        const std::size_t de = expected.degree(v);
        if (dw != de)
            return "degree(" + std::to_string(v) + ") " + std::to_string(dw) + " vs " +
                   std::to_string(de);
        for (std::size_t i = 1; i <= de; ++i) {
            const NeighborRef nb = wrapper.neighbor(v, i);
            const auto& s = expected.slot(v, i);
            if (nb.other != s.other || nb.reciprocal != s.reciprocal)
                return "slot(" + std::to_string(v) + "," + std::to_string(i) + ") (" +
                       std::to_string(nb.other) + "," + std::to_string(nb.reciprocal) + ") vs (" +
                       std::to_string(s.other) + "," + std::to_string(s.reciprocal) + ")";
        }
    }
    return std::nullopt;
}

std::optional<std::string> equivalence_counterexample(const MultiGraph& g, std::uint64_t seed) {
    const std::size_t n = g.vertex_count();
    QueryStats stats;
    CountingGraph counted(g, stats);
    constexpr std::uint64_t quality = 1ULL << 40;
    OracleContext ctx(counted, std::max<std::size_t>(1, g.max_degree()), seed, quality);

    std::vector<char> lazy(n);
    for (Vertex v = 0; v < n; ++v) lazy[v] = ctx.covered(v) ? 1 : 0;
    for (Vertex v = 0; v < n; ++v)
        if (g.degree(v) > 0) ctx.engine().materialize(v);

    const auto ranking = derive_ranking(ctx.engine(), g);
    ReferenceOracle ref(g, ranking);

    for (Vertex v = 0; v < n; ++v)
        if ((lazy[v] != 0) != ref.covered(v))
            return "cover answer differs at vertex " + std::to_string(v);

    // Pair-level agreement on every distinct adjacent pair's group minimum.
    std::unordered_set<std::uint64_t> seen;
    for (const Edge& e : g.edges()) {
        const std::uint64_t key = pack_pair(e.u, e.v);
        if (!seen.insert(key).second) continue;
        const auto r = ctx.engine().assigned_value(e.u, e.v);
        if (!r) return "missing group rank for pair";
        const EdgeId carrier = g.slot(r->tb_u, r->tb_slot).edge;
        if (ctx.matched(e.u, e.v) != ref.matched(carrier))
            return "matching answer differs on pair (" + std::to_string(e.u) + "," +
                   std::to_string(e.v) + ")";
    }
    return std::nullopt;
}

MultiGraph shrink_by_vertex_deletion(MultiGraph g,
                                     const std::function<bool(const MultiGraph&)>& fails) {
    bool progress = true;
    while (progress && g.vertex_count() > 1) {
        progress = false;
        for (Vertex victim = 0; victim < g.vertex_count(); ++victim) {
            std::vector<Edge> kept;
            for (const Edge& e : g.edges()) {
                if (e.u == victim || e.v == victim) continue;
                kept.push_back({e.u > victim ? static_cast<Vertex>(e.u - 1) : e.u,
                                e.v > victim ? static_cast<Vertex>(e.v - 1) : e.v});
            }
            MultiGraph candidate(g.vertex_count() - 1, std::move(kept));
            if (fails(candidate)) {
                g = std::move(candidate);
                progress = true;
                break;
            }
        }
    }
    return g;
}

void for_each_small_multigraph(std::size_t max_n, std::size_t max_m,
                               const std::function<void(const MultiGraph&)>& fn) {
    for (std::size_t n = 1; n <= max_n; ++n) {
        std::vector<Edge> types;
        for (Vertex u = 0; u < n; ++u)
            for (Vertex v = u; v < n; ++v) types.push_back({u, v});
        std::vector<Edge> edges;
        auto rec = [&](auto&& self, std::size_t start) -> void {
            fn(MultiGraph(n, edges));
            if (edges.size() == max_m) return;
            for (std::size_t t = start; t < types.size(); ++t) {
                edges.push_back(types[t]);
                self(self, t);
                edges.pop_back();
            }
        };
        rec(rec, 0);
    }
}

}  // namespace subvc::verify
