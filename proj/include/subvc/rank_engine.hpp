#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "subvc/multigraph.hpp"
#include "subvc/rng.hpp"

namespace subvc {

/// Discretized random number sigma(e) in (0,1]. `level` selects the dyadic
/// interval: level i covers (2^-i, 2^-i+1] for i <= dstar and (0, 2^-dstar]
/// for i = dstar+1; `offset` places the value uniformly inside it. Exact
/// (level, offset) ties are broken by a canonical edge key, so the order is
/// total. level 0 is the +infinity sentinel returned when a list runs out.
struct RankValue {
    std::uint32_t level = 0;
    std::uint64_t offset = 0;
    Vertex tb_u = 0;
    Vertex tb_v = 0;
    std::uint32_t tb_slot = 0;

    bool infinite() const { return level == 0; }
    static RankValue infinity() { return RankValue{}; }

    friend bool operator==(const RankValue& a, const RankValue& b) {
        return a.level == b.level && a.offset == b.offset && a.tb_u == b.tb_u &&
               a.tb_v == b.tb_v && a.tb_slot == b.tb_slot;
    }
    friend bool operator!=(const RankValue& a, const RankValue& b) { return !(a == b); }

    // Numerically smaller values first; a higher level means a smaller value.
    friend bool operator<(const RankValue& a, const RankValue& b) {
        if (a.level != b.level) return a.level > b.level;
        if (a.offset != b.offset) return a.offset < b.offset;
        if (a.tb_u != b.tb_u) return a.tb_u < b.tb_u;
        if (a.tb_v != b.tb_v) return a.tb_v < b.tb_v;
        return a.tb_slot < b.tb_slot;
    }
};

/// Dyadic boundary num / 2^den_log2 in {0} union {2^i : -dstar <= i <= 0}.
struct Boundary {
    std::uint64_t num = 0;
    std::uint32_t den_log2 = 0;

    double value() const {
        return static_cast<double>(num) / static_cast<double>(std::uint64_t(1) << den_log2);
    }
    friend bool operator==(const Boundary& a, const Boundary& b) {
        return a.num == b.num && a.den_log2 == b.den_log2;
    }
};

/// Draws from a distribution within total-variation distance 1/q of
/// Binomial(k, a/b). Cost is proportional to max{k*a/b, 1} * log q.
std::uint64_t sample_binomial(std::uint64_t k, std::uint64_t a, std::uint64_t b, std::uint64_t q,
                              Prng& prng);

/// The aligned integer weights the sampler draws from; exposed so the exact
/// output distribution can be enumerated. weights[i] is proportional to the
/// probability of returning i; entries above `s` are zero.
struct BinomialWeights {
    std::vector<unsigned __int128> weights;
    std::uint64_t s = 0;
};
BinomialWeights binomial_weights(std::uint64_t k, std::uint64_t a, std::uint64_t b, std::uint64_t q);

/// Tentative label set for one interval advance: each label of {1..deg} is
/// included independently with probability (next_lb - lb) / (1 - lb),
/// realized as a binomial count followed by a uniform subset. Returns the
/// labels in ascending order.
std::vector<std::uint32_t> select_tentative(std::size_t deg, Boundary lb, Boundary next_lb,
                                            std::uint64_t q, Prng& prng);

/// Rank with the given level and a fresh uniform offset; tiebreak left zero.
RankValue sample_rank_in(std::uint32_t level, Prng& prng);

/// Lazy, consistent assignment of random numbers to edges through per-vertex
/// states, revealing each vertex's incident edges in ascending rank order
/// one dyadic interval at a time.
class RankEngine {
public:
    /// `max_degree_bound` is the configured d (>= actual max degree of the
    /// view); `q` is the binomial sampler quality.
    RankEngine(const GraphQueries& g, std::size_t max_degree_bound, std::uint64_t seed,
               std::uint64_t q);

    /// k-th smallest-ranked distinct neighbor of v; (v, infinity) when fewer
    /// than k distinct entries exist even at lb = 1.
    std::pair<Vertex, RankValue> lowest(Vertex v, std::size_t k);

    Boundary lower_bound(Vertex v) const;

    /// Notification that the rank of an edge (v,w) was fixed by w's side.
    void set_value(Vertex v, Vertex w, RankValue r);

    /// Advances v until lb = 1.
    void materialize(Vertex v);

    bool at_top(Vertex v) const;

    std::optional<RankValue> assigned_value(Vertex v, Vertex w) const;
    const std::vector<std::pair<Vertex, RankValue>>& revealed(Vertex v);

    std::uint32_t dstar() const { return dstar_; }
    std::uint32_t interval_count() const { return dstar_ + 1; }
    std::uint64_t q() const { return q_; }

    double numeric(const RankValue& r) const;

    Boundary boundary_of(std::uint32_t completed) const;

    /// JSON dump of one vertex's state, for test diffing.
    std::string debug_dump(Vertex v) const;

private:
    struct Entry {
        RankValue r;
        bool emitted = false;
    };
    struct State {
        std::uint32_t advances = 0;
        std::unordered_map<Vertex, Entry> assigned;
        std::vector<std::pair<Vertex, RankValue>> sorted;
    };

    State& state(Vertex v);
    const State* peek(Vertex v) const;
    void advance(Vertex v, State& st);

    const GraphQueries* g_;
    std::uint32_t dstar_;
    std::uint64_t q_;
    RngStream rng_;
    std::vector<std::unique_ptr<State>> states_;
    static const std::vector<std::pair<Vertex, RankValue>> empty_sorted_;
};

std::uint32_t ceil_log2(std::uint64_t x);

}  // namespace subvc
