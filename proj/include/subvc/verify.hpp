#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "subvc/multigraph.hpp"
#include "subvc/transforms.hpp"

namespace subvc::verify {

enum class Level { quick, full };

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

/// Runs the verification suite at the given scale, printing one PASS/FAIL
/// line per check; returns all results.
std::vector<CheckResult> run_all(Level level, std::ostream& out);

CheckResult check_oracle_equivalence(Level level);
CheckResult check_sandwich_bound(Level level);
CheckResult check_binomial_tv(Level level);
CheckResult check_rank_uniformity(Level level);
CheckResult check_recursive_call_scaling(Level level);
CheckResult check_query_scaling(Level level);
CheckResult check_transform_fidelity(Level level);
CheckResult check_shadow_race_bound(Level level);
CheckResult check_estimator_guarantee(Level level);
CheckResult check_biclique_family_cover(Level level);
CheckResult check_dense_pair_budget(Level level);

// --- support utilities (shared with the test suites) -------------------------

/// Unsigned big integer, little-endian 64-bit limbs. Just enough arithmetic
/// for exact total-variation accounting.
class BigUint {
public:
    BigUint() = default;
    explicit BigUint(std::uint64_t v);
    static BigUint from_u128(unsigned __int128 v);

    BigUint& operator+=(const BigUint& o);
    BigUint operator*(const BigUint& o) const;
    BigUint& mul_small(std::uint64_t m);
    static BigUint diff(const BigUint& a, const BigUint& b);  // |a - b|
    int compare(const BigUint& o) const;
    bool operator<=(const BigUint& o) const { return compare(o) <= 0; }
    bool is_zero() const { return limbs_.empty(); }
    std::string to_string() const;  // hex, for diagnostics

private:
    void trim();
    std::vector<std::uint64_t> limbs_;
};

/// Exact check that the sampler's output distribution for (k, a/b, Q) is
/// within total variation 1/Q of Binomial(k, a/b). Enumerates the integer
/// weights the sampler draws from and compares against the exact binomial
/// pmf in big-rational arithmetic. Valid for k <= 64.
bool binomial_tv_within(std::uint64_t k, std::uint64_t a, std::uint64_t b, std::uint64_t q);

/// Kolmogorov-Smirnov statistic of sorted-or-not samples against uniform(0,1].
double ks_statistic(std::vector<double> values);

/// 0.999 quantiles of chi-square, df 1..10.
double chi2_crit_999(std::size_t df);

// Eager, independent constructions of the three transformed graphs, built
// slot by slot from the layout rules. Used to diff against the wrappers.
MultiGraph materialize_bounded_degree(const MultiGraph& g, std::size_t d, double eps);
MultiGraph materialize_bounded_average(const MultiGraph& g, std::size_t dbar, double eps);
MultiGraph materialize_dense(const MultiGraph& g, double eps);

/// Slot-for-slot diff of a virtual graph against an explicit one; returns a
/// description of the first mismatch, if any. Edge ids are not compared.
std::optional<std::string> diff_against(const GraphQueries& wrapper, const MultiGraph& expected);

/// Lazy-vs-reference comparison on one (graph, seed): runs the cover oracle
/// on every vertex, materializes, derives the explicit ranking, and checks
/// vertex and pair answers against the greedy reference. Returns a mismatch
/// description or nullopt.
std::optional<std::string> equivalence_counterexample(const MultiGraph& g, std::uint64_t seed);

/// Minimizes a failing graph by repeated vertex deletion while `fails` holds.
MultiGraph shrink_by_vertex_deletion(
    MultiGraph g, const std::function<bool(const MultiGraph&)>& fails);

/// Enumerates every labeled multigraph with vertex count in [1, max_n] and
/// edge count in [0, max_m].
void for_each_small_multigraph(std::size_t max_n, std::size_t max_m,
                               const std::function<void(const MultiGraph&)>& fn);

}  // namespace subvc::verify
