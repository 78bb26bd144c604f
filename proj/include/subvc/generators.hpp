#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "subvc/multigraph.hpp"

namespace subvc {

/// Synthetic graph request, expressible as "family:key=value,...", e.g.
/// "regular:n=1000,d=10,seed=7" or "gnp:n=500,p=0.5,seed=1".
struct GenSpec {
    std::string family;
    std::size_t n = 0;
    std::size_t d = 0;          // regular degree / family parameter
    double p = 0.0;             // gnp edge probability
    std::size_t a = 0, b = 0;   // complete-bipartite part sizes
    std::uint64_t seed = 1;
    bool simple = false;        // regular: repair until loop- and parallel-free

    static GenSpec parse(const std::string& text);
    std::string to_string() const;
};

MultiGraph generate(const GenSpec& spec);

/// Exact minimum vertex cover size by branch and bound; refuses n > 24.
/// Self-loops force their vertex into every cover; parallel edges count once.
std::size_t brute_force_min_vc(const MultiGraph& g);

/// Greedy maximal matching for an explicit ranking (edge id -> 0-based rank).
/// Returns (matching size, cover size); a matched loop contributes one
/// cover vertex.
std::pair<std::size_t, std::size_t> greedy_matching(const MultiGraph& g,
                                                    const std::vector<std::uint32_t>& ranking);

/// K_{n/4,3n/4} with two swapped edges; minimum vertex cover n/4 + 1.
/// Adjacency lists are shuffled with the seed. Requires n % 4 == 0, n >= 8.
MultiGraph gen_lb_family(std::size_t n, std::uint64_t seed);

/// Configuration model: nd stubs paired uniformly; loops and parallel edges
/// retained unless `simple`, which repairs them with seeded edge swaps.
MultiGraph gen_regular(std::size_t n, std::size_t d, std::uint64_t seed, bool simple = false);

MultiGraph gen_gnp(std::size_t n, double p, std::uint64_t seed);

/// Uniform random multigraph with the given vertex and edge counts; loops and
/// parallel edges included. Test-corpus generator.
MultiGraph gen_random_multigraph(std::size_t n, std::size_t m, std::uint64_t seed);

}  // namespace subvc
