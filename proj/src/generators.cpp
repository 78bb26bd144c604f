#include "subvc/generators.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <unordered_map>

#include "subvc/rng.hpp"

namespace subvc {

GenSpec GenSpec::parse(const std::string& text) {
    GenSpec spec;
    const auto colon = text.find(':');
    spec.family = text.substr(0, colon);
    if (spec.family.empty()) throw input_error("generator spec needs a family name");
    std::string rest = colon == std::string::npos ? "" : text.substr(colon + 1);
    std::istringstream in(rest);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (item.empty()) continue;
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw input_error("bad generator parameter: " + item);
        const std::string key = item.substr(0, eq);
        const std::string value = item.substr(eq + 1);
        try {
            if (key == "n") spec.n = std::stoull(value);
            else if (key == "d") spec.d = std::stoull(value);
            else if (key == "p") spec.p = std::stod(value);
            else if (key == "a") spec.a = std::stoull(value);
            else if (key == "b") spec.b = std::stoull(value);
            else if (key == "seed") spec.seed = std::stoull(value);
            else if (key == "simple") spec.simple = value == "1" || value == "true";
            else throw input_error("unknown generator parameter: " + key);
        } catch (const std::invalid_argument&) {
            throw input_error("bad value for generator parameter: " + item);
        } catch (const std::out_of_range&) {
            throw input_error("bad value for generator parameter: " + item);
        }
    }
    return spec;
}

std::string GenSpec::to_string() const {
    std::ostringstream out;
    out << family << ":n=" << n;
    if (d) out << ",d=" << d;
    if (p > 0.0) out << ",p=" << p;
    if (a) out << ",a=" << a << ",b=" << b;
    out << ",seed=" << seed;
    if (simple) out << ",simple=1";
    return out.str();
}

namespace {

MultiGraph gen_named(const GenSpec& spec) {
    const std::size_t n = spec.n;
    std::vector<Edge> edges;
    if (spec.family == "empty") {
        return MultiGraph(n, {});
    }
    if (spec.family == "star") {
        if (n < 1) throw input_error("star needs n >= 1");
        for (Vertex i = 1; i < n; ++i) edges.push_back({0, i});
        return MultiGraph(n, std::move(edges));
    }
    if (spec.family == "path") {
        for (Vertex i = 0; i + 1 < n; ++i) edges.push_back({i, static_cast<Vertex>(i + 1)});
        return MultiGraph(n, std::move(edges));
    }
    if (spec.family == "cycle") {
        if (n < 2) throw input_error("cycle needs n >= 2");
        for (Vertex i = 0; i + 1 < n; ++i) edges.push_back({i, static_cast<Vertex>(i + 1)});
        edges.push_back({static_cast<Vertex>(n - 1), 0});
        return MultiGraph(n, std::move(edges));
    }
    if (spec.family == "complete") {
        for (Vertex u = 0; u < n; ++u)
            for (Vertex v = u + 1; v < n; ++v) edges.push_back({u, v});
        return MultiGraph(n, std::move(edges));
    }
    if (spec.family == "complete-bipartite") {
        if (spec.a == 0 || spec.b == 0) throw input_error("complete-bipartite needs a and b");
        for (Vertex u = 0; u < spec.a; ++u)
            for (Vertex v = 0; v < spec.b; ++v)
                edges.push_back({u, static_cast<Vertex>(spec.a + v)});
        return MultiGraph(spec.a + spec.b, std::move(edges));
    }
    if (spec.family == "matching") {
        if (n % 2 != 0) throw input_error("matching needs even n");
        for (Vertex i = 0; i < n; i += 2) edges.push_back({i, static_cast<Vertex>(i + 1)});
        return MultiGraph(n, std::move(edges));
    }
    throw input_error("unknown graph family: " + spec.family);
}

}  // namespace

MultiGraph generate(const GenSpec& spec) {
    if (spec.family == "regular") return gen_regular(spec.n, spec.d, spec.seed, spec.simple);
    if (spec.family == "gnp") return gen_gnp(spec.n, spec.p, spec.seed);
    if (spec.family == "lb-family") return gen_lb_family(spec.n, spec.seed);
    if (spec.family == "random-multigraph")
        return gen_random_multigraph(spec.n, spec.d, spec.seed);
    return gen_named(spec);
}

std::size_t brute_force_min_vc(const MultiGraph& g) {
    const std::size_t n = g.vertex_count();
    if (n > 24) throw input_error("brute force limited to n <= 24");

    std::vector<std::uint32_t> adj(n, 0);
    std::uint32_t forced = 0;
    for (const Edge& e : g.edges()) {
        if (e.u == e.v)
            forced |= 1u << e.u;
        else {
            adj[e.u] |= 1u << e.v;
            adj[e.v] |= 1u << e.u;
        }
    }

    std::size_t base = 0;
    std::uint32_t removed = forced;
    for (Vertex v = 0; v < n; ++v)
        if (forced & (1u << v)) ++base;
    std::vector<std::uint32_t> work(n);
    for (Vertex v = 0; v < n; ++v)
        work[v] = (removed & (1u << v)) ? 0 : (adj[v] & ~removed);

    std::size_t best = n;  // upper bound

    auto matching_bound = [&](const std::vector<std::uint32_t>& a) {
        std::uint32_t used = 0;
        std::size_t m = 0;
        for (Vertex v = 0; v < n; ++v) {
            if (used & (1u << v)) continue;
            std::uint32_t free = a[v] & ~used;
            if (free) {
                const Vertex w = static_cast<Vertex>(__builtin_ctz(free));
                used |= (1u << v) | (1u << w);
                ++m;
            }
        }
        return m;
    };

    // Branch on the highest-degree endpoint of an uncovered edge: either it
    // joins the cover, or all of its neighbors do.
    auto rec = [&](auto&& self, std::vector<std::uint32_t>& a, std::size_t size) -> void {
        if (size >= best) return;
        if (size + matching_bound(a) >= best) return;

        Vertex pick = 0;
        int maxdeg = 0;
        for (Vertex v = 0; v < n; ++v) {
            const int d = __builtin_popcount(a[v]);
            if (d > maxdeg) {
                maxdeg = d;
                pick = v;
            }
        }
        if (maxdeg == 0) {
            best = std::min(best, size);
            return;
        }
        if (maxdeg == 1) {  // remaining graph is a matching
            std::size_t extra = 0;
            std::uint32_t seen = 0;
            for (Vertex v = 0; v < n; ++v)
                if (a[v] && !(seen & (1u << v))) {
                    seen |= (1u << v) | a[v];
                    ++extra;
                }
            best = std::min(best, size + extra);
            return;
        }

        const std::uint32_t nb = a[pick];
        auto remove = [&](std::vector<std::uint32_t>& t, std::uint32_t mask) {
            for (Vertex v = 0; v < n; ++v) {
                if (mask & (1u << v))
                    t[v] = 0;
                else
                    t[v] &= ~mask;
            }
        };

        std::vector<std::uint32_t> t1 = a;
        remove(t1, 1u << pick);
        self(self, t1, size + 1);

        std::vector<std::uint32_t> t2 = a;
        remove(t2, nb);
        self(self, t2, size + static_cast<std::size_t>(__builtin_popcount(nb)));
    };
    rec(rec, work, 0);
    return base + best;
}

std::pair<std::size_t, std::size_t> greedy_matching(const MultiGraph& g,
                                                    const std::vector<std::uint32_t>& ranking) {
    const std::size_t m = g.edge_count();
    if (ranking.size() != m) throw input_error("ranking size mismatch");
    std::vector<EdgeId> order(m);
    std::vector<bool> hit(m, false);
    for (std::size_t e = 0; e < m; ++e) {
        if (ranking[e] >= m || hit[ranking[e]]) throw input_error("ranking is not a bijection");
        hit[ranking[e]] = true;
        order[ranking[e]] = static_cast<EdgeId>(e);
    }
    std::vector<bool> used(g.vertex_count(), false);
    std::size_t matched = 0, cover = 0;
    for (EdgeId e : order) {
        const Edge& ed = g.edges()[e];
        if (used[ed.u] || used[ed.v]) continue;
        used[ed.u] = used[ed.v] = true;
        ++matched;
        cover += ed.u == ed.v ? 1 : 2;
    }
    return {matched, cover};
}

MultiGraph gen_lb_family(std::size_t n, std::uint64_t seed) {
    if (n % 4 != 0 || n < 8) throw input_error("family needs n divisible by 4, n >= 8");
    const std::size_t left = n / 4;
    Prng prng(RngStream::derive(seed, 0x1bfa311ULL));

    const Vertex ul = static_cast<Vertex>(prng.below(left));
    Vertex vl = static_cast<Vertex>(prng.below(left - 1));
    if (vl >= ul) ++vl;
    const Vertex ur = static_cast<Vertex>(left + prng.below(n - left));
    Vertex vr = static_cast<Vertex>(left + prng.below(n - left - 1));
    if (vr >= ur) ++vr;

    std::vector<Edge> edges;
    edges.reserve(left * (n - left));
    for (Vertex u = 0; u < left; ++u)
        for (Vertex v = static_cast<Vertex>(left); v < n; ++v) {
            if ((u == ul && v == ur) || (u == vl && v == vr)) continue;
            edges.push_back({u, v});
        }
    edges.push_back({std::min(ul, vl), std::max(ul, vl)});
    edges.push_back({std::min(ur, vr), std::max(ur, vr)});

    MultiGraph g(n, std::move(edges));
    g.shuffle_slots(RngStream::derive(seed, 0x54A11EULL));
    return g;
}

MultiGraph gen_regular(std::size_t n, std::size_t d, std::uint64_t seed, bool simple) {
    if (n == 0 || (n * d) % 2 != 0) throw input_error("regular graph needs even n*d");
    if (simple && d >= n) throw input_error("simple regular graph needs d < n");
    Prng prng(RngStream::derive(seed, 0x2e901a2ULL));

    std::vector<Vertex> stubs;
    stubs.reserve(n * d);
    for (Vertex v = 0; v < n; ++v)
        for (std::size_t i = 0; i < d; ++i) stubs.push_back(v);
    for (std::size_t i = stubs.size(); i > 1; --i)
        std::swap(stubs[i - 1], stubs[prng.below(i)]);

    std::vector<Edge> edges;
    edges.reserve(stubs.size() / 2);
    for (std::size_t i = 0; i + 1 < stubs.size(); i += 2)
        edges.push_back({stubs[i], stubs[i + 1]});

    if (simple) {
        auto key = [](Vertex u, Vertex v) { return pack_pair(u, v); };
        std::unordered_map<std::uint64_t, std::size_t> count;
        count.reserve(edges.size() * 2);
        for (const Edge& e : edges) ++count[key(e.u, e.v)];
        auto defective = [&](const Edge& e) {
            return e.u == e.v || count[key(e.u, e.v)] > 1;
        };
        for (std::size_t round = 0; round < 200; ++round) {
            bool any = false;
            for (std::size_t i = 0; i < edges.size(); ++i) {
                std::size_t attempts = 0;
                while (defective(edges[i])) {
                    if (edges.size() < 2) throw input_error("graph too small to repair");
                    if (++attempts > 100000) throw state_error("simple regular repair stalled");
                    any = true;
                    const std::size_t j = prng.below(edges.size());
                    if (j == i) continue;
                    Edge& a = edges[i];
                    Edge& b = edges[j];
                    // Swap one endpoint pair: (u,v),(x,y) -> (u,x),(v,y).
                    const Edge na{a.u, b.u}, nb{a.v, b.v};
                    if (na.u == na.v || nb.u == nb.v) continue;
                    if (count[key(na.u, na.v)] > 0 || count[key(nb.u, nb.v)] > 0) continue;
                    --count[key(a.u, a.v)];
                    --count[key(b.u, b.v)];
                    ++count[key(na.u, na.v)];
                    ++count[key(nb.u, nb.v)];
                    a = na;
                    b = nb;
                }
            }
            if (!any) break;
        }
        for (const Edge& e : edges)
            if (e.u == e.v || count[key(e.u, e.v)] > 1)
                throw state_error("simple regular repair did not converge");
    }
    return MultiGraph(n, std::move(edges));
}

MultiGraph gen_gnp(std::size_t n, double p, std::uint64_t seed) {
    if (p < 0.0 || p > 1.0) throw input_error("p must be in [0,1]");
    Prng prng(RngStream::derive(seed, 0x69e9a21ULL));
    std::vector<Edge> edges;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v)
            if (prng.next_double() < p) edges.push_back({u, v});
    return MultiGraph(n, std::move(edges));
}

MultiGraph gen_random_multigraph(std::size_t n, std::size_t m, std::uint64_t seed) {
    if (n == 0) throw input_error("need n >= 1");
    Prng prng(RngStream::derive(seed, 0x3a9d0c3ULL));
    std::vector<Edge> edges;
    edges.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
        const Vertex u = static_cast<Vertex>(prng.below(n));
        const Vertex v = static_cast<Vertex>(prng.below(n));
        edges.push_back({std::min(u, v), std::max(u, v)});
    }
    return MultiGraph(n, std::move(edges));
}

}  // namespace subvc
