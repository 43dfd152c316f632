#pragma once

// Brute-force reference implementations used by the tests. They use only Graph::adjacent and
// plain loops so they share no code with the library algorithms they check.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <vector>

#include "cliquecover/cliques.hpp"
#include "cliquecover/graph.hpp"

namespace oracle {

using cliquecover::Edge;
using cliquecover::Graph;
using cliquecover::Vertex;

inline Graph random_graph(std::size_t n, double p, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::bernoulli_distribution coin(p);
    std::vector<Edge> edges;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v)
            if (coin(gen)) edges.push_back({u, v});
    return Graph::from_edges(n, edges);
}

inline bool is_clique(const Graph& g, const std::vector<Vertex>& vs) {
    for (std::size_t a = 0; a < vs.size(); ++a)
        for (std::size_t b = a + 1; b < vs.size(); ++b)
            if (!g.adjacent(vs[a], vs[b])) return false;
    return true;
}

// Every j-subset of the vertices in lexicographic order.
inline void for_each_subset(std::size_t n, std::size_t j, const std::function<void(const std::vector<Vertex>&)>& f) {
    std::vector<Vertex> cur;
    std::function<void(Vertex)> rec = [&](Vertex start) {
        if (cur.size() == j) {
            f(cur);
            return;
        }
        for (Vertex v = start; v + (j - cur.size()) <= n; ++v) {
            cur.push_back(v);
            rec(v + 1);
            cur.pop_back();
        }
    };
    rec(0);
}

inline std::vector<std::vector<Vertex>> all_cliques(const Graph& g, std::size_t j) {
    std::vector<std::vector<Vertex>> out;
    for_each_subset(g.n(), j, [&](const std::vector<Vertex>& s) {
        if (oracle::is_clique(g, s)) out.push_back(s);
    });
    return out;
}

// X_u for every edge, keyed by (u, v).
inline std::map<std::pair<Vertex, Vertex>, std::uint64_t> per_edge_counts(const Graph& g, std::size_t j) {
    std::map<std::pair<Vertex, Vertex>, std::uint64_t> out;
    for (Vertex u = 0; u < g.n(); ++u)
        for (Vertex v = u + 1; v < g.n(); ++v)
            if (g.adjacent(u, v)) out[{u, v}] = 0;
    for (const auto& c : all_cliques(g, j))
        for (std::size_t a = 0; a < c.size(); ++a)
            for (std::size_t b = a + 1; b < c.size(); ++b) ++out[{c[a], c[b]}];
    return out;
}

inline std::size_t clique_number(const Graph& g) {
    std::size_t best = g.n() > 0 ? 1 : 0;
    for (std::size_t j = 2; j <= g.n(); ++j) {
        if (all_cliques(g, j).empty()) break;
        best = j;
    }
    return best;
}

// Maximal cliques with at least one edge, by bitmask enumeration (n <= 20).
inline std::vector<std::vector<Vertex>> maximal_cliques(const Graph& g) {
    const std::size_t n = g.n();
    std::vector<std::uint32_t> adj(n, 0);
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = 0; v < n; ++v)
            if (g.adjacent(u, v)) adj[u] |= 1u << v;
    std::vector<std::vector<Vertex>> out;
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        if (__builtin_popcount(mask) < 2) continue;
        bool clique = true;
        std::uint32_t common = (1u << n) - 1;
        for (Vertex v = 0; v < n; ++v) {
            if (!(mask >> v & 1)) continue;
            if ((adj[v] | (1u << v)) != ((adj[v] | (1u << v)) | mask)) clique = false;
            common &= adj[v];
        }
        if (!clique || common != 0) continue;
        std::vector<Vertex> vs;
        for (Vertex v = 0; v < n; ++v)
            if (mask >> v & 1) vs.push_back(v);
        out.push_back(vs);
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Minimum edge clique cover size by trying every family of maximal cliques in order of size.
inline std::size_t theta1(const Graph& g) {
    const std::size_t n = g.n();
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v)
            if (g.adjacent(u, v)) edges.push_back({u, v});
    if (edges.empty()) return 0;
    const auto cliques = oracle::maximal_cliques(g);
    std::vector<std::uint64_t> covers;
    for (const auto& c : cliques) {
        std::uint64_t m = 0;
        for (std::size_t e = 0; e < edges.size(); ++e) {
            const bool in_u = std::find(c.begin(), c.end(), edges[e].first) != c.end();
            const bool in_v = std::find(c.begin(), c.end(), edges[e].second) != c.end();
            if (in_u && in_v) m |= std::uint64_t{1} << e;
        }
        covers.push_back(m);
    }
    const std::uint64_t all = edges.size() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << edges.size()) - 1;
    for (std::size_t size = 1; size <= cliques.size(); ++size) {
        bool found = false;
        std::function<void(std::size_t, std::size_t, std::uint64_t)> rec = [&](std::size_t start, std::size_t left,
                                                                               std::uint64_t covered) {
            if (found) return;
            if (left == 0) {
                found = covered == all;
                return;
            }
            for (std::size_t c = start; c + left <= cliques.size() && !found; ++c) rec(c + 1, left - 1, covered | covers[c]);
        };
        rec(0, size, 0);
        if (found) return size;
    }
    return edges.size();
}

}  // namespace oracle
