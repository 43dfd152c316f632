#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "cliquecover/bits.hpp"
#include "cliquecover/rng.hpp"

namespace cliquecover {

using Vertex = std::uint32_t;
using EdgeId = std::uint64_t;

struct Edge {
    Vertex u;
    Vertex v;

    friend bool operator==(const Edge&, const Edge&) = default;
};

// Canonical edge numbering: pairs u < v in lexicographic order.
//   (0,1)=0, (0,2)=1, ..., (0,n-1)=n-2, (1,2)=n-1, ...
constexpr EdgeId pair_count(std::size_t n) { return n < 2 ? 0 : EdgeId(n) * (n - 1) / 2; }

constexpr EdgeId edge_index(std::size_t n, Vertex u, Vertex v) {
    if (u > v) std::swap(u, v);
    return EdgeId(u) * (2 * EdgeId(n) - u - 1) / 2 + (v - u - 1);
}

Edge edge_endpoints(std::size_t n, EdgeId index);

class EdgeSet;

// Immutable simple undirected graph on vertices 0..n-1 stored as adjacency bit rows.
class Graph {
public:
    Graph() = default;
    explicit Graph(std::size_t n);

    // Throws PreconditionError on self-loops, out-of-range endpoints or duplicate edges.
    static Graph from_edges(std::size_t n, std::span<const Edge> edges);

    std::size_t n() const noexcept { return n_; }
    std::size_t m() const noexcept { return m_; }
    std::size_t words_per_row() const noexcept { return words_; }

    bits::Row row(Vertex v) const noexcept { return {adjacency_.data() + std::size_t(v) * words_, words_}; }
    bool adjacent(Vertex u, Vertex v) const noexcept { return u < n_ && v < n_ && bits::test(row(u), v); }
    std::size_t degree(Vertex v) const noexcept { return bits::count(row(v)); }

    // Graph on the same vertex set keeping only the edges in `edges`.
    Graph restricted_to(const EdgeSet& edges) const;

    // Edges in canonical order.
    std::vector<Edge> edges() const;

    template <typename Fn>
    void for_each_edge(Fn&& fn) const {
        for (Vertex u = 0; u < n_; ++u) {
            const auto r = row(u);
            const std::size_t first = std::size_t(u) >> 6;
            for (std::size_t w = first; w < words_; ++w) {
                bits::Word word = r[w];
                if (w == first) word &= bits::above_mask(u);
                while (word) {
                    const auto v = static_cast<Vertex>((w << 6) + std::countr_zero(word));
                    word &= word - 1;
                    fn(u, v);
                }
            }
        }
    }

    friend bool operator==(const Graph&, const Graph&) = default;

private:
    friend class GraphBuilder;

    std::size_t n_ = 0;
    std::size_t words_ = 0;
    std::size_t m_ = 0;
    std::vector<bits::Word> adjacency_;
};

// Single-writer construction helper; finish() hands out the immutable Graph.
class GraphBuilder {
public:
    explicit GraphBuilder(std::size_t n);

    // Returns false if the edge was already present. Caller guarantees u != v, both < n.
    bool add(Vertex u, Vertex v);
    bool contains(Vertex u, Vertex v) const { return bits::test(graph_.row(u), v); }

    Graph finish() &&;

private:
    Graph graph_;
};

// Set of edges addressed by canonical index over the pairs of an n-vertex graph.
class EdgeSet {
public:
    EdgeSet() = default;
    explicit EdgeSet(std::size_t n);
    // Every edge of g.
    explicit EdgeSet(const Graph& g);

    std::size_t n() const noexcept { return n_; }
    std::size_t size() const noexcept { return size_; }
    bool empty() const noexcept { return size_ == 0; }

    bool contains(EdgeId e) const noexcept { return (bits_[e >> 6] >> (e & 63)) & 1u; }
    bool contains(Vertex u, Vertex v) const noexcept { return u != v && contains(edge_index(n_, u, v)); }

    // Both return whether the set changed.
    bool insert(EdgeId e);
    bool erase(EdgeId e);

    template <typename Fn>
    void for_each(Fn&& fn) const {
        bits::for_each(bits::Row(bits_), [&](std::size_t e) { fn(static_cast<EdgeId>(e)); });
    }

    friend bool operator==(const EdgeSet&, const EdgeSet&) = default;

private:
    std::size_t n_ = 0;
    std::size_t size_ = 0;
    std::vector<bits::Word> bits_;
};

// Each of the C(n,2) pairs is an edge independently with probability p. The decision for
// pair (u,v) depends only on (seed, u, v). Throws DomainError if p is outside [0,1].
Graph generate_gnp(std::size_t n, double p, Seed seed);

std::size_t edge_count(const Graph& g);

// Text format: "n m" then m lines "u v" with u < v < n.
Graph load_graph(std::istream& in);
void save_graph(const Graph& g, std::ostream& out);

}  // namespace cliquecover
