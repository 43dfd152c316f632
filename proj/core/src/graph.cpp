#include "cliquecover/graph.hpp"

#include <cmath>
#include <string>

#include "cliquecover/errors.hpp"

namespace cliquecover {

Edge edge_endpoints(std::size_t n, EdgeId index) {
    // Row u starts at u*(2n-u-1)/2; invert the quadratic and repair rounding.
    const double nn = static_cast<double>(n);
    const double disc = (2 * nn - 1) * (2 * nn - 1) - 8.0 * static_cast<double>(index);
    auto u = static_cast<EdgeId>(std::floor(((2 * nn - 1) - std::sqrt(std::max(disc, 0.0))) / 2));
    auto start = [n](EdgeId r) { return r * (2 * EdgeId(n) - r - 1) / 2; };
    while (u > 0 && start(u) > index) --u;
    while (u + 1 < n && start(u + 1) <= index) ++u;
    const EdgeId v = index - start(u) + u + 1;
    return {static_cast<Vertex>(u), static_cast<Vertex>(v)};
}

Graph::Graph(std::size_t n) : n_(n), words_(bits::words_for(n)), adjacency_(n * words_, 0) {}

Graph Graph::from_edges(std::size_t n, std::span<const Edge> edges) {
    GraphBuilder builder(n);
    for (const Edge& e : edges) {
        if (e.u >= n || e.v >= n) {
            throw PreconditionError("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                                    ") out of range for n=" + std::to_string(n));
        }
        if (e.u == e.v) throw PreconditionError("self-loop at vertex " + std::to_string(e.u));
        if (!builder.add(e.u, e.v)) {
            throw PreconditionError("duplicate edge (" + std::to_string(e.u) + "," + std::to_string(e.v) + ")");
        }
    }
    return std::move(builder).finish();
}

Graph Graph::restricted_to(const EdgeSet& edges) const {
    if (edges.n() != n_) throw PreconditionError("edge set and graph disagree on vertex count");
    GraphBuilder builder(n_);
    edges.for_each([&](EdgeId e) {
        const Edge uv = edge_endpoints(n_, e);
        if (!adjacent(uv.u, uv.v)) throw PreconditionError("edge set contains a non-edge");
        builder.add(uv.u, uv.v);
    });
    return std::move(builder).finish();
}

std::vector<Edge> Graph::edges() const {
    std::vector<Edge> out;
    out.reserve(m_);
    for_each_edge([&](Vertex u, Vertex v) { out.push_back({u, v}); });
    return out;
}

GraphBuilder::GraphBuilder(std::size_t n) : graph_(n) {}

bool GraphBuilder::add(Vertex u, Vertex v) {
    const std::size_t w = graph_.words_;
    bits::MutRow ru{graph_.adjacency_.data() + std::size_t(u) * w, w};
    if (bits::test(ru, v)) return false;
    bits::set(ru, v);
    bits::set(bits::MutRow{graph_.adjacency_.data() + std::size_t(v) * w, w}, u);
    ++graph_.m_;
    return true;
}

Graph GraphBuilder::finish() && { return std::move(graph_); }

EdgeSet::EdgeSet(std::size_t n) : n_(n), bits_(bits::words_for(pair_count(n)), 0) {}

EdgeSet::EdgeSet(const Graph& g) : EdgeSet(g.n()) {
    g.for_each_edge([&](Vertex u, Vertex v) { insert(edge_index(n_, u, v)); });
}

bool EdgeSet::insert(EdgeId e) {
    bits::Word& word = bits_[e >> 6];
    const bits::Word mask = bits::Word{1} << (e & 63);
    if (word & mask) return false;
    word |= mask;
    ++size_;
    return true;
}

bool EdgeSet::erase(EdgeId e) {
    bits::Word& word = bits_[e >> 6];
    const bits::Word mask = bits::Word{1} << (e & 63);
    if (!(word & mask)) return false;
    word &= ~mask;
    --size_;
    return true;
}

Graph generate_gnp(std::size_t n, double p, Seed seed) {
    if (!(p >= 0.0 && p <= 1.0)) throw DomainError("edge probability must lie in [0,1], got " + std::to_string(p));
    if (n > (std::size_t{1} << 32)) throw SizingError("vertex count exceeds 32-bit vertex ids");
    GraphBuilder builder(n);
    for (Vertex u = 0; u < n; ++u) {
        for (Vertex v = u + 1; v < n; ++v) {
            KeyedRng rng(seed, Stream::gnp_edge, u, v);
            if (rng.uniform() < p) builder.add(u, v);
        }
    }
    return std::move(builder).finish();
}

std::size_t edge_count(const Graph& g) { return g.m(); }

}  // namespace cliquecover
