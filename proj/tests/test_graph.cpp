#include <doctest.h>

#include <cmath>
#include <sstream>

#include "cliquecover/errors.hpp"
#include "cliquecover/graph.hpp"
#include "oracles.hpp"

using namespace cliquecover;

TEST_CASE("edge index round trip") {
    for (std::size_t n : {2u, 3u, 7u, 64u, 65u, 1000u}) {
        EdgeId e = 0;
        for (Vertex u = 0; u < n && e < 5000; ++u) {
            for (Vertex v = u + 1; v < n; ++v, ++e) {
                REQUIRE(edge_index(n, u, v) == e);
                REQUIRE(edge_index(n, v, u) == e);
                REQUIRE(edge_endpoints(n, e) == Edge{u, v});
            }
        }
        const EdgeId last = pair_count(n) - 1;
        CHECK(edge_endpoints(n, last) == Edge{Vertex(n - 2), Vertex(n - 1)});
    }
}

TEST_CASE("degenerate probabilities") {
    const auto k5 = generate_gnp(5, 1.0, Seed{123});
    CHECK(k5.m() == 10);
    CHECK(edge_count(k5) == 10);
    const auto empty = generate_gnp(5, 0.0, Seed{123});
    CHECK(empty.m() == 0);
    CHECK(edge_count(generate_gnp(7, 0.0, Seed{1})) == 0);
    CHECK_THROWS_AS(generate_gnp(5, 1.5, Seed{1}), DomainError);
    CHECK_THROWS_AS(generate_gnp(5, -0.1, Seed{1}), DomainError);
    CHECK_THROWS_AS(generate_gnp(5, std::nan(""), Seed{1}), DomainError);
}

TEST_CASE("generation is reproducible and symmetric") {
    const auto a = generate_gnp(130, 0.4, Seed{77});
    const auto b = generate_gnp(130, 0.4, Seed{77});
    CHECK(a == b);
    CHECK_FALSE(a == generate_gnp(130, 0.4, Seed{78}));
    std::size_t scanned = 0;
    for (Vertex u = 0; u < a.n(); ++u) {
        CHECK_FALSE(a.adjacent(u, u));
        for (Vertex v = 0; v < a.n(); ++v) {
            REQUIRE(a.adjacent(u, v) == a.adjacent(v, u));
            if (u < v && a.adjacent(u, v)) ++scanned;
        }
    }
    CHECK(scanned == a.m());
    // A pair's fate depends only on (seed, u, v), so a prefix of vertices is a prefix graph.
    const auto small = generate_gnp(40, 0.4, Seed{77});
    for (Vertex u = 0; u < 40; ++u)
        for (Vertex v = 0; v < 40; ++v) REQUIRE(small.adjacent(u, v) == a.adjacent(u, v));
}

TEST_CASE("edge count matches a pair scan") {
    const auto g = generate_gnp(100, 0.5, Seed{1});
    std::size_t count = 0;
    for (Vertex u = 0; u < 100; ++u)
        for (Vertex v = u + 1; v < 100; ++v) count += g.adjacent(u, v);
    CHECK(edge_count(g) == count);
    CHECK(g.edges().size() == count);
}

TEST_CASE("edge count follows the binomial law") {
    const double pairs = 1000.0 * 999 / 2;
    const double mean = pairs * 0.5;
    const double sigma = std::sqrt(pairs * 0.25);
    double total = 0;
    const int seeds = 100;
    for (int s = 0; s < seeds; ++s) total += double(generate_gnp(1000, 0.5, Seed{std::uint64_t(s)}).m());
    CHECK(std::abs(total / seeds - mean) < 3 * sigma / std::sqrt(double(seeds)));

    // Density of G(200, 0.3) within 4 sigma.
    const auto g = generate_gnp(200, 0.3, Seed{5});
    const double p2 = 200.0 * 199 / 2;
    CHECK(std::abs(double(g.m()) - 0.3 * p2) < 4 * std::sqrt(p2 * 0.21));
}

TEST_CASE("edge sets") {
    const auto g = oracle::random_graph(20, 0.5, 3);
    EdgeSet all(g);
    CHECK(all.size() == g.m());
    std::size_t visited = 0;
    EdgeId prev = 0;
    all.for_each([&](EdgeId e) {
        if (visited) CHECK(e > prev);
        prev = e;
        ++visited;
        const auto [u, v] = edge_endpoints(20, e);
        CHECK(g.adjacent(u, v));
    });
    CHECK(visited == g.m());
    const auto first = g.edges().front();
    CHECK(all.erase(edge_index(20, first.u, first.v)));
    CHECK_FALSE(all.erase(edge_index(20, first.u, first.v)));
    CHECK_FALSE(all.contains(first.u, first.v));
    const auto h = g.restricted_to(all);
    CHECK(h.m() == g.m() - 1);
    CHECK_FALSE(h.adjacent(first.u, first.v));
    CHECK(all.insert(edge_index(20, first.u, first.v)));
    CHECK(g.restricted_to(all) == g);
}

TEST_CASE("from_edges validation") {
    const std::vector<Edge> loop{{1, 1}};
    const std::vector<Edge> range{{0, 5}};
    const std::vector<Edge> dup{{0, 1}, {1, 0}};
    CHECK_THROWS_AS(Graph::from_edges(3, loop), PreconditionError);
    CHECK_THROWS_AS(Graph::from_edges(3, range), PreconditionError);
    CHECK_THROWS_AS(Graph::from_edges(3, dup), PreconditionError);
}

TEST_CASE("graph text format") {
    std::istringstream path("3 2\n0 1\n1 2\n");
    const auto g = load_graph(path);
    CHECK(g.n() == 3);
    CHECK(g.m() == 2);
    CHECK(g.adjacent(0, 1));
    CHECK(g.adjacent(1, 2));
    CHECK_FALSE(g.adjacent(0, 2));

    const auto h = generate_gnp(50, 0.3, Seed{7});
    std::stringstream buffer;
    save_graph(h, buffer);
    const std::string text = buffer.str();
    const auto back = load_graph(buffer);
    CHECK(back == h);
    std::ostringstream again;
    save_graph(back, again);
    CHECK(again.str() == text);
}

TEST_CASE("graph parse errors carry line numbers") {
    auto line_of = [](const std::string& text) -> std::size_t {
        std::istringstream in(text);
        try {
            load_graph(in);
        } catch (const ParseError& e) {
            return e.line();
        }
        return 0;
    };
    CHECK(line_of("x 2\n") == 1);
    CHECK(line_of("3 2\n0 1\n1 x\n") == 3);
    CHECK(line_of("3 2\n0 1\n1 3\n") == 3);
    CHECK(line_of("3 2\n0 1\n2 1\n") == 3);
    CHECK(line_of("3 2\n0 1\n1 1\n") == 3);
    CHECK(line_of("3 2\n0 1\n0 1\n") == 3);
    CHECK(line_of("3 1\n0 1\n1 2\n") == 3);
    std::istringstream short_file("3 2\n0 1\n");
    CHECK_THROWS_AS(load_graph(short_file), ParseError);
}
