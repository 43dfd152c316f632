#include <doctest.h>

#include <cmath>
#include <numeric>
#include <sstream>

#include "cliquecover/baselines.hpp"
#include "cliquecover/cover.hpp"
#include "cliquecover/errors.hpp"
#include "oracles.hpp"

using namespace cliquecover;

namespace {

Graph complete(std::size_t n) { return generate_gnp(n, 1.0, Seed{0}); }

CoverParams with_schedule(std::vector<std::size_t> sizes, std::uint64_t seed = 1) {
    CoverParams params;
    params.schedule_override = std::move(sizes);
    params.rng_seed = Seed{seed};
    return params;
}

double sigma(double p, double reps) { return std::sqrt(p * (1 - p) / reps); }

}  // namespace

TEST_CASE("schedule derivation") {
    CoverParams params;
    params.p = 0.5;
    params.alpha = 0.6;
    auto s = derive_schedule(1024, params);
    CHECK(s.k == 6);
    CHECK(s.i0 == 8);
    CHECK(s.sizes == std::vector<std::size_t>{6, 3});

    params.alpha = 0.3;
    s = derive_schedule(1024, params);
    CHECK(s.k == 3);
    CHECK(s.sizes == std::vector<std::size_t>{3});

    // Independent evaluation of floor(alpha log_b n) and ceil(4 ln ln n).
    params.alpha = 0.55;
    for (std::size_t n : {64u, 128u, 256u, 512u, 1024u, 5000u}) {
        s = derive_schedule(n, params);
        const double log_b = std::log(double(n)) / std::log(2.0);
        CHECK(s.k == std::size_t(std::floor(0.55 * log_b)));
        CHECK(s.i0 == std::size_t(std::ceil(4 * std::log(std::log(double(n))))));
        for (std::size_t i = 1; i <= s.sizes.size(); ++i) CHECK(s.sizes[i - 1] == s.k / i);
        if (s.sizes.size() < s.i0) CHECK(s.k / (s.sizes.size() + 1) < 3);
    }

    auto over = with_schedule({5, 4, 3});
    s = derive_schedule(100, over);
    CHECK(s.sizes == std::vector<std::size_t>{5, 4, 3});
    CHECK(s.i0 == 3);

    CHECK_THROWS_AS(derive_schedule(100, with_schedule({4, 5})), PreconditionError);
    CHECK_THROWS_AS(derive_schedule(100, with_schedule({2})), PreconditionError);
    params.p = 0.0;
    CHECK_THROWS_AS(derive_schedule(100, params), DomainError);
    params.p = 0.5;
    params.alpha = 0.0;
    CHECK_THROWS_AS(derive_schedule(100, params), DomainError);
    params.alpha = 0.55;
    CHECK_THROWS_AS(derive_schedule(2, params), SizingError);
}

TEST_CASE("patching probability") {
    const double inv_e = std::exp(-1.0);
    CHECK(rho(0, 100) == doctest::Approx(1 - (inv_e - 0.01)).epsilon(1e-12));
    CHECK(rho(0, 100) == doctest::Approx(0.6421206).epsilon(1e-6));
    CHECK(rho(100, 100) == doctest::Approx(0.022274).epsilon(1e-4));
    CHECK(rho(1, 1) == 1.0);
    CHECK(rho(0, 1) == 1.0);
    CHECK(rho(10, 10) <= 0.3);
    CHECK_THROWS_AS(rho(0, 0), PreconditionError);
    CHECK_THROWS_AS(rho(11, 10), PreconditionError);

    // The defining equation, and monotone decrease in X_u.
    for (std::uint64_t x_star : {2u, 3u, 10u, 1000u}) {
        double prev = 2.0;
        for (std::uint64_t x = 0; x <= x_star; ++x) {
            const double r = rho(x, x_star);
            CHECK(r >= 0.0);
            CHECK(r <= 1.0);
            CHECK(r <= prev);
            prev = r;
            const double q = 1.0 / double(x_star);
            const double survive = std::pow(1 - q, double(x)) * (1 - r);
            if (r > 0.0 && r < 1.0) CHECK(survive == doctest::Approx(inv_e - q).epsilon(1e-12));
        }
    }
    // X_u = X*_2 -> infinity drives rho to 0.
    CHECK(rho(1000, 1000) > rho(100'000, 100'000));
    CHECK(rho(1'000'000, 1'000'000) < 1e-5);
}

TEST_CASE("step A with X*_2 = 1 selects every clique") {
    // Two disjoint K4s: every edge lies in exactly one 4-clique.
    std::vector<Edge> edges;
    for (Vertex base : {0u, 4u})
        for (Vertex a = 0; a < 4; ++a)
            for (Vertex b = a + 1; b < 4; ++b) edges.push_back({base + a, base + b});
    CoverState state(Graph::from_edges(8, edges));
    CoverParams params = with_schedule({4});
    const auto a = step_a(state, 4, params);
    CHECK(a.stats.x_star_2 == 1);
    CHECK(a.selected.size() == 2);
    CHECK(state.active().empty());
    CHECK(step_b(state, a.stats, params).empty());
}

TEST_CASE("step A without cliques flags and leaves the state") {
    std::vector<Edge> edges{{0, 1}, {1, 2}, {2, 3}};
    CoverState state(Graph::from_edges(4, edges));
    const auto a = step_a(state, 3, with_schedule({3}));
    CHECK(a.no_cliques);
    CHECK(a.selected.empty());
    CHECK(state.active().size() == 3);
    CHECK(state.cover().size() == 0);
}

TEST_CASE("step A marginal selection frequency") {
    const auto g = generate_gnp(100, 0.5, Seed{4});
    const auto stats = count_per_edge(4, g);
    REQUIRE(stats.x_star_2 > 1);
    const auto all = oracle::all_cliques(g, 4);
    std::vector<Clique> tracked;
    for (std::size_t t = 0; t < 20; ++t) tracked.push_back(Clique{all[(t * 7919) % all.size()]});
    std::vector<std::uint64_t> hits(tracked.size(), 0);
    const int reps = 5000;
    std::uint64_t total_selected = 0;
    for (int r = 0; r < reps; ++r) {
        const auto sel = select_cliques(g, stats, 1, Seed{std::uint64_t(1000 + r)});
        total_selected += sel.size();
        for (std::size_t t = 0; t < tracked.size(); ++t)
            hits[t] += std::binary_search(sel.begin(), sel.end(), tracked[t]);
    }
    const double q = 1.0 / double(stats.x_star_2);
    for (auto h : hits) CHECK(std::abs(h / double(reps) - q) <= 4 * sigma(q, reps));
    // The mean number selected is N / X*_2.
    const double mean = double(total_selected) / reps;
    const double expect = double(stats.total) * q;
    CHECK(std::abs(mean - expect) <= 4 * std::sqrt(expect * (1 - q) / reps));
}

TEST_CASE("step B edge frequency for X_u = 0") {
    // K_102 gives X*_2 = 100 for j = 3; the extra edge lies in no triangle.
    std::vector<Edge> edges;
    for (Vertex a = 0; a < 102; ++a)
        for (Vertex b = a + 1; b < 102; ++b) edges.push_back({a, b});
    edges.push_back({102, 103});
    const auto g = Graph::from_edges(104, edges);
    const auto stats = count_per_edge(3, g);
    REQUIRE(stats.x_star_2 == 100);
    const EdgeId lone = edge_index(104, 102, 103);
    REQUIRE(stats.per_edge[lone] == 0);
    EdgeSet only(104);
    only.insert(lone);
    const int reps = 5000;
    int added = 0;
    for (int r = 0; r < reps; ++r) added += !select_edges(only, stats, 1, Seed{std::uint64_t(r)}).empty();
    const double target = 1 - (std::exp(-1.0) - 0.01);
    CHECK(std::abs(added / double(reps) - target) <= 4 * sigma(target, reps));
}

TEST_CASE("full iteration survival equals e^-1 - 1/X*_2") {
    // K_12 with j = 3: every edge lies in exactly 10 triangles, so X_u = X*_2 = 10.
    const auto g = complete(12);
    const auto stats = count_per_edge(3, g);
    REQUIRE(stats.x_star_2 == 10);
    const int reps = 5000;
    std::vector<int> survived(pair_count(12), 0);
    for (int r = 0; r < reps; ++r) {
        const Seed seed{std::uint64_t(77 + 31 * r)};
        EdgeSet active(g);
        for (const auto& c : select_cliques(g, stats, 1, seed))
            for (std::size_t a = 0; a < 3; ++a)
                for (std::size_t b = a + 1; b < 3; ++b) active.erase(edge_index(12, c.vertices[a], c.vertices[b]));
        for (auto e : select_edges(active, stats, 1, seed)) active.erase(e);
        active.for_each([&](EdgeId e) { ++survived[e]; });
    }
    const double target = std::exp(-1.0) - 0.1;
    for (auto s : survived) CHECK(std::abs(s / double(reps) - target) <= 4 * sigma(target, reps));
}

TEST_CASE("run_cover small cases") {
    const auto empty = run_cover(Graph(6), CoverParams{});
    CHECK(empty.cover.size() == 0);

    const auto k5 = complete(5);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto r = run_cover(k5, with_schedule({3}, seed));
        CHECK(verify_cover(k5, r.cover).valid);
        CHECK(r.cover.size() <= 10);
    }

    CoverParams params;
    params.rng_seed = Seed{1};
    const auto g = generate_gnp(256, 0.5, Seed{1});
    const auto r = run_cover(g, params);
    CHECK(verify_cover(g, r.cover).valid);
    CHECK(r.cover.size() < g.m());
    CHECK(lower_bound(g).lower <= r.cover.size());
    std::uint64_t y = 0, z = 0;
    for (const auto& rec : r.records) {
        y += rec.y;
        z += rec.z;
        CHECK(rec.uncovered_after <= rec.uncovered_before);
    }
    CHECK(r.cover.size() == y + z + r.uncovered_final);
}

TEST_CASE("run_cover is deterministic across worker counts") {
    const auto g = generate_gnp(200, 0.5, Seed{12});
    CoverParams one;
    one.rng_seed = Seed{5};
    CoverParams many = one;
    many.workers = 4;
    const auto a = run_cover(g, one);
    const auto b = run_cover(g, many);
    CHECK(a.cover == b.cover);
    CHECK_FALSE(run_cover(g, with_schedule({4}, 6)).cover == run_cover(g, with_schedule({4}, 5)).cover);
}

TEST_CASE("budget guard") {
    const auto g = generate_gnp(256, 0.5, Seed{1});
    auto params = with_schedule({9});
    params.clique_budget = 1000;
    try {
        run_cover(g, params);
        FAIL("expected a sizing error");
    } catch (const SizingError& e) {
        const std::string what = e.what();
        CHECK(what.find("i=1") != std::string::npos);
        CHECK(what.find("k_i=9") != std::string::npos);
    }
}

TEST_CASE("cover verification") {
    const auto k3 = complete(3);
    CHECK(verify_cover(k3, CliqueCover{{Clique{{0, 1, 2}}}}).valid);
    const auto bad = verify_cover(k3, CliqueCover{{Clique{{0, 1}}}});
    CHECK_FALSE(bad.valid);
    REQUIRE(bad.uncovered_edge);
    CHECK(*bad.uncovered_edge == Edge{0, 2});

    std::vector<Edge> path{{0, 1}, {1, 2}};
    const auto p3 = Graph::from_edges(3, path);
    const auto not_clique = verify_cover(p3, CliqueCover{{Clique{{0, 1, 2}}}});
    CHECK_FALSE(not_clique.valid);
    CHECK(not_clique.bad_member);
    CHECK_FALSE(verify_cover(p3, CliqueCover{{Clique{{0, 1}}, Clique{{1, 2}}, Clique{{1}}}}).valid);
}

TEST_CASE("cover text format") {
    const CliqueCover cover{{Clique{{0, 1, 2}}, Clique{{3, 7}}}};
    std::stringstream buffer;
    save_cover(cover, buffer);
    CHECK(buffer.str() == "0 1 2\n3 7\n");
    CHECK(load_cover(buffer) == cover);
    std::istringstream descending("0 1\n2 1\n");
    try {
        load_cover(descending);
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
    }
    std::istringstream junk("0 a\n");
    CHECK_THROWS_AS(load_cover(junk), ParseError);
}
