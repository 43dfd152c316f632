#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "cliquecover/graph.hpp"
#include "cliquecover/rng.hpp"

namespace cliquecover {

// Vertex set of a clique, strictly increasing.
struct Clique {
    std::vector<Vertex> vertices;

    std::size_t size() const noexcept { return vertices.size(); }
    friend bool operator==(const Clique&, const Clique&) = default;
    friend auto operator<=>(const Clique&, const Clique&) = default;
};

// True iff the vertices are strictly increasing and pairwise adjacent in g.
bool is_clique(const Graph& g, const Clique& c);

// Per-edge clique statistics for clique size j on an active edge set.
struct CliqueStats {
    std::size_t j = 0;
    // Indexed by canonical edge id; X_u for active edges, 0 for everything else.
    std::vector<std::uint64_t> per_edge;
    // Number of active j-cliques whose two smallest vertices are this edge.
    std::vector<std::uint64_t> rooted;
    std::uint64_t x_star_2 = 0;
    std::uint64_t x_star_3 = 0;
    std::uint64_t total = 0;  // N: active j-cliques
    std::size_t m_active = 0;
    double zeta = 0.0;  // total * C(j,2) / m_active, 0 when nothing is active
};

// Visits every j-clique C with S ⊆ C whose edges all lie in `active`, in lexicographic order.
// Throws PreconditionError if S is not a clique of `active` or |S| > j.
void for_each_clique_containing(const Clique& s, std::size_t j, const Graph& active,
                                const std::function<void(const Clique&)>& visit);
void for_each_clique_containing(const Clique& s, std::size_t j, const Graph& g, const EdgeSet& active,
                                const std::function<void(const Clique&)>& visit);
std::vector<Clique> cliques_containing(const Clique& s, std::size_t j, const Graph& active);

// X_{S,j}: how many active j-cliques contain S. Same preconditions as the enumerator.
std::uint64_t count_cliques_containing(const Clique& s, std::size_t j, const Graph& active);

// Number of r-cliques of g inside the vertex set `candidates`.
std::uint64_t count_cliques_within(const Graph& g, bits::Row candidates, std::size_t r);

// Per-edge counts X_u for clique size j >= 2 over the edges of `active`. Counting is split
// across `workers` threads by root vertex; the result does not depend on the worker count.
CliqueStats count_per_edge(std::size_t j, const Graph& active, unsigned workers = 1);
CliqueStats count_per_edge(std::size_t j, const Graph& g, const EdgeSet& active, unsigned workers = 1);

// The clique of rank `rank` (0-based, lexicographic) among the active j-cliques whose two
// smallest vertices are `root`. rank must be below stats.rooted[root].
Clique rooted_clique_at(const Graph& active, Edge root, std::size_t j, std::uint64_t rank);

// Prediction c_{s,j,i} = C(n-s, j-s) * (b e^{i-1})^{C(s,2)-C(j,2)}, b = 1/p. Iteration i = 1
// models the fresh graph.
double expected_count(std::size_t s, std::size_t j, std::size_t i, std::size_t n, double p);

// C(n, k) as a double.
double binomial(double n, std::size_t k);

struct MaxCliqueResult {
    std::size_t size = 0;
    Clique witness;
};

// Exact clique number by bitset branch and bound with a greedy colouring bound.
MaxCliqueResult max_clique(const Graph& g);

inline constexpr std::size_t kDefaultMaximalCliqueCap = 32;

// All inclusion-maximal cliques (isolated vertices included as singletons only if
// include_singletons). Throws SizingError if g.n() > cap.
void for_each_maximal_clique(const Graph& g, const std::function<void(const Clique&)>& visit,
                             std::size_t cap = kDefaultMaximalCliqueCap, bool include_singletons = false);
// Sorted lexicographically.
std::vector<Clique> maximal_cliques(const Graph& g, std::size_t cap = kDefaultMaximalCliqueCap,
                                    bool include_singletons = false);

struct CountEstimate {
    double estimate = 0.0;
    double std_error = 0.0;
    std::uint64_t accepted = 0;
    std::uint64_t samples = 0;
};

// Rejection-sampling estimate of the number of j-cliques: uniform j-subsets, accepted iff
// they form a clique of `active`.
CountEstimate estimate_clique_count(std::size_t j, const Graph& active, std::uint64_t samples, Seed seed);
CountEstimate estimate_clique_count(std::size_t j, const Graph& g, const EdgeSet& active, std::uint64_t samples,
                                    Seed seed);

}  // namespace cliquecover
