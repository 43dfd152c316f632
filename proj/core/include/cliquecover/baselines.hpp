#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

#include "cliquecover/cover.hpp"
#include "cliquecover/graph.hpp"

namespace cliquecover {

struct BoundReport {
    std::size_t m = 0;
    std::size_t omega = 0;
    std::size_t lower = 0;  // ceil(m / C(omega, 2)); 0 for the empty graph
    std::optional<double> c1_reference;
};

// (ln b)^2 p / 2 with b = 1/p.
double c1_reference(double p);

// Edge-counting lower bound on the clique cover number, with the exact clique number.
// c1_reference is filled when p lies in (0,1).
BoundReport lower_bound(const Graph& g, std::optional<double> p = std::nullopt);

inline constexpr std::size_t kDefaultExactCap = 12;

struct ExactCoverResult {
    std::size_t size = 0;
    CliqueCover witness;
    std::uint64_t nodes = 0;  // search nodes explored
};

// Minimum edge clique cover by branch and bound over the maximal cliques.
// Throws SizingError if g.n() > cap.
ExactCoverResult exact_theta1(const Graph& g, std::size_t cap = kDefaultExactCap);

// Greedy heuristic: seed with the lowest uncovered edge, grow to a maximal clique picking the
// candidate that covers the most uncovered edges (lowest index on ties).
CliqueCover greedy_cover(const Graph& g);

}  // namespace cliquecover
