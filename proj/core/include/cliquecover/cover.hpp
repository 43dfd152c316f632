#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cliquecover/cliques.hpp"
#include "cliquecover/graph.hpp"
#include "cliquecover/rng.hpp"

namespace cliquecover {

inline constexpr std::uint64_t kDefaultCliqueBudget = 100'000'000;

struct CoverParams {
    double alpha = 0.55;
    double p = 0.5;
    std::optional<std::size_t> i0_override;
    // Explicit clique size per iteration; entries >= 3, non-increasing.
    std::optional<std::vector<std::size_t>> schedule_override;
    Seed rng_seed{};
    std::uint64_t clique_budget = kDefaultCliqueBudget;
    // Sample count for the rejection-sampling half of the budget guard.
    std::uint64_t guard_samples = 20'000;
    unsigned workers = 1;
};

struct Schedule {
    std::size_t k = 0;   // floor(alpha * log_b n)
    std::size_t i0 = 0;  // ceil(4 ln ln n), or the override
    // k_i = floor(k / i) for i = 1..i0, cut at the first value below 3.
    std::vector<std::size_t> sizes;
};

// Throws SizingError for n < 3 without an override, DomainError for p outside (0,1] or alpha <= 0,
// PreconditionError for a malformed schedule override. p = 1 is accepted and gives k = n.
Schedule derive_schedule(std::size_t n, const CoverParams& params);

// Step B patching probability: the value making (1 - 1/X*)^{X_u} (1 - rho) = e^{-1} - 1/X*,
// clamped to [0,1]. Returns 1 when x_star_2 == 1. Requires x_u <= x_star_2 and x_star_2 >= 1.
double rho(std::uint64_t x_u, std::uint64_t x_star_2);

struct CliqueCover {
    std::vector<Clique> cliques;

    std::size_t size() const noexcept { return cliques.size(); }
    friend bool operator==(const CliqueCover&, const CliqueCover&) = default;
};

struct IterationRecord {
    std::size_t i = 0;
    std::size_t k_i = 0;
    std::uint64_t y = 0;  // cliques added by Step A
    std::uint64_t z = 0;  // edges added by Step B
    std::uint64_t x_star_2 = 0;
    std::uint64_t x_star_3 = 0;
    std::size_t uncovered_before = 0;
    std::size_t uncovered_after = 0;
    double elapsed_ms = 0.0;
};

// E_i, G_i and the partial cover while COVER runs.
class CoverState {
public:
    explicit CoverState(Graph g);

    const Graph& graph() const noexcept { return graph_; }
    std::size_t iteration() const noexcept { return iteration_; }
    const EdgeSet& active() const noexcept { return active_; }
    // G_i as a graph; rebuilt on demand after edges are removed.
    const Graph& active_graph() const;
    const CliqueCover& cover() const noexcept { return cover_; }
    const std::vector<IterationRecord>& records() const noexcept { return records_; }

    // Appends the cliques to the cover and drops their edges from the active set.
    void add_cliques(std::span<const Clique> cliques);
    // Appends each edge as a 2-clique and drops it from the active set.
    void add_edges(std::span<const EdgeId> edges);
    void finish_iteration(IterationRecord record);

private:
    Graph graph_;
    std::size_t iteration_ = 1;
    EdgeSet active_;
    mutable std::optional<Graph> active_graph_;
    CliqueCover cover_;
    std::vector<IterationRecord> records_;
};

// Step A on a frozen iteration: every active j-clique independently with probability 1/X*_2.
// The cliques rooted at edge (a,b) are addressed by lexicographic rank and sampled by geometric
// skipping on a stream keyed by (seed, iteration, a, b), so the outcome is a function of
// (seed, iteration, G_i) only. Result is in lexicographic order.
std::vector<Clique> select_cliques(const Graph& active, const CliqueStats& stats, std::size_t iteration, Seed seed,
                                   unsigned workers = 1);

// Step B on a frozen iteration: each edge of `uncovered` is kept as a 2-clique with probability
// rho(X_u, X*_2), drawn from a stream keyed by (seed, iteration, edge). Canonical order.
std::vector<EdgeId> select_edges(const EdgeSet& uncovered, const CliqueStats& stats, std::size_t iteration,
                                 Seed seed);

// Clique-count feasibility check; throws SizingError naming (i, k_i, predicted count).
void check_clique_budget(const Graph& active, std::size_t k_i, std::size_t iteration, const CoverParams& params);

struct StepAResult {
    std::vector<Clique> selected;
    CliqueStats stats;
    bool no_cliques = false;  // X*_2 = 0: nothing to select, finalize early
};

// Runs Step A for the state's current iteration and applies it.
StepAResult step_a(CoverState& state, std::size_t k_i, const CoverParams& params);
// Runs Step B with the stats from this iteration's Step A and applies it.
std::vector<EdgeId> step_b(CoverState& state, const CliqueStats& stats, const CoverParams& params);

enum class StopReason {
    schedule_complete,
    no_cliques,     // X*_2 = 0 at the start of an iteration
    all_covered,    // E_i became empty
    empty_schedule,
};

std::string to_string(StopReason reason);

struct CoverResult {
    CliqueCover cover;
    std::vector<IterationRecord> records;
    Schedule schedule;
    StopReason stop = StopReason::schedule_complete;
    std::size_t uncovered_final = 0;  // |E_{i0+1}|, added as 2-cliques at the end
};

// Algorithm COVER. Deterministic in (g, params) for any worker count.
CoverResult run_cover(const Graph& g, const CoverParams& params);

struct CoverVerdict {
    bool valid = true;
    std::optional<Clique> bad_member;
    std::optional<Edge> uncovered_edge;
    std::string message;
};

CoverVerdict verify_cover(const Graph& g, const CliqueCover& cover);

// One clique per line, ascending vertices separated by single spaces.
void save_cover(const CliqueCover& cover, std::ostream& out);
CliqueCover load_cover(std::istream& in);

}  // namespace cliquecover
