#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cliquecover/cover.hpp"
#include "cliquecover/graph.hpp"

namespace cliquecover {

struct ExperimentConfig {
    std::vector<std::size_t> n_grid;
    double p = 0.5;
    double alpha = 0.55;
    std::vector<Seed> seeds;
    std::optional<std::vector<std::size_t>> schedule_override;
    std::uint64_t monte_carlo_reps = 0;
    std::uint64_t sampled_edges = 0;
    std::string output_dir;  // empty: nothing is written
    std::uint64_t clique_budget = kDefaultCliqueBudget;
    unsigned workers = 1;     // concurrent (n, seed) cells
    bool run_greedy = true;
};

// Throws PreconditionError when a grid value is below 3, seeds are empty or p/alpha are invalid.
void validate(const ExperimentConfig& config);

// Accepts a JSON object mirroring ExperimentConfig or flat "key = value" lines ('#' comments).
// Lists are comma separated; seeds also accept "a..b". Throws ParseError.
ExperimentConfig parse_experiment_config(const std::string& text);
ExperimentConfig load_experiment_config(const std::string& path);

struct RunSummary {
    std::size_t n = 0;
    double p = 0.0;
    double alpha = 0.0;
    std::uint64_t seed = 0;
    std::size_t cover_size = 0;
    double ratio = 0.0;  // cover_size * (ln n)^2 / n^2
    std::size_t m = 0;
    std::size_t omega = 0;
    std::size_t lower = 0;
    std::optional<std::size_t> greedy_size;
    std::vector<double> predicted_yi;  // n^2 i^2 p / (k^2 e^{i-1}) per executed iteration
    std::size_t uncovered_final = 0;
    std::uint64_t sum_y = 0;
    std::uint64_t sum_z = 0;
    std::size_t k = 0;
    std::size_t i0 = 0;
    StopReason stop = StopReason::schedule_complete;
    bool valid = false;
    bool full_schedule = false;  // all i0 iterations ran
    std::vector<IterationRecord> iterations;
};

struct CellFailure {
    std::size_t n = 0;
    std::uint64_t seed = 0;
    std::string kind;  // "sizing" or "validation"
    std::string message;
};

struct ExperimentResult {
    std::vector<RunSummary> runs;
    std::vector<CellFailure> failures;
};

// Runs every (n, seed) cell: generate, cover, verify, bound. Sizing errors are recorded per
// cell. Writes iterations.csv, summary.csv, summary.json, scaling.csv (and failures.json when
// needed) into output_dir if it is set.
ExperimentResult run_experiment(const ExperimentConfig& config);

inline constexpr const char* kIterationCsvHeader =
    "n,p,alpha,seed,i,k_i,Y_i,Z_i,x_star_2,x_star_3,uncovered_after,elapsed_ms";

void write_iteration_csv(const std::vector<RunSummary>& runs, std::ostream& out);
void write_summary_csv(const std::vector<RunSummary>& runs, std::ostream& out);
void write_summary_json(const std::vector<RunSummary>& runs, std::ostream& out);

// Empirical look at the concentration conditions for clique size j in iteration i. Nothing is
// asserted; the asymptotic thresholds are reported next to the measurements.
struct ConditionReport {
    std::size_t i = 0;
    std::size_t j = 0;
    double beta_i = 0.0;   // i n^{-1/4}
    double gamma_i = 0.0;  // i n^{-1/16}
    double max_upper_ratio = 0.0;  // max over sampled S of X_{S,j,i} / c_{|S|,j,i}
    double ratio_empty = 0.0;      // S = empty set
    double max_ratio_edges = 0.0;
    double max_ratio_triangles = 0.0;
    std::size_t sampled_edges = 0;
    std::size_t sampled_triangles = 0;
    std::size_t violating_edge_count = 0;  // active edges with X_u < (1 - gamma_i) c_{2,j,i}
    double violation_budget = 0.0;         // i n^{31/16}
    std::size_t m_active = 0;
    double c_edge = 0.0;  // c_{2,j,i}
};

ConditionReport check_conditions(const Graph& g, const EdgeSet& active, std::size_t iteration, std::size_t j,
                                 double p, std::size_t sampled_s, Seed seed);

struct EdgeSurvival {
    Edge edge;
    std::uint64_t x_u = 0;
    double rho = 0.0;
    std::uint64_t survived = 0;
    double frequency = 0.0;
    double exact = 0.0;  // (1 - 1/X*)^{X_u} (1 - rho)
    double sigma = 0.0;  // binomial sigma of the frequency under `exact`
};

struct PairSurvival {
    Edge first, second;
    double joint_frequency = 0.0;
    double independent_target = 0.0;  // product of the two exact marginals
};

struct CliqueSelection {
    Clique clique;
    std::uint64_t selected = 0;
    double frequency = 0.0;
};

struct SurvivalReport {
    std::size_t k = 0;
    std::uint64_t x_star_2 = 0;
    std::uint64_t x_star_3 = 0;
    std::uint64_t reps = 0;
    double target = 0.0;           // e^{-1} - 1/X*_2
    double selection_prob = 0.0;   // 1/X*_2
    std::vector<EdgeSurvival> edges;
    std::vector<PairSurvival> pairs;
    std::vector<CliqueSelection> cliques;
    double fraction_within_4_sigma = 0.0;  // against `target`
};

// Freezes iteration 1 of COVER on g (clique size k_1 of the params' schedule) and replays
// Steps A and B `reps` times with sub-seeds of params.rng_seed. Tracks `sampled_edges` random
// edges, their consecutive pairs, and `tracked_cliques` random k_1-cliques.
SurvivalReport estimate_survival(const Graph& g, const CoverParams& params, std::uint64_t reps,
                                 std::size_t sampled_edges, std::size_t tracked_cliques = 0);

enum class ScalingVerdict { decreasing, flat, increasing, non_monotone };
std::string to_string(ScalingVerdict verdict);

struct ScalingRow {
    std::size_t n = 0;
    std::size_t runs = 0;
    double mean_ratio = 0.0;
    double std_error = 0.0;
};

struct ScalingTable {
    std::vector<ScalingRow> rows;  // ascending n
    std::optional<double> c1_reference;
    ScalingVerdict verdict = ScalingVerdict::flat;
};

// Needs runs at two or more distinct n.
ScalingTable summarize_scaling(const std::vector<RunSummary>& runs);
void write_scaling_csv(const ScalingTable& table, std::ostream& out);

}  // namespace cliquecover
