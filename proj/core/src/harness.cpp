#include "cliquecover/harness.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "cliquecover/baselines.hpp"
#include "cliquecover/errors.hpp"
#include "parallel.hpp"

namespace cliquecover {

namespace {

std::string num(double x) {
    std::ostringstream out;
    out << std::setprecision(10) << x;
    return out.str();
}

double ln2_over_sq(std::size_t n) {
    const double ln = std::log(static_cast<double>(n));
    return ln * ln / (static_cast<double>(n) * static_cast<double>(n));
}

RunSummary run_cell(std::size_t n, Seed seed, const ExperimentConfig& config) {
    const Graph g = generate_gnp(n, config.p, seed);

    CoverParams params;
    params.alpha = config.alpha;
    params.p = config.p;
    params.schedule_override = config.schedule_override;
    params.rng_seed = seed;
    params.clique_budget = config.clique_budget;
    const CoverResult result = run_cover(g, params);

    RunSummary s;
    s.n = n;
    s.p = config.p;
    s.alpha = config.alpha;
    s.seed = seed.value;
    s.cover_size = result.cover.size();
    s.ratio = static_cast<double>(s.cover_size) * ln2_over_sq(n);
    s.m = g.m();
    s.uncovered_final = result.uncovered_final;
    s.k = result.schedule.k;
    s.i0 = result.schedule.i0;
    s.stop = result.stop;
    s.iterations = result.records;
    s.full_schedule = result.stop == StopReason::schedule_complete && result.schedule.sizes.size() == s.i0 && s.i0 > 0;
    for (const auto& rec : result.records) {
        s.sum_y += rec.y;
        s.sum_z += rec.z;
        const double i = static_cast<double>(rec.i);
        const double k = static_cast<double>(s.k);
        const double nn = static_cast<double>(n);
        s.predicted_yi.push_back(k > 0 ? nn * nn * i * i * config.p / (k * k * std::exp(i - 1.0)) : 0.0);
    }
    s.valid = verify_cover(g, result.cover).valid;
    const BoundReport bounds = lower_bound(g, config.p);
    s.omega = bounds.omega;
    s.lower = bounds.lower;
    if (config.run_greedy) s.greedy_size = greedy_cover(g).size();
    return s;
}

void write_file(const std::filesystem::path& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    out << body;
}

}  // namespace

void validate(const ExperimentConfig& config) {
    if (config.n_grid.empty()) throw PreconditionError("n_grid must not be empty");
    for (std::size_t n : config.n_grid) {
        if (n < 3) throw PreconditionError("n_grid values must be at least 3");
    }
    if (config.seeds.empty()) throw PreconditionError("seeds must not be empty");
    if (!(config.p > 0.0 && config.p <= 1.0)) throw DomainError("p must lie in (0,1]");
    if (!(config.alpha > 0.0)) throw DomainError("alpha must be positive");
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
    validate(config);
    struct Cell {
        std::size_t n;
        Seed seed;
        std::optional<RunSummary> summary;
        std::optional<CellFailure> failure;
    };
    std::vector<Cell> cells;
    for (std::size_t n : config.n_grid) {
        for (Seed seed : config.seeds) cells.push_back({n, seed, std::nullopt, std::nullopt});
    }

    detail::parallel_for(cells.size(), config.workers, [&](unsigned, std::size_t idx) {
        Cell& cell = cells[idx];
        try {
            cell.summary = run_cell(cell.n, cell.seed, config);
            if (!cell.summary->valid) {
                cell.failure = CellFailure{cell.n, cell.seed.value, "validation", "cover failed verification"};
            }
        } catch (const SizingError& e) {
            cell.failure = CellFailure{cell.n, cell.seed.value, "sizing", e.what()};
        }
    });

    ExperimentResult result;
    for (auto& cell : cells) {
        if (cell.summary) result.runs.push_back(std::move(*cell.summary));
        if (cell.failure) result.failures.push_back(std::move(*cell.failure));
    }

    if (!config.output_dir.empty()) {
        const std::filesystem::path dir(config.output_dir);
        std::filesystem::create_directories(dir);
        std::ostringstream iterations, summary_csv, summary_json;
        write_iteration_csv(result.runs, iterations);
        write_summary_csv(result.runs, summary_csv);
        write_summary_json(result.runs, summary_json);
        write_file(dir / "iterations.csv", iterations.str());
        write_file(dir / "summary.csv", summary_csv.str());
        write_file(dir / "summary.json", summary_json.str());

        std::map<std::size_t, int> distinct;
        for (const auto& r : result.runs) distinct[r.n]++;
        if (distinct.size() >= 2) {
            std::ostringstream scaling;
            write_scaling_csv(summarize_scaling(result.runs), scaling);
            write_file(dir / "scaling.csv", scaling.str());
        }
        if (!result.failures.empty()) {
            nlohmann::json failures = nlohmann::json::array();
            for (const auto& f : result.failures) {
                failures.push_back({{"n", f.n}, {"seed", f.seed}, {"kind", f.kind}, {"message", f.message}});
            }
            write_file(dir / "failures.json", failures.dump(2) + "\n");
        }
    }
    return result;
}

void write_iteration_csv(const std::vector<RunSummary>& runs, std::ostream& out) {
    out << kIterationCsvHeader << '\n';
    for (const auto& r : runs) {
        for (const auto& it : r.iterations) {
            out << r.n << ',' << num(r.p) << ',' << num(r.alpha) << ',' << r.seed << ',' << it.i << ',' << it.k_i
                << ',' << it.y << ',' << it.z << ',' << it.x_star_2 << ',' << it.x_star_3 << ','
                << it.uncovered_after << ',' << num(it.elapsed_ms) << '\n';
        }
    }
}

void write_summary_csv(const std::vector<RunSummary>& runs, std::ostream& out) {
    out << "n,p,alpha,seed,cover_size,ratio,m,omega,lower,greedy_size,sum_Y,sum_Z,uncovered_final,valid\n";
    for (const auto& r : runs) {
        out << r.n << ',' << num(r.p) << ',' << num(r.alpha) << ',' << r.seed << ',' << r.cover_size << ','
            << num(r.ratio) << ',' << r.m << ',' << r.omega << ',' << r.lower << ','
            << (r.greedy_size ? std::to_string(*r.greedy_size) : std::string()) << ',' << r.sum_y << ','
            << r.sum_z << ',' << r.uncovered_final << ',' << (r.valid ? 1 : 0) << '\n';
    }
}

void write_summary_json(const std::vector<RunSummary>& runs, std::ostream& out) {
    nlohmann::json doc = nlohmann::json::array();
    for (const auto& r : runs) {
        nlohmann::json row = {
            {"n", r.n},
            {"p", r.p},
            {"alpha", r.alpha},
            {"seed", r.seed},
            {"cover_size", r.cover_size},
            {"ratio", r.ratio},
            {"m", r.m},
            {"lower", r.lower},
            {"greedy_size", r.greedy_size ? nlohmann::json(*r.greedy_size) : nlohmann::json(nullptr)},
            {"predicted_Yi", r.predicted_yi},
            {"uncovered_final", r.uncovered_final},
            {"omega", r.omega},
            {"sum_Y", r.sum_y},
            {"sum_Z", r.sum_z},
            {"k", r.k},
            {"i0", r.i0},
            {"stop", to_string(r.stop)},
        };
        doc.push_back(std::move(row));
    }
    out << doc.dump(2) << '\n';
}

ConditionReport check_conditions(const Graph& g, const EdgeSet& active, std::size_t iteration, std::size_t j,
                                 double p, std::size_t sampled_s, Seed seed) {
    if (j < 2) throw PreconditionError("check_conditions needs j >= 2");
    if (iteration < 1) throw PreconditionError("iteration index starts at 1");
    const std::size_t n = g.n();
    const double nn = static_cast<double>(n);
    const double i = static_cast<double>(iteration);

    ConditionReport report;
    report.i = iteration;
    report.j = j;
    report.beta_i = i * std::pow(nn, -0.25);
    report.gamma_i = i * std::pow(nn, -1.0 / 16.0);
    report.violation_budget = i * std::pow(nn, 31.0 / 16.0);
    report.m_active = active.size();
    if (active.empty() || j > n) return report;

    const Graph current = g.restricted_to(active);
    const CliqueStats stats = count_per_edge(j, current);
    report.c_edge = expected_count(2, j, iteration, n, p);
    report.ratio_empty = static_cast<double>(stats.total) / expected_count(0, j, iteration, n, p);

    std::vector<EdgeId> edges;
    edges.reserve(active.size());
    active.for_each([&](EdgeId e) { edges.push_back(e); });

    KeyedRng rng(seed, Stream::sampling, static_cast<std::uint32_t>(iteration), static_cast<std::uint32_t>(j), 1);
    for (std::size_t t = 0; t < sampled_s; ++t) {
        const EdgeId e = edges[rng.below(edges.size())];
        report.max_ratio_edges = std::max(report.max_ratio_edges, static_cast<double>(stats.per_edge[e]) / report.c_edge);
        ++report.sampled_edges;
    }
    if (j >= 3) {
        const double c3 = expected_count(3, j, iteration, n, p);
        std::vector<bits::Word> common(current.words_per_row());
        for (std::size_t t = 0, attempts = 0; t < sampled_s && attempts < 20 * sampled_s + 20; ++attempts) {
            const Edge uv = edge_endpoints(n, edges[rng.below(edges.size())]);
            bits::intersect(current.row(uv.u), current.row(uv.v), common);
            const std::size_t size = bits::count(common);
            if (size == 0) continue;
            const auto x = static_cast<Vertex>(bits::select(common, rng.below(size)));
            Clique tri{{uv.u, uv.v, x}};
            std::sort(tri.vertices.begin(), tri.vertices.end());
            const auto count = count_cliques_containing(tri, j, current);
            report.max_ratio_triangles = std::max(report.max_ratio_triangles, static_cast<double>(count) / c3);
            ++report.sampled_triangles;
            ++t;
        }
    }
    report.max_upper_ratio = std::max({report.ratio_empty, report.max_ratio_edges, report.max_ratio_triangles});

    const double floor_value = (1.0 - report.gamma_i) * report.c_edge;
    for (EdgeId e : edges) {
        if (static_cast<double>(stats.per_edge[e]) < floor_value) ++report.violating_edge_count;
    }
    return report;
}

SurvivalReport estimate_survival(const Graph& g, const CoverParams& params, std::uint64_t reps,
                                 std::size_t sampled_edges, std::size_t tracked_cliques) {
    if (reps == 0) throw PreconditionError("estimate_survival needs reps >= 1");
    if (g.m() == 0) throw PreconditionError("estimate_survival needs a nonempty graph");
    const Schedule schedule = derive_schedule(g.n(), params);
    if (schedule.sizes.empty()) throw PreconditionError("the schedule has no iteration with k_i >= 3");

    SurvivalReport report;
    report.k = schedule.sizes.front();
    report.reps = reps;
    check_clique_budget(g, report.k, 1, params);
    const CliqueStats stats = count_per_edge(report.k, g, params.workers);
    report.x_star_2 = stats.x_star_2;
    report.x_star_3 = stats.x_star_3;
    if (stats.x_star_2 == 0) throw PreconditionError("no active k_1-cliques: Step A never runs");
    report.selection_prob = 1.0 / static_cast<double>(stats.x_star_2);
    report.target = std::exp(-1.0) - report.selection_prob;

    const std::size_t n = g.n();
    std::vector<EdgeId> all_edges;
    all_edges.reserve(g.m());
    g.for_each_edge([&](Vertex u, Vertex v) { all_edges.push_back(edge_index(n, u, v)); });

    // Distinct sampled edges (Floyd), kept in sampling order so pairs are random.
    KeyedRng pick(params.rng_seed, Stream::sampling, 0, 0, 2);
    std::vector<EdgeId> tracked;
    const std::size_t want = std::min(sampled_edges, all_edges.size());
    {
        std::vector<std::size_t> ranks;
        for (std::size_t top = all_edges.size() - want; top < all_edges.size(); ++top) {
            const std::size_t r = pick.below(top + 1);
            ranks.push_back(std::find(ranks.begin(), ranks.end(), r) == ranks.end() ? r : top);
        }
        for (std::size_t r : ranks) tracked.push_back(all_edges[r]);
    }

    std::vector<Clique> watched;
    {
        std::vector<EdgeId> roots;
        for (EdgeId e : all_edges) {
            if (stats.rooted[e] > 0) roots.push_back(e);
        }
        for (std::size_t attempts = 0; watched.size() < tracked_cliques && attempts < 50 * tracked_cliques && !roots.empty();
             ++attempts) {
            const EdgeId e = roots[pick.below(roots.size())];
            Clique c = rooted_clique_at(g, edge_endpoints(n, e), report.k, pick.below(stats.rooted[e]));
            if (std::find(watched.begin(), watched.end(), c) == watched.end()) watched.push_back(std::move(c));
        }
    }

    std::vector<std::uint64_t> survived(tracked.size(), 0), joint(tracked.size() / 2, 0), chosen(watched.size(), 0);
    std::vector<char> alive(tracked.size());
    const EdgeSet fresh(g);
    for (std::uint64_t rep = 0; rep < reps; ++rep) {
        const Seed sub = derive_seed(params.rng_seed, rep + 1);
        std::vector<Clique> selected = select_cliques(g, stats, 1, sub, params.workers);
        EdgeSet uncovered = fresh;
        for (const Clique& c : selected) {
            for (std::size_t a = 0; a < c.vertices.size(); ++a) {
                for (std::size_t b = a + 1; b < c.vertices.size(); ++b) {
                    uncovered.erase(edge_index(n, c.vertices[a], c.vertices[b]));
                }
            }
        }
        const std::vector<EdgeId> patched = select_edges(uncovered, stats, 1, sub);
        for (std::size_t t = 0; t < tracked.size(); ++t) {
            alive[t] = uncovered.contains(tracked[t]) && !std::binary_search(patched.begin(), patched.end(), tracked[t]);
            survived[t] += alive[t];
        }
        for (std::size_t t = 0; t + 1 < tracked.size(); t += 2) joint[t / 2] += alive[t] && alive[t + 1];
        for (std::size_t c = 0; c < watched.size(); ++c) {
            chosen[c] += std::binary_search(selected.begin(), selected.end(), watched[c]);
        }
    }

    const double q = report.selection_prob;
    const double r = static_cast<double>(reps);
    std::size_t within = 0;
    for (std::size_t t = 0; t < tracked.size(); ++t) {
        EdgeSurvival es;
        es.edge = edge_endpoints(n, tracked[t]);
        es.x_u = stats.per_edge[tracked[t]];
        es.rho = rho(es.x_u, stats.x_star_2);
        es.survived = survived[t];
        es.frequency = static_cast<double>(survived[t]) / r;
        es.exact = std::exp(static_cast<double>(es.x_u) * std::log1p(-q)) * (1.0 - es.rho);
        if (stats.x_star_2 == 1) es.exact = es.x_u > 0 ? 0.0 : 1.0 - es.rho;
        es.sigma = std::sqrt(es.exact * (1.0 - es.exact) / r);
        const double target = std::max(0.0, report.target);
        const double sigma = std::sqrt(target * (1.0 - target) / r);
        if (std::abs(es.frequency - target) <= 4.0 * sigma) ++within;
        report.edges.push_back(es);
    }
    report.fraction_within_4_sigma = tracked.empty() ? 0.0 : static_cast<double>(within) / static_cast<double>(tracked.size());
    for (std::size_t t = 0; t + 1 < tracked.size(); t += 2) {
        report.pairs.push_back({report.edges[t].edge, report.edges[t + 1].edge, static_cast<double>(joint[t / 2]) / r,
                                report.edges[t].exact * report.edges[t + 1].exact});
    }
    for (std::size_t c = 0; c < watched.size(); ++c) {
        report.cliques.push_back({watched[c], chosen[c], static_cast<double>(chosen[c]) / r});
    }
    return report;
}

std::string to_string(ScalingVerdict verdict) {
    switch (verdict) {
        case ScalingVerdict::decreasing: return "decreasing (consistent with an O(n^2/(ln n)^2) cover)";
        case ScalingVerdict::flat: return "flat";
        case ScalingVerdict::increasing: return "increasing";
        case ScalingVerdict::non_monotone: return "non-monotone";
    }
    return "unknown";
}

ScalingTable summarize_scaling(const std::vector<RunSummary>& runs) {
    std::map<std::size_t, std::vector<double>> by_n;
    for (const auto& r : runs) by_n[r.n].push_back(r.ratio);
    if (by_n.size() < 2) throw PreconditionError("summarize_scaling needs runs at two or more distinct n");

    ScalingTable table;
    bool same_p = true;
    for (const auto& r : runs) same_p = same_p && r.p == runs.front().p;
    if (same_p && runs.front().p > 0.0 && runs.front().p < 1.0) table.c1_reference = c1_reference(runs.front().p);

    for (const auto& [n, ratios] : by_n) {
        ScalingRow row;
        row.n = n;
        row.runs = ratios.size();
        double sum = 0.0;
        for (double x : ratios) sum += x;
        row.mean_ratio = sum / static_cast<double>(ratios.size());
        if (ratios.size() > 1) {
            double ss = 0.0;
            for (double x : ratios) ss += (x - row.mean_ratio) * (x - row.mean_ratio);
            row.std_error = std::sqrt(ss / static_cast<double>(ratios.size() - 1) / static_cast<double>(ratios.size()));
        }
        table.rows.push_back(row);
    }

    bool down = true, up = true, flat = true;
    for (std::size_t t = 1; t < table.rows.size(); ++t) {
        const double prev = table.rows[t - 1].mean_ratio, cur = table.rows[t].mean_ratio;
        const double tol = 1e-12 * std::max(std::abs(prev), std::abs(cur));
        if (std::abs(cur - prev) > tol) flat = false;
        if (!(cur < prev - tol)) down = false;
        if (!(cur > prev + tol)) up = false;
    }
    table.verdict = flat ? ScalingVerdict::flat
                    : down ? ScalingVerdict::decreasing
                    : up ? ScalingVerdict::increasing
                         : ScalingVerdict::non_monotone;
    return table;
}

void write_scaling_csv(const ScalingTable& table, std::ostream& out) {
    out << "n,runs,mean_ratio,std_error,c1_reference,verdict\n";
    for (const auto& row : table.rows) {
        out << row.n << ',' << row.runs << ',' << num(row.mean_ratio) << ',' << num(row.std_error) << ','
            << (table.c1_reference ? num(*table.c1_reference) : std::string()) << ',' << to_string(table.verdict)
            << '\n';
    }
}

}  // namespace cliquecover
