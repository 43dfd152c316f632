// cliquecover: command line front end for the clique cover library.
//
// Exit codes: 0 success, 2 validation failure / invalid input, 3 sizing or budget error,
// 4 parse error.

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cliquecover/baselines.hpp"
#include "cliquecover/cover.hpp"
#include "cliquecover/errors.hpp"
#include "cliquecover/graph.hpp"
#include "cliquecover/harness.hpp"

namespace cc = cliquecover;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitSizing = 3;
constexpr int kExitParse = 4;

cc::Graph read_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw cc::ParseError(0, "cannot open graph file " + path);
    return cc::load_graph(in);
}

template <typename Write>
void emit(const std::string& path, Write&& write) {
    if (path.empty() || path == "-") {
        write(std::cout);
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw cc::Error("cannot write " + path);
    write(out);
}

struct GraphSource {
    std::string graph_path;
    std::size_t n = 0;
    double p = 0.5;
    std::uint64_t seed = 1;

    cc::Graph load() const {
        if (!graph_path.empty()) return read_graph_file(graph_path);
        return cc::generate_gnp(n, p, cc::Seed{seed});
    }
};

void add_source_options(CLI::App* cmd, GraphSource& src) {
    cmd->add_option("--graph", src.graph_path, "Graph file (otherwise a G(n,p) sample is generated)");
    cmd->add_option("--n", src.n, "Vertex count");
    cmd->add_option("--p", src.p, "Edge probability");
    cmd->add_option("--seed", src.seed, "Seed for the graph and the algorithm");
}

void print_cover_summary(const cc::CoverResult& result, const cc::Graph& g) {
    std::cerr << "k=" << result.schedule.k << " i0=" << result.schedule.i0 << " schedule=[";
    for (std::size_t t = 0; t < result.schedule.sizes.size(); ++t) {
        std::cerr << (t ? "," : "") << result.schedule.sizes[t];
    }
    std::cerr << "] stop=" << cc::to_string(result.stop) << '\n';
    for (const auto& rec : result.records) {
        std::cerr << "  i=" << rec.i << " k_i=" << rec.k_i << " Y=" << rec.y << " Z=" << rec.z
                  << " X*2=" << rec.x_star_2 << " X*3=" << rec.x_star_3 << " uncovered_after=" << rec.uncovered_after
                  << " (" << rec.elapsed_ms << " ms)\n";
    }
    const double ln = std::log(static_cast<double>(std::max<std::size_t>(g.n(), 2)));
    const double nn = static_cast<double>(g.n());
    std::cerr << "cover_size=" << result.cover.size() << " m=" << g.m() << " uncovered_final=" << result.uncovered_final
              << " ratio=" << static_cast<double>(result.cover.size()) * ln * ln / (nn * nn) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Randomized edge clique covers of random graphs"};
    app.require_subcommand(1);

    // gen
    GraphSource gen_src;
    std::string gen_out;
    auto* gen = app.add_subcommand("gen", "Sample G(n,p) and write it as a graph file");
    gen->add_option("--n", gen_src.n, "Vertex count")->required();
    gen->add_option("--p", gen_src.p, "Edge probability")->required();
    gen->add_option("--seed", gen_src.seed, "Seed");
    gen->add_option("--out", gen_out, "Output path (default stdout)");

    // run
    GraphSource run_src;
    cc::CoverParams run_params;
    std::vector<std::size_t> run_schedule;
    std::string run_out;
    auto* run = app.add_subcommand("run", "Run COVER once and write the cover file");
    add_source_options(run, run_src);
    run->add_option("--alpha", run_params.alpha, "Clique size constant alpha");
    run->add_option("--schedule", run_schedule, "Explicit clique sizes per iteration")->delimiter(',');
    run->add_option("--i0", run_params.i0_override, "Iteration count override");
    run->add_option("--budget", run_params.clique_budget, "Clique budget per iteration");
    run->add_option("--workers", run_params.workers, "Worker threads");
    run->add_option("--out", run_out, "Cover output path (default stdout)");

    // verify
    std::string verify_graph, verify_cover;
    auto* verify = app.add_subcommand("verify", "Check that a cover file covers a graph file with cliques");
    verify->add_option("--graph", verify_graph, "Graph file")->required();
    verify->add_option("--cover", verify_cover, "Cover file")->required();

    // exact
    GraphSource exact_src;
    std::size_t exact_cap = cc::kDefaultExactCap;
    std::string exact_out;
    auto* exact = app.add_subcommand("exact", "Minimum clique cover of a small graph");
    add_source_options(exact, exact_src);
    exact->add_option("--cap", exact_cap, "Largest n accepted");
    exact->add_option("--out", exact_out, "Witness cover output path");

    // greedy
    GraphSource greedy_src;
    std::string greedy_out;
    auto* greedy = app.add_subcommand("greedy", "Greedy clique cover");
    add_source_options(greedy, greedy_src);
    greedy->add_option("--out", greedy_out, "Cover output path");

    // bounds
    GraphSource bounds_src;
    auto* bounds = app.add_subcommand("bounds", "Edge count, clique number and the counting lower bound");
    add_source_options(bounds, bounds_src);

    // survival
    GraphSource surv_src;
    cc::CoverParams surv_params;
    std::vector<std::size_t> surv_schedule;
    std::uint64_t surv_reps = 2000;
    std::size_t surv_edges = 50, surv_cliques = 0;
    auto* survival = app.add_subcommand("survival", "Monte Carlo edge survival of one frozen COVER iteration");
    add_source_options(survival, surv_src);
    survival->add_option("--alpha", surv_params.alpha, "Clique size constant alpha");
    survival->add_option("--schedule", surv_schedule, "Explicit clique sizes")->delimiter(',');
    survival->add_option("--reps", surv_reps, "Repetitions");
    survival->add_option("--edges", surv_edges, "Sampled edges");
    survival->add_option("--cliques", surv_cliques, "Tracked cliques for the Step A marginal");
    survival->add_option("--budget", surv_params.clique_budget, "Clique budget");

    // experiment
    std::string exp_config, exp_out_dir;
    unsigned exp_workers = 0;
    auto* experiment = app.add_subcommand("experiment", "Run a batch experiment from a config file");
    experiment->add_option("--config", exp_config, "Config file (key=value or JSON)")->required();
    experiment->add_option("--out-dir", exp_out_dir, "Override output_dir");
    experiment->add_option("--workers", exp_workers, "Override worker count");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitValidation;
    }

    try {
        if (gen->parsed()) {
            const auto g = cc::generate_gnp(gen_src.n, gen_src.p, cc::Seed{gen_src.seed});
            emit(gen_out, [&](std::ostream& out) { cc::save_graph(g, out); });
            return 0;
        }
        if (run->parsed()) {
            const auto g = run_src.load();
            run_params.p = run_src.p;
            run_params.rng_seed = cc::Seed{run_src.seed};
            if (!run_schedule.empty()) run_params.schedule_override = run_schedule;
            const auto result = cc::run_cover(g, run_params);
            emit(run_out, [&](std::ostream& out) { cc::save_cover(result.cover, out); });
            print_cover_summary(result, g);
            return 0;
        }
        if (verify->parsed()) {
            const auto g = read_graph_file(verify_graph);
            std::ifstream in(verify_cover);
            if (!in) throw cc::ParseError(0, "cannot open cover file " + verify_cover);
            const auto cover = cc::load_cover(in);
            const auto verdict = cc::verify_cover(g, cover);
            if (!verdict.valid) {
                std::cout << "invalid: " << verdict.message << '\n';
                return kExitValidation;
            }
            std::cout << "valid: " << cover.size() << " cliques cover " << g.m() << " edges\n";
            return 0;
        }
        if (exact->parsed()) {
            const auto g = exact_src.load();
            const auto result = cc::exact_theta1(g, exact_cap);
            std::cout << "theta1=" << result.size << " nodes=" << result.nodes << '\n';
            if (!exact_out.empty()) emit(exact_out, [&](std::ostream& out) { cc::save_cover(result.witness, out); });
            return 0;
        }
        if (greedy->parsed()) {
            const auto g = greedy_src.load();
            const auto cover = cc::greedy_cover(g);
            if (greedy_out.empty()) {
                std::cout << "greedy=" << cover.size() << '\n';
            } else {
                emit(greedy_out, [&](std::ostream& out) { cc::save_cover(cover, out); });
                std::cout << "greedy=" << cover.size() << '\n';
            }
            return 0;
        }
        if (bounds->parsed()) {
            const auto g = bounds_src.load();
            const auto report = cc::lower_bound(g, bounds_src.graph_path.empty() ? std::optional<double>(bounds_src.p)
                                                                                 : std::nullopt);
            std::cout << "m=" << report.m << " omega=" << report.omega << " lower=" << report.lower;
            if (report.c1_reference) std::cout << " c1_reference=" << *report.c1_reference;
            std::cout << '\n';
            return 0;
        }
        if (survival->parsed()) {
            const auto g = surv_src.load();
            surv_params.p = surv_src.p;
            surv_params.rng_seed = cc::Seed{surv_src.seed};
            if (!surv_schedule.empty()) surv_params.schedule_override = surv_schedule;
            const auto report = cc::estimate_survival(g, surv_params, surv_reps, surv_edges, surv_cliques);
            std::cout << "k=" << report.k << " X*2=" << report.x_star_2 << " X*3=" << report.x_star_3
                      << " target=" << report.target << " reps=" << report.reps
                      << " within_4_sigma=" << report.fraction_within_4_sigma << '\n';
            std::cout << "u,v,X_u,rho,frequency,exact,sigma\n";
            for (const auto& e : report.edges) {
                std::cout << e.edge.u << ',' << e.edge.v << ',' << e.x_u << ',' << e.rho << ',' << e.frequency << ','
                          << e.exact << ',' << e.sigma << '\n';
            }
            for (const auto& pr : report.pairs) {
                std::cout << "pair " << pr.first.u << '-' << pr.first.v << ' ' << pr.second.u << '-' << pr.second.v
                          << " joint=" << pr.joint_frequency << " independent=" << pr.independent_target << '\n';
            }
            for (const auto& c : report.cliques) {
                std::cout << "clique";
                for (auto v : c.clique.vertices) std::cout << ' ' << v;
                std::cout << " frequency=" << c.frequency << " target=" << report.selection_prob << '\n';
            }
            return 0;
        }
        if (experiment->parsed()) {
            auto config = cc::load_experiment_config(exp_config);
            if (!exp_out_dir.empty()) config.output_dir = exp_out_dir;
            if (exp_workers > 0) config.workers = exp_workers;
            const auto result = cc::run_experiment(config);
            for (const auto& r : result.runs) {
                std::cout << "n=" << r.n << " seed=" << r.seed << " cover=" << r.cover_size << " m=" << r.m
                          << " lower=" << r.lower << " ratio=" << r.ratio << (r.valid ? "" : " INVALID") << '\n';
            }
            for (const auto& f : result.failures) {
                std::cout << "n=" << f.n << " seed=" << f.seed << " " << f.kind << " failure: " << f.message << '\n';
            }
            bool invalid = false, sizing = false;
            for (const auto& f : result.failures) {
                invalid = invalid || f.kind == "validation";
                sizing = sizing || f.kind == "sizing";
            }
            if (invalid) return kExitValidation;
            if (sizing) return kExitSizing;
            return 0;
        }
    } catch (const cc::ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return kExitParse;
    } catch (const cc::SizingError& e) {
        std::cerr << "sizing error: " << e.what() << '\n';
        return kExitSizing;
    } catch (const cc::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    }
    return 0;
}
