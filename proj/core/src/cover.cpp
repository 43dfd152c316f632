#include "cliquecover/cover.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "cliquecover/errors.hpp"
#include "parallel.hpp"

namespace cliquecover {

Schedule derive_schedule(std::size_t n, const CoverParams& params) {
    Schedule sched;
    if (params.schedule_override) {
        const auto& sizes = *params.schedule_override;
        for (std::size_t t = 0; t < sizes.size(); ++t) {
            if (sizes[t] < 3) throw PreconditionError("schedule entries must be at least 3");
            if (t > 0 && sizes[t] > sizes[t - 1]) throw PreconditionError("schedule must be non-increasing");
        }
        sched.sizes = sizes;
        sched.k = sizes.empty() ? 0 : sizes.front();
        sched.i0 = sizes.size();
        return sched;
    }
    if (!(params.p > 0.0 && params.p <= 1.0)) throw DomainError("COVER needs 0 < p <= 1");
    if (!(params.alpha > 0.0)) throw DomainError("alpha must be positive");
    if (!params.i0_override && n < 3) {
        throw SizingError("i0 = ceil(4 ln ln n) is undefined for n = " + std::to_string(n));
    }

    if (params.p == 1.0) {
        sched.k = n;
    } else {
        // Small slack so that e.g. 0.6 * log2(1024) lands on 6 rather than 5.999...
        const double raw = params.alpha * std::log(static_cast<double>(n)) / std::log(1.0 / params.p);
        sched.k = static_cast<std::size_t>(std::max(0.0, std::floor(raw + 1e-9)));
        sched.k = std::min(sched.k, n);
    }
    if (params.i0_override) {
        sched.i0 = *params.i0_override;
    } else {
        sched.i0 = static_cast<std::size_t>(std::ceil(4.0 * std::log(std::log(static_cast<double>(n)))));
    }
    for (std::size_t i = 1; i <= sched.i0; ++i) {
        const std::size_t k_i = sched.k / i;
        if (k_i < 3) break;
        sched.sizes.push_back(k_i);
    }
    return sched;
}

double rho(std::uint64_t x_u, std::uint64_t x_star_2) {
    if (x_star_2 == 0) throw PreconditionError("rho needs X*_2 >= 1");
    if (x_u > x_star_2) throw PreconditionError("rho needs X_u <= X*_2");
    if (x_star_2 == 1) return 1.0;
    const double inv = 1.0 / static_cast<double>(x_star_2);
    const double stay = std::exp(static_cast<double>(x_u) * std::log1p(-inv));
    const double value = 1.0 - (std::exp(-1.0) - inv) / stay;
    return std::clamp(value, 0.0, 1.0);
}

CoverState::CoverState(Graph g) : graph_(std::move(g)), active_(graph_) {}

const Graph& CoverState::active_graph() const {
    if (!active_graph_) active_graph_ = graph_.restricted_to(active_);
    return *active_graph_;
}

void CoverState::add_cliques(std::span<const Clique> cliques) {
    const std::size_t n = graph_.n();
    for (const Clique& c : cliques) {
        for (std::size_t a = 0; a < c.vertices.size(); ++a) {
            for (std::size_t b = a + 1; b < c.vertices.size(); ++b) {
                active_.erase(edge_index(n, c.vertices[a], c.vertices[b]));
            }
        }
        cover_.cliques.push_back(c);
    }
    if (!cliques.empty()) active_graph_.reset();
}

void CoverState::add_edges(std::span<const EdgeId> edges) {
    const std::size_t n = graph_.n();
    for (EdgeId e : edges) {
        active_.erase(e);
        const Edge uv = edge_endpoints(n, e);
        cover_.cliques.push_back(Clique{{uv.u, uv.v}});
    }
    if (!edges.empty()) active_graph_.reset();
}

void CoverState::finish_iteration(IterationRecord record) {
    records_.push_back(record);
    ++iteration_;
}

std::vector<Clique> select_cliques(const Graph& active, const CliqueStats& stats, std::size_t iteration, Seed seed,
                                   unsigned workers) {
    if (stats.x_star_2 == 0) return {};
    const std::size_t n = active.n();
    const double q = 1.0 / static_cast<double>(stats.x_star_2);
    std::vector<std::vector<Clique>> by_root(n);

    detail::parallel_for(n, workers, [&](unsigned, std::size_t root) {
        const auto a = static_cast<Vertex>(root);
        auto& out = by_root[root];
        const bits::Row ra = active.row(a);
        const std::size_t first = root >> 6;
        for (std::size_t w = first; w < ra.size(); ++w) {
            bits::Word word = ra[w];
            if (w == first) word &= bits::above_mask(root);
            while (word) {
                const auto b = static_cast<Vertex>((w << 6) + std::countr_zero(word));
                word &= word - 1;
                const std::uint64_t group = stats.rooted[edge_index(n, a, b)];
                if (group == 0) continue;
                KeyedRng rng(seed, Stream::step_a, a, b, static_cast<std::uint32_t>(iteration));
                std::uint64_t rank = rng.geometric(q);
                while (rank < group) {
                    out.push_back(rooted_clique_at(active, {a, b}, stats.j, rank));
                    const std::uint64_t gap = rng.geometric(q);
                    if (gap >= group - rank - 1) break;
                    rank += gap + 1;
                }
            }
        }
    });

    std::vector<Clique> selected;
    for (auto& part : by_root) {
        std::move(part.begin(), part.end(), std::back_inserter(selected));
    }
    return selected;
}

std::vector<EdgeId> select_edges(const EdgeSet& uncovered, const CliqueStats& stats, std::size_t iteration,
                                 Seed seed) {
    std::vector<EdgeId> chosen;
    if (stats.x_star_2 == 0) return chosen;
    uncovered.for_each([&](EdgeId e) {
        const double r = rho(stats.per_edge[e], stats.x_star_2);
        if (r <= 0.0) return;
        KeyedRng rng(seed, Stream::step_b, static_cast<std::uint32_t>(e), static_cast<std::uint32_t>(e >> 32),
                     static_cast<std::uint32_t>(iteration));
        if (r >= 1.0 || rng.uniform() < r) chosen.push_back(e);
    });
    return chosen;
}

void check_clique_budget(const Graph& active, std::size_t k_i, std::size_t iteration, const CoverParams& params) {
    const std::size_t n = active.n();
    if (k_i > n) return;
    const double predicted = params.p > 0.0 ? expected_count(0, k_i, iteration, n, params.p) : 0.0;
    const CountEstimate sampled =
        estimate_clique_count(k_i, active, std::max<std::uint64_t>(1, params.guard_samples),
                              derive_seed(params.rng_seed, iteration));
    const double worst = std::max(predicted, sampled.estimate);
    if (worst > static_cast<double>(params.clique_budget)) {
        std::ostringstream msg;
        msg << "clique budget exceeded at iteration i=" << iteration << ", k_i=" << k_i << ": predicted "
            << predicted << ", sampled estimate " << sampled.estimate << " > budget " << params.clique_budget;
        throw SizingError(msg.str());
    }
}

StepAResult step_a(CoverState& state, std::size_t k_i, const CoverParams& params) {
    if (k_i < 3) throw PreconditionError("Step A needs k_i >= 3");
    if (state.active().empty()) throw PreconditionError("Step A needs a nonempty active edge set");
    const Graph& active = state.active_graph();
    check_clique_budget(active, k_i, state.iteration(), params);

    StepAResult result;
    result.stats = count_per_edge(k_i, active, params.workers);
    if (result.stats.x_star_2 == 0) {
        result.no_cliques = true;
        return result;
    }
    result.selected = select_cliques(active, result.stats, state.iteration(), params.rng_seed, params.workers);
    state.add_cliques(result.selected);
    return result;
}

std::vector<EdgeId> step_b(CoverState& state, const CliqueStats& stats, const CoverParams& params) {
    std::vector<EdgeId> chosen = select_edges(state.active(), stats, state.iteration(), params.rng_seed);
    state.add_edges(chosen);
    return chosen;
}

std::string to_string(StopReason reason) {
    switch (reason) {
        case StopReason::schedule_complete: return "schedule_complete";
        case StopReason::no_cliques: return "no_cliques";
        case StopReason::all_covered: return "all_covered";
        case StopReason::empty_schedule: return "empty_schedule";
    }
    return "unknown";
}

CoverResult run_cover(const Graph& g, const CoverParams& params) {
    CoverResult result;
    if (g.m() == 0) {
        result.stop = StopReason::all_covered;
        return result;
    }
    if (g.n() >= 3 || params.schedule_override || params.i0_override) {
        result.schedule = derive_schedule(g.n(), params);
    }
    if (result.schedule.sizes.empty()) result.stop = StopReason::empty_schedule;

    CoverState state(g);
    for (std::size_t k_i : result.schedule.sizes) {
        if (state.active().empty()) {
            result.stop = StopReason::all_covered;
            break;
        }
        const auto start = std::chrono::steady_clock::now();
        IterationRecord record;
        record.i = state.iteration();
        record.k_i = k_i;
        record.uncovered_before = state.active().size();

        StepAResult a = step_a(state, k_i, params);
        record.x_star_2 = a.stats.x_star_2;
        record.x_star_3 = a.stats.x_star_3;
        if (a.no_cliques) {
            record.uncovered_after = state.active().size();
            record.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
            state.finish_iteration(record);
            result.stop = StopReason::no_cliques;
            break;
        }
        record.y = a.selected.size();
        record.z = step_b(state, a.stats, params).size();
        record.uncovered_after = state.active().size();
        record.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        state.finish_iteration(record);
    }

    // Edges still uncovered after the last iteration join the cover as 2-cliques.
    std::vector<EdgeId> rest;
    rest.reserve(state.active().size());
    state.active().for_each([&](EdgeId e) { rest.push_back(e); });
    result.uncovered_final = rest.size();
    state.add_edges(rest);

    result.cover = state.cover();
    result.records = state.records();
    return result;
}

CoverVerdict verify_cover(const Graph& g, const CliqueCover& cover) {
    CoverVerdict verdict;
    const std::size_t n = g.n();
    EdgeSet covered(n);
    for (const Clique& c : cover.cliques) {
        if (c.size() < 2 || !is_clique(g, c)) {
            verdict.valid = false;
            verdict.bad_member = c;
            std::ostringstream msg;
            msg << "cover member {";
            for (std::size_t t = 0; t < c.vertices.size(); ++t) msg << (t ? " " : "") << c.vertices[t];
            msg << "} is not a clique of the graph";
            verdict.message = msg.str();
            return verdict;
        }
        for (std::size_t a = 0; a < c.vertices.size(); ++a) {
            for (std::size_t b = a + 1; b < c.vertices.size(); ++b) {
                covered.insert(edge_index(n, c.vertices[a], c.vertices[b]));
            }
        }
    }
    bool found = false;
    g.for_each_edge([&](Vertex u, Vertex v) {
        if (found || covered.contains(edge_index(n, u, v))) return;
        found = true;
        verdict.valid = false;
        verdict.uncovered_edge = Edge{u, v};
        verdict.message = "edge (" + std::to_string(u) + "," + std::to_string(v) + ") is not covered";
    });
    return verdict;
}

void save_cover(const CliqueCover& cover, std::ostream& out) {
    for (const Clique& c : cover.cliques) {
        for (std::size_t t = 0; t < c.vertices.size(); ++t) {
            if (t) out << ' ';
            out << c.vertices[t];
        }
        out << '\n';
    }
}

CliqueCover load_cover(std::istream& in) {
    CliqueCover cover;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::istringstream tokens(line);
        Clique c;
        std::string tok;
        while (tokens >> tok) {
            if (tok.find_first_not_of("0123456789") != std::string::npos) {
                throw ParseError(lineno, "non-numeric vertex \"" + tok + "\"");
            }
            unsigned long long v = 0;
            try {
                v = std::stoull(tok);
            } catch (const std::exception&) {
                throw ParseError(lineno, "vertex index out of range");
            }
            if (v > std::numeric_limits<Vertex>::max()) throw ParseError(lineno, "vertex index out of range");
            if (!c.vertices.empty() && c.vertices.back() >= v) {
                throw ParseError(lineno, "clique vertices must be strictly ascending");
            }
            c.vertices.push_back(static_cast<Vertex>(v));
        }
        cover.cliques.push_back(std::move(c));
    }
    return cover;
}

}  // namespace cliquecover
