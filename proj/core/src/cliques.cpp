#include "cliquecover/cliques.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>

#include "cliquecover/errors.hpp"
#include "parallel.hpp"

namespace cliquecover {

namespace {

using bits::MutRow;
using bits::Row;
using bits::Word;

// Clique counting inside candidate sets, with one scratch row per recursion depth.
class CliqueCounter {
public:
    explicit CliqueCounter(const Graph& g) : g_(g), words_(g.words_per_row()) {}

    std::uint64_t count(Row p, std::size_t r, std::size_t depth = 0) {
        if (r == 0) return 1;
        if (r == 1) return bits::count(p);
        std::uint64_t total = 0;
        if (r == 2) {
            bits::for_each(p, [&](std::size_t y) { total += bits::count_intersection_above(p, g_.row(Vertex(y)), y); });
            return total;
        }
        MutRow next = scratch(depth);
        bits::for_each(p, [&](std::size_t y) {
            bits::intersect_above(p, g_.row(Vertex(y)), y, next);
            total += count(next, r - 1, depth + 1);
        });
        return total;
    }

    // Returns {all r-cliques in t, r-cliques in t whose vertices all exceed x}.
    std::pair<std::uint64_t, std::uint64_t> count_split(Row t, std::size_t r, std::size_t x) {
        if (r == 0) return {1, 1};
        if (r == 1) {
            const std::size_t first = x >> 6;
            std::uint64_t above = static_cast<std::uint64_t>(std::popcount(t[first] & bits::above_mask(x)));
            for (std::size_t w = first + 1; w < t.size(); ++w) above += static_cast<std::uint64_t>(std::popcount(t[w]));
            return {bits::count(t), above};
        }
        std::uint64_t total = 0, above = 0;
        MutRow next = scratch(0);
        bits::for_each(t, [&](std::size_t y) {
            std::uint64_t term;
            if (r == 2) {
                term = bits::count_intersection_above(t, g_.row(Vertex(y)), y);
            } else {
                bits::intersect_above(t, g_.row(Vertex(y)), y, next);
                term = count(next, r - 1, 1);
            }
            total += term;
            if (y > x) above += term;
        });
        return {total, above};
    }

    MutRow scratch(std::size_t depth) {
        while (scratch_.size() <= depth) scratch_.emplace_back(words_, 0);
        return scratch_[depth];
    }

private:
    const Graph& g_;
    std::size_t words_;
    std::vector<std::vector<Word>> scratch_;
};

std::uint64_t choose2(std::uint64_t k) { return k < 2 ? 0 : k * (k - 1) / 2; }

// Common neighbourhood of s (all vertices when s is empty). Validates s as a clique of g.
std::vector<Word> common_neighbourhood(const Clique& s, const Graph& g) {
    const std::size_t n = g.n();
    for (std::size_t a = 0; a < s.vertices.size(); ++a) {
        if (s.vertices[a] >= n) throw PreconditionError("clique vertex out of range");
        if (a > 0 && s.vertices[a - 1] >= s.vertices[a]) {
            throw PreconditionError("clique vertices must be strictly increasing");
        }
    }
    if (!is_clique(g, s)) throw PreconditionError("S is not a clique of the active edge set");
    std::vector<Word> p(g.words_per_row(), 0);
    if (s.vertices.empty()) {
        for (std::size_t v = 0; v < n; ++v) bits::set(p, v);
    } else {
        auto first = g.row(s.vertices.front());
        std::copy(first.begin(), first.end(), p.begin());
        for (std::size_t a = 1; a < s.vertices.size(); ++a) {
            bits::intersect(p, g.row(s.vertices[a]), p);
        }
    }
    return p;
}

}  // namespace

bool is_clique(const Graph& g, const Clique& c) {
    const auto& vs = c.vertices;
    for (std::size_t a = 0; a < vs.size(); ++a) {
        if (vs[a] >= g.n()) return false;
        if (a > 0 && vs[a - 1] >= vs[a]) return false;
        for (std::size_t b = a + 1; b < vs.size(); ++b) {
            if (!g.adjacent(vs[a], vs[b])) return false;
        }
    }
    return true;
}

void for_each_clique_containing(const Clique& s, std::size_t j, const Graph& active,
                                const std::function<void(const Clique&)>& visit) {
    if (s.size() > j) throw PreconditionError("|S| exceeds the clique size j");
    std::vector<Word> p = common_neighbourhood(s, active);
    if (j > active.n()) return;

    const std::size_t r = j - s.size();
    std::vector<std::vector<Word>> levels(r + 1, std::vector<Word>(active.words_per_row(), 0));
    levels[0] = std::move(p);
    std::vector<Vertex> chosen;
    chosen.reserve(r);
    Clique out;
    out.vertices.reserve(j);

    auto extend = [&](auto&& self, std::size_t depth) -> void {
        if (depth == r) {
            out.vertices.clear();
            std::merge(s.vertices.begin(), s.vertices.end(), chosen.begin(), chosen.end(),
                       std::back_inserter(out.vertices));
            visit(out);
            return;
        }
        const Row here = levels[depth];
        bits::for_each(here, [&](std::size_t y) {
            bits::intersect_above(here, active.row(Vertex(y)), y, levels[depth + 1]);
            if (depth + 1 < r && bits::count(levels[depth + 1]) < r - depth - 1) return;
            chosen.push_back(Vertex(y));
            self(self, depth + 1);
            chosen.pop_back();
        });
    };
    extend(extend, 0);
}

void for_each_clique_containing(const Clique& s, std::size_t j, const Graph& g, const EdgeSet& active,
                                const std::function<void(const Clique&)>& visit) {
    for_each_clique_containing(s, j, g.restricted_to(active), visit);
}

std::vector<Clique> cliques_containing(const Clique& s, std::size_t j, const Graph& active) {
    std::vector<Clique> out;
    for_each_clique_containing(s, j, active, [&](const Clique& c) { out.push_back(c); });
    return out;
}

std::uint64_t count_cliques_containing(const Clique& s, std::size_t j, const Graph& active) {
    if (s.size() > j) throw PreconditionError("|S| exceeds the clique size j");
    std::vector<Word> p = common_neighbourhood(s, active);
    if (j > active.n()) return 0;
    CliqueCounter counter(active);
    return counter.count(p, j - s.size());
}

std::uint64_t count_cliques_within(const Graph& g, bits::Row candidates, std::size_t r) {
    CliqueCounter counter(g);
    return counter.count(candidates, r);
}

CliqueStats count_per_edge(std::size_t j, const Graph& active, unsigned workers) {
    if (j < 2) throw PreconditionError("clique size j must be at least 2");
    const std::size_t n = active.n();
    const std::size_t words = active.words_per_row();
    const EdgeId pairs = pair_count(n);

    CliqueStats stats;
    stats.j = j;
    stats.m_active = active.m();
    stats.per_edge.assign(pairs, 0);
    stats.rooted.assign(pairs, 0);

    if (j == 2) {
        active.for_each_edge([&](Vertex u, Vertex v) {
            const EdgeId e = edge_index(n, u, v);
            stats.per_edge[e] = 1;
            stats.rooted[e] = 1;
        });
        stats.total = active.m();
        stats.x_star_2 = active.m() > 0 ? 1 : 0;
        stats.x_star_3 = 0;
        stats.zeta = active.m() > 0 ? 1.0 : 0.0;
        return stats;
    }

    // Every triangle {a<b<x} is visited once from its smallest edge (a,b). X_T for the triangle
    // is credited to its three edges; each j-clique through an edge is then seen j-2 times.
    workers = std::max(1u, workers);
    struct Partial {
        std::vector<std::uint64_t> sums;
        std::uint64_t x3 = 0;
        std::vector<Word> common, triple;
        std::unique_ptr<CliqueCounter> counter;
    };
    std::vector<Partial> partials(workers);
    for (auto& part : partials) {
        part.sums.assign(workers == 1 ? 0 : pairs, 0);
        part.common.assign(words, 0);
        part.triple.assign(words, 0);
        part.counter = std::make_unique<CliqueCounter>(active);
    }
    const std::size_t r = j - 3;

    detail::parallel_for(n, workers, [&](unsigned w, std::size_t root) {
        Partial& part = partials[w];
        std::vector<std::uint64_t>& sums = workers == 1 ? stats.per_edge : part.sums;
        const auto a = static_cast<Vertex>(root);
        const Row ra = active.row(a);
        const std::size_t first = std::size_t(a) >> 6;
        for (std::size_t wb = first; wb < words; ++wb) {
            Word word = ra[wb];
            if (wb == first) word &= bits::above_mask(a);
            while (word) {
                const auto b = static_cast<Vertex>((wb << 6) + std::countr_zero(word));
                word &= word - 1;
                bits::intersect(ra, active.row(b), part.common);
                const EdgeId ab = edge_index(n, a, b);
                std::uint64_t rooted = 0;
                const Row common = part.common;
                const std::size_t fx = std::size_t(b) >> 6;
                for (std::size_t wx = fx; wx < words; ++wx) {
                    Word xs = common[wx];
                    if (wx == fx) xs &= bits::above_mask(b);
                    while (xs) {
                        const auto x = static_cast<Vertex>((wx << 6) + std::countr_zero(xs));
                        xs &= xs - 1;
                        bits::intersect(common, active.row(x), part.triple);
                        const auto [through, beyond] = part.counter->count_split(part.triple, r, x);
                        sums[ab] += through;
                        sums[edge_index(n, a, x)] += through;
                        sums[edge_index(n, b, x)] += through;
                        rooted += beyond;
                        part.x3 = std::max(part.x3, through);
                    }
                }
                stats.rooted[ab] = rooted;
            }
        }
    });

    if (workers > 1) {
        for (const auto& part : partials) {
            for (EdgeId e = 0; e < pairs; ++e) stats.per_edge[e] += part.sums[e];
        }
    }
    for (const auto& part : partials) stats.x_star_3 = std::max(stats.x_star_3, part.x3);

    const std::uint64_t divisor = j - 2;
    std::uint64_t edge_sum = 0;
    for (EdgeId e = 0; e < pairs; ++e) {
        stats.per_edge[e] /= divisor;
        edge_sum += stats.per_edge[e];
        stats.x_star_2 = std::max(stats.x_star_2, stats.per_edge[e]);
    }
    stats.total = edge_sum / choose2(j);
    stats.zeta = stats.m_active == 0 ? 0.0 : static_cast<double>(edge_sum) / static_cast<double>(stats.m_active);
    return stats;
}

CliqueStats count_per_edge(std::size_t j, const Graph& g, const EdgeSet& active, unsigned workers) {
    return count_per_edge(j, g.restricted_to(active), workers);
}

Clique rooted_clique_at(const Graph& active, Edge root, std::size_t j, std::uint64_t rank) {
    if (j < 2) throw PreconditionError("clique size j must be at least 2");
    if (!active.adjacent(root.u, root.v) || root.u >= root.v) {
        throw PreconditionError("root must be an active edge (u < v)");
    }
    Clique out;
    out.vertices = {root.u, root.v};
    if (j == 2) {
        if (rank != 0) throw PreconditionError("rank out of range");
        return out;
    }
    CliqueCounter counter(active);
    std::vector<Word> p(active.words_per_row()), q(active.words_per_row());
    bits::intersect_above(active.row(root.u), active.row(root.v), root.v, p);
    std::size_t remaining = j - 2;
    while (remaining > 0) {
        if (remaining == 1) {
            const std::size_t v = bits::select(p, rank);
            if (v >= active.n()) throw PreconditionError("rank out of range");
            out.vertices.push_back(Vertex(v));
            return out;
        }
        bool placed = false;
        bits::for_each(p, [&](std::size_t y) {
            if (placed) return;
            bits::intersect_above(p, active.row(Vertex(y)), y, q);
            const std::uint64_t c = counter.count(q, remaining - 1, 1);
            if (rank < c) {
                out.vertices.push_back(Vertex(y));
                placed = true;
            } else {
                rank -= c;
            }
        });
        if (!placed) throw PreconditionError("rank out of range");
        std::swap(p, q);
        --remaining;
    }
    return out;
}

double binomial(double n, std::size_t k) {
    if (static_cast<double>(k) > n) return 0.0;
    if (k <= 64) {
        double r = 1.0;
        for (std::size_t t = 1; t <= k; ++t) r = r * (n - static_cast<double>(k) + static_cast<double>(t)) / static_cast<double>(t);
        return r;
    }
    const double kk = static_cast<double>(k);
    return std::exp(std::lgamma(n + 1) - std::lgamma(kk + 1) - std::lgamma(n - kk + 1));
}

double expected_count(std::size_t s, std::size_t j, std::size_t i, std::size_t n, double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw DomainError("edge probability must lie in [0,1]");
    if (s > j || j > n) throw PreconditionError("expected_count needs 0 <= s <= j <= n");
    if (i < 1) throw PreconditionError("iteration index starts at 1");
    if (s == j) return 1.0;
    if (p == 0.0) throw DomainError("expected_count is undefined for p = 0 when s < j");
    const double base = std::exp(static_cast<double>(i - 1)) / p;
    const double exponent = static_cast<double>(choose2(s)) - static_cast<double>(choose2(j));
    return binomial(static_cast<double>(n - s), j - s) * std::pow(base, exponent);
}

CountEstimate estimate_clique_count(std::size_t j, const Graph& active, std::uint64_t samples, Seed seed) {
    if (samples == 0) throw PreconditionError("estimate_clique_count needs at least one sample");
    CountEstimate est;
    est.samples = samples;
    const std::size_t n = active.n();
    if (j > n) return est;
    KeyedRng rng(seed, Stream::sampling, static_cast<std::uint32_t>(j), 0);
    std::vector<Vertex> subset;
    subset.reserve(j);
    for (std::uint64_t t = 0; t < samples; ++t) {
        // Floyd's algorithm: uniform j-subset of {0..n-1}.
        subset.clear();
        for (std::size_t top = n - j; top < n; ++top) {
            const auto r = static_cast<Vertex>(rng.below(top + 1));
            if (std::find(subset.begin(), subset.end(), r) == subset.end()) {
                subset.push_back(r);
            } else {
                subset.push_back(static_cast<Vertex>(top));
            }
        }
        bool ok = true;
        for (std::size_t a = 0; a < subset.size() && ok; ++a) {
            for (std::size_t b = a + 1; b < subset.size(); ++b) {
                if (!active.adjacent(subset[a], subset[b])) {
                    ok = false;
                    break;
                }
            }
        }
        est.accepted += ok;
    }
    const double total = binomial(static_cast<double>(n), j);
    const double rate = static_cast<double>(est.accepted) / static_cast<double>(samples);
    est.estimate = total * rate;
    est.std_error = total * std::sqrt(rate * (1.0 - rate) / static_cast<double>(samples));
    return est;
}

CountEstimate estimate_clique_count(std::size_t j, const Graph& g, const EdgeSet& active, std::uint64_t samples,
                                    Seed seed) {
    return estimate_clique_count(j, g.restricted_to(active), samples, seed);
}

}  // namespace cliquecover
