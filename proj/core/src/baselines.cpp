#include "cliquecover/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cliquecover/cliques.hpp"
#include "cliquecover/errors.hpp"

namespace cliquecover {

double c1_reference(double p) {
    if (!(p > 0.0 && p < 1.0)) throw DomainError("c1 reference needs 0 < p < 1");
    const double ln_b = std::log(1.0 / p);
    return ln_b * ln_b * p / 2.0;
}

BoundReport lower_bound(const Graph& g, std::optional<double> p) {
    BoundReport report;
    report.m = g.m();
    if (p && *p > 0.0 && *p < 1.0) report.c1_reference = c1_reference(*p);
    if (g.m() == 0) {
        report.omega = g.n() > 0 ? 1 : 0;
        return report;
    }
    report.omega = max_clique(g).size;
    const std::size_t per_clique = report.omega * (report.omega - 1) / 2;
    report.lower = (report.m + per_clique - 1) / per_clique;
    return report;
}

namespace {

// Set cover over maximal cliques. Any cover can swap each member for a maximal clique containing
// it without losing coverage or growing, so some minimum cover uses maximal cliques only.
class ExactCoverSearch {
public:
    ExactCoverSearch(const Graph& g, std::vector<Clique> cliques) : cliques_(std::move(cliques)) {
        const std::size_t n = g.n();
        std::vector<EdgeId> local(pair_count(n), 0);
        g.for_each_edge([&](Vertex u, Vertex v) { local[edge_index(n, u, v)] = edges_++; });
        words_ = bits::words_for(edges_);
        masks_.assign(cliques_.size(), std::vector<bits::Word>(words_, 0));
        covering_.assign(edges_, {});
        for (std::size_t c = 0; c < cliques_.size(); ++c) {
            const auto& vs = cliques_[c].vertices;
            omega_ = std::max(omega_, vs.size());
            for (std::size_t a = 0; a < vs.size(); ++a) {
                for (std::size_t b = a + 1; b < vs.size(); ++b) {
                    const EdgeId e = local[edge_index(n, vs[a], vs[b])];
                    bits::set(masks_[c], e);
                    covering_[e].push_back(c);
                }
            }
        }
    }

    ExactCoverResult run(const CliqueCover& incumbent) {
        best_size_ = incumbent.size();
        best_ = incumbent;
        std::vector<bits::Word> uncovered(words_, 0);
        for (std::size_t e = 0; e < edges_; ++e) bits::set(uncovered, e);
        search(uncovered);
        return {best_size_, best_, nodes_};
    }

private:
    void search(const std::vector<bits::Word>& uncovered) {
        ++nodes_;
        const std::size_t left = bits::count(uncovered);
        if (left == 0) {
            if (chosen_.size() < best_size_) {
                best_size_ = chosen_.size();
                best_.cliques.clear();
                for (std::size_t c : chosen_) best_.cliques.push_back(cliques_[c]);
            }
            return;
        }
        const std::size_t per_clique = omega_ * (omega_ - 1) / 2;
        if (chosen_.size() + (left + per_clique - 1) / per_clique >= best_size_) return;

        // Branch on the uncovered edge with the fewest covering cliques.
        std::size_t pick = edges_;
        bits::for_each(bits::Row(uncovered), [&](std::size_t e) {
            if (pick == edges_ || covering_[e].size() < covering_[pick].size()) pick = e;
        });
        std::vector<std::pair<std::size_t, std::size_t>> options;
        for (std::size_t c : covering_[pick]) options.emplace_back(bits::count_intersection(masks_[c], uncovered), c);
        std::stable_sort(options.begin(), options.end(), [](auto& x, auto& y) { return x.first > y.first; });

        std::vector<bits::Word> next(words_);
        for (const auto& [gain, c] : options) {
            for (std::size_t w = 0; w < words_; ++w) next[w] = uncovered[w] & ~masks_[c][w];
            chosen_.push_back(c);
            search(next);
            chosen_.pop_back();
        }
    }

    std::vector<Clique> cliques_;
    std::size_t edges_ = 0;
    std::size_t words_ = 0;
    std::size_t omega_ = 2;
    std::vector<std::vector<bits::Word>> masks_;
    std::vector<std::vector<std::size_t>> covering_;
    std::vector<std::size_t> chosen_;
    std::size_t best_size_ = 0;
    CliqueCover best_;
    std::uint64_t nodes_ = 0;
};

}  // namespace

ExactCoverResult exact_theta1(const Graph& g, std::size_t cap) {
    if (g.n() > cap) {
        throw SizingError("exact clique cover capped at n=" + std::to_string(cap) + ", got n=" + std::to_string(g.n()));
    }
    if (g.m() == 0) return {};
    ExactCoverSearch search(g, maximal_cliques(g, std::max(cap, g.n())));
    return search.run(greedy_cover(g));
}

CliqueCover greedy_cover(const Graph& g) {
    const std::size_t n = g.n();
    const std::size_t words = g.words_per_row();
    std::vector<bits::Word> uncovered(n * words, 0);
    for (Vertex v = 0; v < n; ++v) {
        const auto r = g.row(v);
        std::copy(r.begin(), r.end(), uncovered.begin() + std::ptrdiff_t(v) * std::ptrdiff_t(words));
    }
    auto unc = [&](Vertex v) { return bits::MutRow(uncovered.data() + std::size_t(v) * words, words); };

    CliqueCover cover;
    std::vector<bits::Word> members(words), candidates(words);
    std::vector<Vertex> clique;
    for (Vertex u = 0; u < n; ++u) {
        while (true) {
            const auto ru = unc(u);
            const std::size_t first = std::size_t(u) >> 6;
            std::size_t v = n;
            for (std::size_t w = first; w < words && v == n; ++w) {
                bits::Word word = ru[w];
                if (w == first) word &= bits::above_mask(u);
                if (word) v = (w << 6) + static_cast<std::size_t>(std::countr_zero(word));
            }
            if (v == n) break;

            clique = {u, static_cast<Vertex>(v)};
            std::fill(members.begin(), members.end(), 0);
            bits::set(members, u);
            bits::set(members, v);
            bits::intersect(g.row(u), g.row(static_cast<Vertex>(v)), candidates);
            while (true) {
                std::size_t best = n, best_gain = 0;
                bits::for_each(bits::Row(candidates), [&](std::size_t x) {
                    const std::size_t gain = bits::count_intersection(unc(static_cast<Vertex>(x)), members);
                    if (best == n || gain > best_gain) {
                        best = x;
                        best_gain = gain;
                    }
                });
                if (best == n) break;
                clique.push_back(static_cast<Vertex>(best));
                bits::set(members, best);
                bits::intersect(candidates, g.row(static_cast<Vertex>(best)), candidates);
            }
            std::sort(clique.begin(), clique.end());
            for (std::size_t a = 0; a < clique.size(); ++a) {
                for (std::size_t b = a + 1; b < clique.size(); ++b) {
                    bits::reset(unc(clique[a]), clique[b]);
                    bits::reset(unc(clique[b]), clique[a]);
                }
            }
            cover.cliques.push_back(Clique{clique});
        }
    }
    return cover;
}

}  // namespace cliquecover
