#include <algorithm>
#include <deque>
#include <numeric>

#include "cliquecover/cliques.hpp"
#include "cliquecover/errors.hpp"

namespace cliquecover {

namespace {

using bits::MutRow;
using bits::Row;
using bits::Word;

bool any(Row r) {
    return std::any_of(r.begin(), r.end(), [](Word w) { return w != 0; });
}

// Branch and bound in the style of MCQ/BBMC: vertices are renumbered by non-increasing degree,
// candidate sets are bit rows and a greedy sequential colouring bounds every subproblem.
class MaxCliqueSearch {
public:
    explicit MaxCliqueSearch(const Graph& g) : n_(g.n()), words_(bits::words_for(g.n())) {
        order_.resize(n_);
        std::iota(order_.begin(), order_.end(), Vertex{0});
        std::vector<std::size_t> degree(n_);
        for (Vertex v = 0; v < n_; ++v) degree[v] = g.degree(v);
        std::stable_sort(order_.begin(), order_.end(), [&](Vertex a, Vertex b) { return degree[a] > degree[b]; });
        std::vector<Vertex> position(n_);
        for (std::size_t i = 0; i < n_; ++i) position[order_[i]] = static_cast<Vertex>(i);
        adjacency_.assign(n_ * words_, 0);
        for (std::size_t i = 0; i < n_; ++i) {
            bits::for_each(g.row(order_[i]), [&](std::size_t v) { bits::set(row_mut(i), position[v]); });
        }
    }

    MaxCliqueResult run() {
        MaxCliqueResult result;
        if (n_ == 0) return result;
        best_.assign(1, 0);
        std::vector<Word> all(words_, 0);
        for (std::size_t v = 0; v < n_; ++v) bits::set(all, v);
        current_.clear();
        expand(all, 0);
        result.size = best_.size();
        for (Vertex v : best_) result.witness.vertices.push_back(order_[v]);
        std::sort(result.witness.vertices.begin(), result.witness.vertices.end());
        return result;
    }

private:
    Row row(std::size_t v) const { return {adjacency_.data() + v * words_, words_}; }
    MutRow row_mut(std::size_t v) { return {adjacency_.data() + v * words_, words_}; }

    struct Level {
        std::vector<Word> uncoloured, colour_class, next;
        std::vector<std::pair<Vertex, std::size_t>> coloured;
    };

    Level& level(std::size_t depth) {
        while (levels_.size() <= depth) {
            levels_.push_back({std::vector<Word>(words_), std::vector<Word>(words_), std::vector<Word>(words_), {}});
        }
        return levels_[depth];
    }

    void expand(std::vector<Word>& candidates, std::size_t depth) {
        Level& lv = level(depth);
        lv.coloured.clear();
        const std::size_t min_colour = best_.size() >= current_.size() ? best_.size() - current_.size() + 1 : 1;
        std::copy(candidates.begin(), candidates.end(), lv.uncoloured.begin());
        std::size_t remaining = bits::count(lv.uncoloured);
        std::size_t lo = 0;
        std::size_t colour = 0;
        while (remaining > 0) {
            ++colour;
            while (!lv.uncoloured[lo]) ++lo;
            std::copy(lv.uncoloured.begin() + lo, lv.uncoloured.end(), lv.colour_class.begin() + lo);
            for (std::size_t w = lo; w < words_; ++w) {
                while (lv.colour_class[w]) {
                    const Word bit = lv.colour_class[w] & (~lv.colour_class[w] + 1);
                    const std::size_t v = (w << 6) + static_cast<std::size_t>(std::countr_zero(bit));
                    lv.uncoloured[w] &= ~bit;
                    --remaining;
                    // Earlier words of the class are already exhausted.
                    const Row nv = row(v);
                    lv.colour_class[w] &= ~(bit | nv[w]);
                    for (std::size_t x = w + 1; x < words_; ++x) lv.colour_class[x] &= ~nv[x];
                    if (colour >= min_colour) lv.coloured.emplace_back(static_cast<Vertex>(v), colour);
                }
            }
        }
        for (std::size_t idx = lv.coloured.size(); idx-- > 0;) {
            const auto [v, c] = lv.coloured[idx];
            if (current_.size() + c <= best_.size()) return;
            current_.push_back(v);
            bits::intersect(candidates, row(v), lv.next);
            if (!any(lv.next)) {
                if (current_.size() > best_.size()) best_ = current_;
            } else {
                expand(lv.next, depth + 1);
            }
            current_.pop_back();
            bits::reset(candidates, v);
        }
    }

    std::size_t n_;
    std::size_t words_;
    std::vector<Vertex> order_;
    std::vector<Word> adjacency_;
    std::vector<Vertex> current_, best_;
    std::deque<Level> levels_;
};

}  // namespace

MaxCliqueResult max_clique(const Graph& g) { return MaxCliqueSearch(g).run(); }

void for_each_maximal_clique(const Graph& g, const std::function<void(const Clique&)>& visit, std::size_t cap,
                             bool include_singletons) {
    if (g.n() > cap) {
        throw SizingError("maximal clique enumeration capped at n=" + std::to_string(cap) + ", got n=" +
                          std::to_string(g.n()));
    }
    const std::size_t words = g.words_per_row();
    std::vector<Vertex> r;
    Clique out;

    // Bron-Kerbosch with Tomita pivoting on bit rows.
    auto recurse = [&](auto&& self, std::vector<Word> p, std::vector<Word> x) -> void {
        if (!any(p) && !any(x)) {
            if (r.size() >= 2 || (include_singletons && r.size() == 1)) {
                out.vertices = r;
                std::sort(out.vertices.begin(), out.vertices.end());
                visit(out);
            }
            return;
        }
        std::size_t pivot = 0, best = 0;
        bool have_pivot = false;
        auto consider = [&](std::size_t u) {
            const std::size_t c = bits::count_intersection(p, g.row(Vertex(u)));
            if (!have_pivot || c > best) {
                pivot = u;
                best = c;
                have_pivot = true;
            }
        };
        bits::for_each(Row(p), consider);
        bits::for_each(Row(x), consider);
        std::vector<Word> branch(words);
        const Row np = g.row(Vertex(pivot));
        for (std::size_t w = 0; w < words; ++w) branch[w] = p[w] & ~np[w];
        bits::for_each(Row(branch), [&](std::size_t v) {
            std::vector<Word> p2(words), x2(words);
            bits::intersect(p, g.row(Vertex(v)), p2);
            bits::intersect(x, g.row(Vertex(v)), x2);
            r.push_back(Vertex(v));
            self(self, std::move(p2), std::move(x2));
            r.pop_back();
            bits::reset(p, v);
            bits::set(x, v);
        });
    };

    std::vector<Word> all(words, 0);
    for (std::size_t v = 0; v < g.n(); ++v) bits::set(all, v);
    recurse(recurse, all, std::vector<Word>(words, 0));
}

std::vector<Clique> maximal_cliques(const Graph& g, std::size_t cap, bool include_singletons) {
    std::vector<Clique> out;
    for_each_maximal_clique(g, [&](const Clique& c) { out.push_back(c); }, cap, include_singletons);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace cliquecover
