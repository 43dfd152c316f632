#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

// Word-level helpers for dense vertex bitsets. A row is a span of 64-bit words, bit v of
// the row lives in word v / 64 at position v % 64.
namespace cliquecover::bits {

using Word = std::uint64_t;
using Row = std::span<const Word>;
using MutRow = std::span<Word>;

constexpr std::size_t words_for(std::size_t n) { return (n + 63) / 64; }

inline bool test(Row row, std::size_t v) { return (row[v >> 6] >> (v & 63)) & 1u; }
inline void set(MutRow row, std::size_t v) { row[v >> 6] |= Word{1} << (v & 63); }
inline void reset(MutRow row, std::size_t v) { row[v >> 6] &= ~(Word{1} << (v & 63)); }

inline std::size_t count(Row row) {
    std::size_t total = 0;
    for (Word w : row) total += static_cast<std::size_t>(std::popcount(w));
    return total;
}

// Mask selecting bits strictly above v within v's word.
inline Word above_mask(std::size_t v) { return (v & 63) == 63 ? Word{0} : ~Word{0} << ((v & 63) + 1); }

// out = a & b on words [first, size); words below first are zeroed.
inline void intersect(Row a, Row b, MutRow out, std::size_t first = 0) {
    for (std::size_t w = 0; w < first; ++w) out[w] = 0;
    for (std::size_t w = first; w < out.size(); ++w) out[w] = a[w] & b[w];
}

// out = a & b restricted to vertices strictly greater than v.
inline void intersect_above(Row a, Row b, std::size_t v, MutRow out) {
    const std::size_t first = v >> 6;
    intersect(a, b, out, first);
    out[first] &= above_mask(v);
}

// |a & b| restricted to vertices strictly greater than v.
inline std::size_t count_intersection_above(Row a, Row b, std::size_t v) {
    const std::size_t first = v >> 6;
    std::size_t total = static_cast<std::size_t>(std::popcount(a[first] & b[first] & above_mask(v)));
    for (std::size_t w = first + 1; w < a.size(); ++w) total += static_cast<std::size_t>(std::popcount(a[w] & b[w]));
    return total;
}

inline std::size_t count_intersection(Row a, Row b) {
    std::size_t total = 0;
    for (std::size_t w = 0; w < a.size(); ++w) total += static_cast<std::size_t>(std::popcount(a[w] & b[w]));
    return total;
}

// Calls fn(v) for every set bit v in ascending order.
template <typename Fn>
inline void for_each(Row row, Fn&& fn) {
    for (std::size_t w = 0; w < row.size(); ++w) {
        Word word = row[w];
        while (word) {
            const std::size_t v = (w << 6) + static_cast<std::size_t>(std::countr_zero(word));
            word &= word - 1;
            fn(v);
        }
    }
}

// Index of the r-th (0-based) set bit; row.size()*64 if there are not enough bits.
inline std::size_t select(Row row, std::size_t r) {
    for (std::size_t w = 0; w < row.size(); ++w) {
        const auto c = static_cast<std::size_t>(std::popcount(row[w]));
        if (r < c) {
            Word word = row[w];
            for (std::size_t k = 0; k < r; ++k) word &= word - 1;
            return (w << 6) + static_cast<std::size_t>(std::countr_zero(word));
        }
        r -= c;
    }
    return row.size() * 64;
}

}  // namespace cliquecover::bits
