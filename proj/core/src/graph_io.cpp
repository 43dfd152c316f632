#include <charconv>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>

#include "cliquecover/errors.hpp"
#include "cliquecover/graph.hpp"

namespace cliquecover {

namespace {

bool blank(std::string_view s) { return s.find_first_not_of(" \t\r") == std::string_view::npos; }

// Parses exactly two non-negative decimal integers separated by blanks.
bool parse_pair(std::string_view s, std::uint64_t& a, std::uint64_t& b) {
    auto skip = [&](std::size_t i) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
        return i;
    };
    std::size_t i = skip(0);
    auto [p1, ec1] = std::from_chars(s.data() + i, s.data() + s.size(), a);
    if (ec1 != std::errc{} || p1 == s.data() + i) return false;
    i = static_cast<std::size_t>(p1 - s.data());
    const std::size_t j = skip(i);
    if (j == i) return false;
    auto [p2, ec2] = std::from_chars(s.data() + j, s.data() + s.size(), b);
    if (ec2 != std::errc{} || p2 == s.data() + j) return false;
    return skip(static_cast<std::size_t>(p2 - s.data())) == s.size();
}

}  // namespace

Graph load_graph(std::istream& in) {
    std::string line;
    std::size_t lineno = 0;
    std::uint64_t n = 0, m = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (blank(line)) continue;
        if (!parse_pair(line, n, m)) throw ParseError(lineno, "malformed header, expected \"n m\"");
        have_header = true;
        break;
    }
    if (!have_header) throw ParseError(0, "empty graph file");
    if (n > (std::uint64_t{1} << 32)) throw ParseError(lineno, "vertex count too large");
    if (m > pair_count(n)) throw ParseError(lineno, "edge count exceeds C(n,2)");

    GraphBuilder builder(n);
    std::uint64_t read = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (blank(line)) continue;
        std::uint64_t u = 0, v = 0;
        if (!parse_pair(line, u, v)) throw ParseError(lineno, "malformed edge line, expected \"u v\"");
        if (read == m) throw ParseError(lineno, "more edge lines than the header declares");
        if (u >= n || v >= n) throw ParseError(lineno, "vertex index out of range");
        if (u >= v) throw ParseError(lineno, u == v ? "self-loop" : "reversed edge, expected u < v");
        if (!builder.add(static_cast<Vertex>(u), static_cast<Vertex>(v))) {
            throw ParseError(lineno, "duplicate edge");
        }
        ++read;
    }
    if (read != m) {
        throw ParseError(lineno, "expected " + std::to_string(m) + " edges, found " + std::to_string(read));
    }
    return std::move(builder).finish();
}

void save_graph(const Graph& g, std::ostream& out) {
    out << g.n() << ' ' << g.m() << '\n';
    g.for_each_edge([&](Vertex u, Vertex v) { out << u << ' ' << v << '\n'; });
}

}  // namespace cliquecover
