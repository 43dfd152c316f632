#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cliquecover/errors.hpp"
#include "cliquecover/harness.hpp"

namespace cliquecover {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::uint64_t parse_uint(const std::string& text, std::size_t line) {
    const std::string s = trim(text);
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
        throw ParseError(line, "expected a non-negative integer, got \"" + s + "\"");
    }
    return value;
}

double parse_real(const std::string& text, std::size_t line) {
    const std::string s = trim(text);
    try {
        std::size_t used = 0;
        const double value = std::stod(s, &used);
        if (used == s.size()) return value;
    } catch (const std::exception&) {
    }
    throw ParseError(line, "expected a number, got \"" + s + "\"");
}

std::vector<std::uint64_t> parse_list(const std::string& text, std::size_t line, bool allow_ranges) {
    std::vector<std::uint64_t> out;
    std::stringstream items(text);
    std::string item;
    while (std::getline(items, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        const auto dots = item.find("..");
        if (allow_ranges && dots != std::string::npos) {
            const std::uint64_t lo = parse_uint(item.substr(0, dots), line);
            const std::uint64_t hi = parse_uint(item.substr(dots + 2), line);
            if (hi < lo) throw ParseError(line, "empty range \"" + item + "\"");
            for (std::uint64_t v = lo; v <= hi; ++v) out.push_back(v);
        } else {
            out.push_back(parse_uint(item, line));
        }
    }
    return out;
}

std::vector<std::size_t> to_sizes(const std::vector<std::uint64_t>& values) {
    return {values.begin(), values.end()};
}

std::vector<Seed> to_seeds(const std::vector<std::uint64_t>& values) {
    std::vector<Seed> out;
    for (auto v : values) out.push_back(Seed{v});
    return out;
}

void apply(ExperimentConfig& config, const std::string& key, const std::string& value, std::size_t line) {
    if (key == "n_grid") {
        config.n_grid = to_sizes(parse_list(value, line, false));
    } else if (key == "p") {
        config.p = parse_real(value, line);
    } else if (key == "alpha") {
        config.alpha = parse_real(value, line);
    } else if (key == "seeds") {
        config.seeds = to_seeds(parse_list(value, line, true));
    } else if (key == "schedule" || key == "schedule_override") {
        auto sizes = to_sizes(parse_list(value, line, false));
        if (sizes.empty()) {
            config.schedule_override.reset();
        } else {
            config.schedule_override = std::move(sizes);
        }
    } else if (key == "monte_carlo_reps") {
        config.monte_carlo_reps = parse_uint(value, line);
    } else if (key == "sampled_edges") {
        config.sampled_edges = parse_uint(value, line);
    } else if (key == "output_dir") {
        config.output_dir = trim(value);
    } else if (key == "clique_budget") {
        config.clique_budget = static_cast<std::uint64_t>(parse_real(value, line));
    } else if (key == "workers") {
        config.workers = static_cast<unsigned>(parse_uint(value, line));
    } else if (key == "greedy" || key == "run_greedy") {
        const std::string v = trim(value);
        if (v == "true" || v == "1") {
            config.run_greedy = true;
        } else if (v == "false" || v == "0") {
            config.run_greedy = false;
        } else {
            throw ParseError(line, "expected true/false for " + key);
        }
    } else {
        throw ParseError(line, "unknown key \"" + key + "\"");
    }
}

// JSON values are rendered back to the flat syntax so both formats share one code path.
std::string flatten(const nlohmann::json& value, const std::string& key) {
    if (value.is_array()) {
        std::string out;
        for (const auto& item : value) {
            if (!item.is_number_unsigned() && !item.is_number_integer()) {
                throw ParseError(0, "\"" + key + "\" must be an array of non-negative integers");
            }
            if (!out.empty()) out += ',';
            out += item.dump();
        }
        return out;
    }
    if (value.is_string()) return value.get<std::string>();
    if (value.is_null()) return {};
    return value.dump();
}

}  // namespace

ExperimentConfig parse_experiment_config(const std::string& text) {
    ExperimentConfig config;
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
        nlohmann::json doc;
        try {
            doc = nlohmann::json::parse(text);
        } catch (const nlohmann::json::parse_error& e) {
            throw ParseError(0, std::string("invalid JSON config: ") + e.what());
        }
        for (const auto& [key, value] : doc.items()) apply(config, key, flatten(value, key), 0);
        return config;
    }

    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        if (trim(line).empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ParseError(lineno, "expected key=value");
        apply(config, trim(line.substr(0, eq)), line.substr(eq + 1), lineno);
    }
    return config;
}

ExperimentConfig load_experiment_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(0, "cannot open config file " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_experiment_config(buffer.str());
}

}  // namespace cliquecover
