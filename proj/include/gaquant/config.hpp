#ifndef GAQUANT_CONFIG_HPP
#define GAQUANT_CONFIG_HPP

#include <charconv>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "common.hpp"
#include "dataset_io.hpp"
#include "ga.hpp"

namespace gaquant {

/// Everything a CLI run needs. Loaded from a `key = value` file and then
/// overridden key by key from the command line.
struct RunConfig {
    GaConfig ga;
    Descriptor descriptor = Descriptor::bic;
    std::string dataset;
    std::string out;
    std::string genome;
    std::optional<std::size_t> baseline_bins;
    std::vector<std::size_t> limits;
    std::size_t folds = 5;
    bool baseline_only = false;
};

inline const std::vector<std::string>& config_keys() {
    static const std::vector<std::string> keys{
        "dataset", "descriptor", "genome",     "baseline", "limit",     "folds",    "seed",        "out",
        "population", "generations", "crossover", "mutation", "tournament", "elitism", "n", "baseline_only"};
    return keys;
}

namespace detail {

inline std::string_view trim(std::string_view s) {
    const auto ws = " \t\r\n";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) return {};
    return s.substr(b, s.find_last_not_of(ws) - b + 1);
}

template <typename T>
T parse_scalar(std::string_view key, std::string_view text) {
    T v{};
    auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || p != text.data() + text.size() || text.empty())
        throw Error(ErrorCode::config_error, "bad value '" + std::string(text) + "' for " + std::string(key));
    return v;
}

inline bool parse_bool(std::string_view key, std::string_view text) {
    if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
    if (text == "false" || text == "0" || text == "no" || text == "off") return false;
    throw Error(ErrorCode::config_error, "bad boolean '" + std::string(text) + "' for " + std::string(key));
}

} // namespace detail

/// Parses a comma separated list of positive integers, e.g. "64,128".
inline std::vector<std::size_t> parse_limit_list(std::string_view text) {
    std::vector<std::size_t> out;
    while (!text.empty()) {
        const auto comma = text.find(',');
        const auto item = detail::trim(text.substr(0, comma));
        const auto v = detail::parse_scalar<std::size_t>("limit", item);
        if (v == 0) throw Error(ErrorCode::config_error, "limit must be positive");
        out.push_back(v);
        if (comma == std::string_view::npos) break;
        text.remove_prefix(comma + 1);
    }
    return out;
}

/// Applies one setting; unknown keys are a config error.
inline void apply_setting(RunConfig& cfg, std::string_view key, std::string_view raw) {
    const auto value = detail::trim(raw);
    using detail::parse_scalar;
    if (key == "dataset") cfg.dataset = value;
    else if (key == "descriptor") {
        try {
            cfg.descriptor = parse_descriptor(value);
        } catch (const Error&) {
            throw Error(ErrorCode::config_error, "descriptor must be bic or gch, got '" + std::string(value) + "'");
        }
    }
    else if (key == "genome") cfg.genome = value;
    else if (key == "baseline") cfg.baseline_bins = parse_scalar<std::size_t>(key, value);
    else if (key == "limit") cfg.limits = parse_limit_list(value);
    else if (key == "folds") cfg.folds = parse_scalar<std::size_t>(key, value);
    else if (key == "seed") cfg.ga.rng_seed = parse_scalar<std::uint64_t>(key, value);
    else if (key == "out") cfg.out = value;
    else if (key == "population") cfg.ga.population_size = parse_scalar<std::size_t>(key, value);
    else if (key == "generations") cfg.ga.generations = parse_scalar<std::size_t>(key, value);
    else if (key == "crossover") cfg.ga.crossover_probability = parse_scalar<double>(key, value);
    else if (key == "mutation") cfg.ga.mutation_probability = parse_scalar<double>(key, value);
    else if (key == "tournament") cfg.ga.tournament_size = parse_scalar<std::size_t>(key, value);
    else if (key == "elitism") cfg.ga.elitism_fraction = parse_scalar<double>(key, value);
    else if (key == "n") cfg.ga.intervals = parse_scalar<std::size_t>(key, value);
    else if (key == "baseline_only") cfg.baseline_only = detail::parse_bool(key, value);
    else throw Error(ErrorCode::config_error, "unknown key '" + std::string(key) + "'");
}

/// Reads `key = value` lines into `cfg`; '#' starts a comment.
inline void parse_config(RunConfig& cfg, std::string_view text, const std::string& source = "config") {
    std::size_t line_no = 0;
    while (!text.empty()) {
        ++line_no;
        const auto nl = text.find('\n');
        auto line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw Error(ErrorCode::config_error, source + ":" + std::to_string(line_no) + ": expected key = value");
        try {
            apply_setting(cfg, detail::trim(line.substr(0, eq)), line.substr(eq + 1));
        } catch (const Error& e) {
            throw Error(ErrorCode::config_error, source + ":" + std::to_string(line_no) + ": " + e.what());
        }
    }
}

inline RunConfig load_config_file(const std::filesystem::path& path, RunConfig base = {}) {
    parse_config(base, read_file(path), path.string());
    return base;
}

} // namespace gaquant

#endif // GAQUANT_CONFIG_HPP
