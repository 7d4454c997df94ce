#pragma once

#include <charconv>
#include <cstdint>
#include <istream>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <fmt/format.h>

#include "catsim/error.hpp"
#include "catsim/noise.hpp"

namespace catsim::harness {

/// One experiment: a noisy run in lockstep with its noiseless reference.
///
/// Config file grammar, one `key = value` per line; `#` starts a comment;
/// unknown keys are rejected.
///
///     n_q                 integer >= 2
///     n_g                 integer in [1, n_q]
///     t_max               integer >= 0
///     invert_at           integer in [0, t_max], or "none"
///     eps_phi, eps_amp    real in [0, pi], or "pi"
///     per_amplitude_phase true | false
///     seed                unsigned 64-bit integer
///     realizations        integer >= 1
///     initial             "smile" | "smile-face" | point list path | .pgm path
///     snapshot_times      comma-separated steps in [0, t_max] (may be empty)
///     designated_cell     "ig,jg" | "auto"
///     force_dense         true | false
///     output_dir          directory path
///     label               free text, copied to the outputs
struct ExperimentConfig {
    int n_q = 7;
    int n_g = 5;
    std::size_t t_max = 100;
    std::optional<std::size_t> invert_at;
    NoiseConfig noise;
    std::size_t realizations = 1;
    std::string initial = "smile";
    std::vector<std::size_t> snapshot_times;
    std::optional<std::pair<std::size_t, std::size_t>> designated_cell;
    bool force_dense = false;
    std::string output_dir = "out";
    std::string label;

    void validate() const {
        if (n_q < 2 || n_q > 21) throw ConfigError("n_q", "n_q must be in [2, 21]");
        if (n_g < 1 || n_g > n_q) throw ConfigError("n_g", "n_g must be in [1, n_q]");
        if (realizations < 1) throw ConfigError("realizations", "realizations must be >= 1");
        if (invert_at && *invert_at > t_max) throw ConfigError("invert_at", "invert_at must be in [0, t_max]");
        for (auto t : snapshot_times) {
            if (t > t_max) throw ConfigError("snapshot_times", "snapshot time " + std::to_string(t) + " exceeds t_max");
        }
        if (designated_cell) {
            const std::size_t side = std::size_t{1} << n_g;
            if (designated_cell->first >= side || designated_cell->second >= side) {
                throw ConfigError("designated_cell", "designated cell outside the 2^n_g grid");
            }
        }
        noise.validate();
    }
};

namespace detail {

inline std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

template <class T>
T parse_integer(const std::string& key, const std::string& v) {
    T out{};
    const auto* end = v.data() + v.size();
    auto [ptr, ec] = std::from_chars(v.data(), end, out);
    if (ec != std::errc{} || ptr != end) throw ConfigError(key, "expected a non-negative integer, got '" + v + "'");
    return out;
}

inline double parse_angle(const std::string& key, const std::string& v) {
    if (v == "pi") return std::numbers::pi;
    try {
        std::size_t used = 0;
        const double d = std::stod(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw ConfigError(key, "expected a real number or 'pi', got '" + v + "'");
    }
}

inline bool parse_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    throw ConfigError(key, "expected true or false, got '" + v + "'");
}

inline std::vector<std::size_t> parse_list(const std::string& key, const std::string& v) {
    std::vector<std::size_t> out;
    std::istringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(parse_integer<std::size_t>(key, item));
    }
    return out;
}

inline std::string format_angle(double a) { return a == std::numbers::pi ? std::string("pi") : fmt::format("{}", a); }

}  // namespace detail

/// Parses the key-value text. Fields not mentioned keep their defaults.
inline ExperimentConfig parse_config(std::istream& in) {
    ExperimentConfig cfg;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("line " + std::to_string(lineno), "expected 'key = value', got '" + line + "'");
        }
        const std::string key = detail::trim(line.substr(0, eq));
        const std::string value = detail::trim(line.substr(eq + 1));
        using detail::parse_integer;
        if (key == "n_q") {
            cfg.n_q = parse_integer<int>(key, value);
        } else if (key == "n_g") {
            cfg.n_g = parse_integer<int>(key, value);
        } else if (key == "t_max") {
            cfg.t_max = parse_integer<std::size_t>(key, value);
        } else if (key == "invert_at") {
            if (value == "none" || value.empty()) {
                cfg.invert_at.reset();
            } else {
                cfg.invert_at = parse_integer<std::size_t>(key, value);
            }
        } else if (key == "eps_phi") {
            cfg.noise.eps_phi = detail::parse_angle(key, value);
        } else if (key == "eps_amp") {
            cfg.noise.eps_amp = detail::parse_angle(key, value);
        } else if (key == "per_amplitude_phase") {
            cfg.noise.per_amplitude_phase = detail::parse_bool(key, value);
        } else if (key == "seed") {
            cfg.noise.seed = parse_integer<std::uint64_t>(key, value);
        } else if (key == "realizations") {
            cfg.realizations = parse_integer<std::size_t>(key, value);
        } else if (key == "initial") {
            cfg.initial = value;
        } else if (key == "snapshot_times") {
            cfg.snapshot_times = detail::parse_list(key, value);
        } else if (key == "designated_cell") {
            if (value == "auto" || value.empty()) {
                cfg.designated_cell.reset();
            } else {
                const auto cell = detail::parse_list(key, value);
                if (cell.size() != 2) throw ConfigError(key, "expected 'ig,jg', got '" + value + "'");
                cfg.designated_cell = std::make_pair(cell[0], cell[1]);
            }
        } else if (key == "force_dense") {
            cfg.force_dense = detail::parse_bool(key, value);
        } else if (key == "output_dir") {
            cfg.output_dir = value;
        } else if (key == "label") {
            cfg.label = value;
        } else {
            throw ConfigError(key, "unknown config key '" + key + "'");
        }
    }
    cfg.validate();
    return cfg;
}

inline ExperimentConfig parse_config(const std::string& text) {
    std::istringstream in(text);
    return parse_config(in);
}

/// Inverse of parse_config.
inline std::string to_text(const ExperimentConfig& cfg) {
    std::string snaps;
    for (std::size_t k = 0; k < cfg.snapshot_times.size(); ++k) {
        snaps += (k ? "," : "") + std::to_string(cfg.snapshot_times[k]);
    }
    std::string out;
    out += fmt::format("n_q = {}\n", cfg.n_q);
    out += fmt::format("n_g = {}\n", cfg.n_g);
    out += fmt::format("t_max = {}\n", cfg.t_max);
    out += fmt::format("invert_at = {}\n", cfg.invert_at ? std::to_string(*cfg.invert_at) : "none");
    out += fmt::format("eps_phi = {}\n", detail::format_angle(cfg.noise.eps_phi));
    out += fmt::format("eps_amp = {}\n", detail::format_angle(cfg.noise.eps_amp));
    out += fmt::format("per_amplitude_phase = {}\n", cfg.noise.per_amplitude_phase);
    out += fmt::format("seed = {}\n", cfg.noise.seed);
    out += fmt::format("realizations = {}\n", cfg.realizations);
    out += fmt::format("initial = {}\n", cfg.initial);
    out += fmt::format("snapshot_times = {}\n", snaps);
    out += fmt::format("designated_cell = {}\n",
                       cfg.designated_cell
                           ? fmt::format("{},{}", cfg.designated_cell->first, cfg.designated_cell->second)
                           : std::string("auto"));
    out += fmt::format("force_dense = {}\n", cfg.force_dense);
    out += fmt::format("output_dir = {}\n", cfg.output_dir);
    out += fmt::format("label = {}\n", cfg.label);
    return out;
}

}  // namespace catsim::harness
