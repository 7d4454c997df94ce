#pragma once

#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "catsim/error.hpp"
#include "catsim/harness/config.hpp"

namespace catsim::harness {

enum class Figure { fig1_left, fig1_right, fig2 };

inline Figure parse_figure(const std::string& name) {
    if (name == "fig1-left") return Figure::fig1_left;
    if (name == "fig1-right") return Figure::fig1_right;
    if (name == "fig2") return Figure::fig2;
    throw ConfigError("recipe", "unknown recipe '" + name + "' (expected fig1-left, fig1-right or fig2)");
}

struct NamedConfig {
    std::string name;
    ExperimentConfig config;
};

/// Config batch for one figure: n_q = 7 (20 qubits), n_g = 5, 100 steps,
/// filled-face smile initial state. Output directories are `<out>/<name>`.
inline std::vector<NamedConfig> recipe(Figure figure, const std::string& out = "out", std::uint64_t seed = 1) {
    constexpr double pi = std::numbers::pi;
    auto base = [&](const std::string& name, double eps_phi, double eps_amp) {
        NamedConfig c{name, {}};
        c.config.n_q = 7;
        c.config.n_g = 5;
        c.config.t_max = 100;
        c.config.initial = "smile-face";
        c.config.noise.eps_phi = eps_phi;
        c.config.noise.eps_amp = eps_amp;
        c.config.noise.seed = seed;
        c.config.output_dir = out + "/" + name;
        c.config.label = name;
        return c;
    };
    std::vector<NamedConfig> batch;
    switch (figure) {
        case Figure::fig1_left:
            batch.push_back(base("fidelity_eps_phi_0.05", 0.05, 0.0));
            batch.push_back(base("fidelity_eps_phi_0.1", 0.1, 0.0));
            batch.push_back(base("fidelity_eps_phi_0.3", 0.3, 0.0));
            batch.push_back(base("faithfulness_eps_phi_pi", pi, 0.0));
            batch.push_back(base("faithfulness_eps_phi_pi_eps_0.01", pi, 0.01));
            break;
        case Figure::fig1_right:
            batch.push_back(base("q0_eps_phi_0.07", 0.07, 0.0));
            batch.push_back(base("q0_eps_phi_0.2", 0.2, 0.0));
            batch.push_back(base("cell_eps_phi_pi", pi, 0.0));
            break;
        case Figure::fig2:
            batch.push_back(base("reversal_eps_phi_pi", pi, 0.0));
            batch.push_back(base("reversal_eps_phi_pi_eps_0.3", pi, 0.3));
            for (auto& c : batch) {
                c.config.invert_at = 50;
                c.config.snapshot_times = {0, 50, 100};
            }
            break;
    }
    return batch;
}

}  // namespace catsim::harness
