#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>

#include "catsim/error.hpp"
#include "catsim/gate.hpp"
#include "catsim/rng.hpp"

namespace catsim {

/// Gate-noise settings. All widths are half-widths in radians.
struct NoiseConfig {
    double eps_phi = 0.0;              ///< phase noise, theta ~ U[-eps_phi, eps_phi]
    double eps_amp = 0.0;              ///< eigenphase noise, eta ~ U(-eps_amp, eps_amp)
    bool per_amplitude_phase = false;  ///< scramble every amplitude after each gate
    std::uint64_t seed = 0;
    std::uint64_t realization_index = 0;

    void validate() const {
        if (!(eps_phi >= 0.0 && eps_phi <= std::numbers::pi)) throw ConfigError("eps_phi", "eps_phi must be in [0, pi]");
        if (!(eps_amp >= 0.0 && eps_amp <= std::numbers::pi)) throw ConfigError("eps_amp", "eps_amp must be in [0, pi]");
    }

    bool is_noiseless() const noexcept { return eps_phi == 0.0 && eps_amp == 0.0 && !per_amplitude_phase; }

    /// Every gate emitted under this config is monomial.
    bool preserves_monomial() const noexcept { return eps_amp == 0.0; }

    Rng stream() const { return make_stream(seed, realization_index); }
};

/// X block with input |0> picking up exp(i theta1) and input |1> picking up
/// exp(i theta2): [[0, e^{i theta2}], [e^{i theta1}, 0]] = diag(e^{i theta2}, e^{i theta1}) X.
inline Block phase_noise_block(double theta1, double theta2) {
    return {Amplitude{0.0}, std::polar(1.0, theta2), std::polar(1.0, theta1), Amplitude{0.0}};
}

/// X = V diag(1, -1) V^dagger with V the symmetric/antisymmetric basis; each
/// eigenvalue gets its own phase: V diag(e^{i eta1}, -e^{i eta2}) V^dagger.
inline Block amplitude_noise_block(double eta1, double eta2) {
    const Amplitude e1 = std::polar(1.0, eta1);
    const Amplitude e2 = std::polar(1.0, eta2);
    const Amplitude diag = 0.5 * (e1 - e2);
    const Amplitude off = 0.5 * (e1 + e2);
    return {diag, off, off, diag};
}

namespace detail {
inline void require_ideal(const GateInstance& gate) {
    if (!gate.is_ideal()) throw ConfigError("gate", "noise channels expect the ideal exchange block");
}
}  // namespace detail

/// Fresh phase-noised copy of an ideal gate. eps_phi = 0 returns the gate
/// unchanged without consuming randomness.
template <std::uniform_random_bit_generator G>
GateInstance phase_perturb(const GateInstance& gate, double eps_phi, G& rng) {
    detail::require_ideal(gate);
    if (eps_phi == 0.0) return gate;
    const double theta1 = uniform_symmetric(rng, eps_phi);
    const double theta2 = uniform_symmetric(rng, eps_phi);
    return gate.with_block(phase_noise_block(theta1, theta2));
}

/// Fresh eigenphase-noised copy of an ideal gate; generally not monomial.
template <std::uniform_random_bit_generator G>
GateInstance amplitude_perturb(const GateInstance& gate, double eps, G& rng) {
    detail::require_ideal(gate);
    if (eps == 0.0) return gate;
    const double eta1 = uniform_symmetric(rng, eps);
    const double eta2 = uniform_symmetric(rng, eps);
    return gate.with_block(amplitude_noise_block(eta1, eta2));
}

/// Both channels on one ideal gate: eigenphase noise on the ideal block,
/// then the phase diagonal multiplied from the left. Draw order per gate:
/// eta1, eta2 (if eps_amp > 0), theta1, theta2 (if eps_phi > 0).
template <std::uniform_random_bit_generator G>
GateInstance noisy_gate(const GateInstance& gate, const NoiseConfig& config, G& rng) {
    detail::require_ideal(gate);
    Block block = kExchangeBlock;
    bool touched = false;
    if (config.eps_amp > 0.0) {
        const double eta1 = uniform_symmetric(rng, config.eps_amp);
        const double eta2 = uniform_symmetric(rng, config.eps_amp);
        block = amplitude_noise_block(eta1, eta2);
        touched = true;
    }
    if (config.eps_phi > 0.0) {
        const double theta1 = uniform_symmetric(rng, config.eps_phi);
        const double theta2 = uniform_symmetric(rng, config.eps_phi);
        const Block phase{std::polar(1.0, theta2), Amplitude{0.0}, Amplitude{0.0}, std::polar(1.0, theta1)};
        block = touched ? multiply(phase, block) : phase_noise_block(theta1, theta2);
        touched = true;
    }
    return touched ? gate.with_block(block) : gate;
}

}  // namespace catsim
