#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "catsim/gate.hpp"
#include "catsim/noise.hpp"
#include "catsim/state.hpp"

namespace catsim::test_support {

/// Normalized dense state with Gaussian amplitudes.
inline QuantumState random_state(const RegisterLayout& layout, std::mt19937_64& rng, bool normalize = true) {
    std::normal_distribution<double> g;
    QuantumState s(layout, Backend::dense);
    std::vector<Amplitude> v(layout.dimension());
    double norm = 0.0;
    for (auto& a : v) {
        a = {g(rng), g(rng)};
        norm += std::norm(a);
    }
    for (std::uint64_t k = 0; k < v.size(); ++k) s.set_amplitude(k, normalize ? v[k] / std::sqrt(norm) : v[k]);
    return s;
}

/// Up to two distinct controls plus a distinct target in [0, n_qubits).
inline std::vector<int> random_qubits(int n_qubits, int count, std::mt19937_64& rng) {
    std::vector<int> all(n_qubits);
    for (int q = 0; q < n_qubits; ++q) all[q] = q;
    std::shuffle(all.begin(), all.end(), rng);
    all.resize(count);
    return all;
}

inline GateInstance random_ideal_gate(int n_qubits, std::mt19937_64& rng) {
    const int nc = std::uniform_int_distribution<int>(0, 2)(rng);
    const auto q = random_qubits(n_qubits, nc + 1, rng);
    return GateInstance(std::span<const int>(q.data(), nc), q[nc]);
}

/// Generic 2x2 unitary: eigenphase-perturbed exchange times a phase diagonal.
inline Block random_unitary_block(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-std::numbers::pi, std::numbers::pi);
    const Block phase{std::polar(1.0, u(rng)), 0.0, 0.0, std::polar(1.0, u(rng))};
    return multiply(phase, amplitude_noise_block(u(rng), u(rng)));
}

}  // namespace catsim::test_support
