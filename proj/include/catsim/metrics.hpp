#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "catsim/cell_grid.hpp"
#include "catsim/error.hpp"
#include "catsim/state.hpp"

namespace catsim {

namespace detail {

/// Calls f(a_k, b_k) for every basis index k nonzero in both states.
template <class F>
void for_each_common(const QuantumState& a, const QuantumState& b, F&& f) {
    if (!(a.layout() == b.layout())) throw ConfigError("layout", "layout mismatch");
    if (b.backend() == Backend::dense) {
        const auto dense = b.dense_amplitudes();
        a.for_each_nonzero([&](std::uint64_t k, Amplitude x) { f(x, dense[k]); });
        return;
    }
    if (a.backend() == Backend::dense) {
        const auto dense = a.dense_amplitudes();
        b.for_each_nonzero([&](std::uint64_t k, Amplitude y) { f(dense[k], y); });
        return;
    }
    const auto sa = a.sorted_support();
    const auto sb = b.sorted_support();
    std::size_t p = 0, q = 0;
    while (p < sa.size() && q < sb.size()) {
        if (sa[p].index < sb[q].index) {
            ++p;
        } else if (sb[q].index < sa[p].index) {
            ++q;
        } else {
            f(sa[p].amplitude, sb[q].amplitude);
            ++p;
            ++q;
        }
    }
}

}  // namespace detail

/// |<reference|noisy>|^2.
inline double fidelity(const QuantumState& noisy, const QuantumState& reference) {
    Amplitude overlap{0.0};
    detail::for_each_common(noisy, reference, [&](Amplitude x, Amplitude y) { overlap += std::conj(y) * x; });
    return std::norm(overlap);
}

/// (sum_k |noisy_k| |reference_k|)^2; blind to phases, never below fidelity.
inline double faithfulness(const QuantumState& noisy, const QuantumState& reference) {
    double s = 0.0;
    detail::for_each_common(noisy, reference, [&](Amplitude x, Amplitude y) { s += std::abs(x) * std::abs(y); });
    return s * s;
}

/// Probability of each outcome when only the top n_g qubits of the x and y
/// registers are measured.
inline CellGrid coarse_grain(const QuantumState& state, int n_g) {
    const auto& layout = state.layout();
    if (n_g < 1 || n_g > layout.n_q()) {
        throw ConfigError("n_g", "n_g must be in [1, " + std::to_string(layout.n_q()) + "], got " +
                                     std::to_string(n_g));
    }
    CellGrid grid(n_g);
    const int shift = layout.n_q() - n_g;
    auto& cells = grid.values();
    const std::size_t side = grid.side();
    state.for_each_nonzero([&](std::uint64_t k, Amplitude a) {
        const auto c = layout.decode(k);
        cells[(c.i >> shift) * side + (c.j >> shift)] += std::norm(a);
    });
    return grid;
}

/// Empirical cell frequencies from `shots` independent measurements.
template <std::uniform_random_bit_generator G>
CellGrid sample_cells(const QuantumState& state, int n_g, std::size_t shots, G& rng) {
    const auto& layout = state.layout();
    if (n_g < 1 || n_g > layout.n_q()) throw ConfigError("n_g", "n_g out of range");
    if (shots < 1) throw ConfigError("shots", "shots must be >= 1");

    const int shift = layout.n_q() - n_g;
    CellGrid grid(n_g);
    std::vector<double> weights;
    std::vector<std::size_t> cell_of;
    state.for_each_nonzero([&](std::uint64_t k, Amplitude a) {
        const auto c = layout.decode(k);
        weights.push_back(std::norm(a));
        cell_of.push_back((c.i >> shift) * grid.side() + (c.j >> shift));
    });
    std::discrete_distribution<std::size_t> outcome(weights.begin(), weights.end());
    std::vector<std::size_t> hits(grid.size(), 0);
    for (std::size_t s = 0; s < shots; ++s) ++hits[cell_of[outcome(rng)]];
    for (std::size_t c = 0; c < grid.size(); ++c) {
        grid.values()[c] = static_cast<double>(hits[c]) / static_cast<double>(shots);
    }
    return grid;
}

/// Observables recorded after each map iteration. Normalized fields are
/// empty when the paired noiseless value is below 1e-30.
struct MetricsRecord {
    std::size_t t = 0;
    double f = 1.0;
    double f_a = 1.0;
    std::optional<double> q0_norm = 1.0;
    std::optional<double> w_cell_norm = 1.0;
};

inline constexpr double kUndefinedBelow = 1e-30;

inline std::optional<double> normalized_ratio(double value, double reference) {
    if (std::abs(reference) < kUndefinedBelow) return std::nullopt;
    return value / reference;
}

}  // namespace catsim
