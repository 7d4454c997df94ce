#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "catsim/circuits.hpp"
#include "catsim/oracle.hpp"
#include "catsim/state.hpp"

namespace catsim::harness {

struct VerifyReport {
    int n_q = 0;
    std::size_t steps = 0;
    double max_probability_error = 0.0;
    double max_workspace_probability = 0.0;
    GateCount gates;
    std::size_t formula_total = 0;
    long reference_total = 0;

    long delta_vs_reference() const { return static_cast<long>(gates.total) - reference_total; }
    bool passed() const {
        return max_probability_error <= 1e-12 && max_workspace_probability <= 1e-20 && gates.total == formula_total;
    }
};

/// Runs the map circuit on a state with a distinct weight on every lattice
/// point and compares |a_ij|^2 to the transported classical weights.
inline VerifyReport verify_oracle_equivalence(int n_q, std::size_t steps) {
    const RegisterLayout layout(n_q);
    const std::uint64_t n = layout.lattice_size();
    const double total = static_cast<double>(n * n) * static_cast<double>(n * n + 1) / 2.0;

    oracle::LatticeDistribution classical(n);
    QuantumState state(layout, Backend::monomial);
    for (std::uint64_t i = 0; i < n; ++i) {
        for (std::uint64_t j = 0; j < n; ++j) {
            const double w = static_cast<double>(i * n + j + 1) / total;
            classical.at({i, j}) = w;
            state.set_amplitude(layout.encode(i, j), Amplitude{std::sqrt(w), 0.0});
        }
    }

    VerifyReport report;
    report.n_q = n_q;
    report.steps = steps;
    const Circuit step = build_cat_iteration(layout);
    report.gates = gate_count(step);
    report.formula_total = cat_iteration_gate_formula(n_q);
    report.reference_total = reference_gate_budget(n_q);

    for (std::size_t t = 1; t <= steps; ++t) {
        apply_circuit(state, step);
        classical = oracle::iterate_distribution(classical, 1);
        report.max_workspace_probability = std::max(report.max_workspace_probability, state.workspace_probability());
        const auto support = state.sorted_support();
        if (support.size() != n * n) report.max_probability_error = 1.0;
        for (const auto& e : support) {
            const auto c = layout.decode(e.index);
            const double expected = c.w == 0 ? classical.at({c.i, c.j}) : 0.0;
            report.max_probability_error =
                std::max(report.max_probability_error, std::abs(std::norm(e.amplitude) - expected));
        }
    }
    return report;
}

}  // namespace catsim::harness
