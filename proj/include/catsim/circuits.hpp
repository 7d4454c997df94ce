#pragma once

#include <algorithm>
#include <cstdint>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "catsim/error.hpp"
#include "catsim/gate.hpp"
#include "catsim/layout.hpp"
#include "catsim/state.hpp"

namespace catsim {

struct GateCount {
    std::size_t toffoli = 0;
    std::size_t cnot = 0;
    std::size_t total = 0;

    friend bool operator==(const GateCount&, const GateCount&) = default;
};

/// Ordered list of ideal X-type gates (NOT, CNOT, Toffoli).
class Circuit {
public:
    Circuit() = default;
    explicit Circuit(std::vector<GateInstance> gates) : gates_(std::move(gates)) {}

    const std::vector<GateInstance>& gates() const noexcept { return gates_; }
    std::size_t size() const noexcept { return gates_.size(); }
    bool empty() const noexcept { return gates_.empty(); }

    void append(const GateInstance& g) { gates_.push_back(g); }
    void append(const Circuit& c) { gates_.insert(gates_.end(), c.gates_.begin(), c.gates_.end()); }

    friend bool operator==(const Circuit&, const Circuit&) = default;

private:
    std::vector<GateInstance> gates_;
};

inline GateCount gate_count(const Circuit& c) {
    GateCount n;
    for (const auto& g : c.gates()) {
        if (g.num_controls() == 2) ++n.toffoli;
        if (g.num_controls() == 1) ++n.cnot;
    }
    n.total = c.size();
    return n;
}

/// Gates per modular adder on n-qubit registers: 8n - 11.
///
/// Per adder: 4n - 6 Toffoli and 4n - 5 CNOT. A map iteration uses two
/// adders, 16n - 22 gates.
constexpr std::size_t adder_gate_formula(int n_q) { return 8 * static_cast<std::size_t>(n_q) - 11; }
constexpr std::size_t cat_iteration_gate_formula(int n_q) { return 2 * adder_gate_formula(n_q); }

/// Reference budget per map iteration quoted for this algorithm.
constexpr long reference_gate_budget(int n_q) { return 16L * n_q - 22; }

/// In-place ripple-carry adder dst <- (src + dst) mod 2^n.
///
/// Registers are given most-significant qubit first. `work` holds the n - 1
/// carries into bits 1..n-1 and must be |0> on entry; it is |0> again on
/// exit. The carry out of the top bit is never computed, which is the
/// reduction mod 2^n.
///
/// Bit k (LSB = 0), carry c_k into bit k:
///   forward, k = 0:         TOF(a0, b0, c1)
///   forward, 0 < k < n-1:   TOF(ak, bk, ck+1) CX(ak, bk) TOF(ck, bk, ck+1)
///   top bit n-1:            CX(an-1, bn-1) CX(cn-1, bn-1)
///   reverse, k = n-2..1:    TOF(ck, bk, ck+1) CX(ak, bk) TOF(ak, bk, ck+1) CX(ak, bk) CX(ck, bk)
///   reverse, k = 0:         TOF(a0, b0, c1) CX(a0, b0)
inline Circuit build_modular_adder(std::span<const int> src, std::span<const int> dst, std::span<const int> work) {
    const std::size_t n = src.size();
    if (n < 2) throw ConfigError("register", "adder registers need at least 2 qubits");
    if (dst.size() != n) {
        throw ConfigError("register", "register size mismatch: src has " + std::to_string(n) + " qubits, dst has " +
                                          std::to_string(dst.size()));
    }
    if (work.size() != n - 1) {
        throw ConfigError("register", "register size mismatch: work needs " + std::to_string(n - 1) +
                                          " qubits, got " + std::to_string(work.size()));
    }
    // LSB-indexed views.
    auto a = [&](std::size_t k) { return src[n - 1 - k]; };
    auto b = [&](std::size_t k) { return dst[n - 1 - k]; };
    auto c = [&](std::size_t k) { return work[n - 1 - k]; };  // carry into bit k, k in [1, n-1]

    Circuit out;
    out.append(GateInstance::toffoli(a(0), b(0), c(1)));
    for (std::size_t k = 1; k + 1 < n; ++k) {
        out.append(GateInstance::toffoli(a(k), b(k), c(k + 1)));
        out.append(GateInstance::cnot(a(k), b(k)));
        out.append(GateInstance::toffoli(c(k), b(k), c(k + 1)));
    }
    out.append(GateInstance::cnot(a(n - 1), b(n - 1)));
    out.append(GateInstance::cnot(c(n - 1), b(n - 1)));
    for (std::size_t k = n - 2; k >= 1; --k) {
        out.append(GateInstance::toffoli(c(k), b(k), c(k + 1)));
        out.append(GateInstance::cnot(a(k), b(k)));
        out.append(GateInstance::toffoli(a(k), b(k), c(k + 1)));
        out.append(GateInstance::cnot(a(k), b(k)));
        out.append(GateInstance::cnot(c(k), b(k)));
    }
    out.append(GateInstance::toffoli(a(0), b(0), c(1)));
    out.append(GateInstance::cnot(a(0), b(0)));
    return out;
}

/// One step of the lattice cat map: y += x, then x += y (mod N).
inline Circuit build_cat_iteration(const RegisterLayout& layout) {
    Circuit c = build_modular_adder(layout.x_qubits(), layout.y_qubits(), layout.work_qubits());
    c.append(build_modular_adder(layout.y_qubits(), layout.x_qubits(), layout.work_qubits()));
    return c;
}

/// Reversed gate order. Every X-type gate is its own inverse.
inline Circuit invert_circuit(const Circuit& c) {
    for (const auto& g : c.gates()) {
        if (!g.is_ideal()) throw ConfigError("circuit", "only ideal X-type circuits can be inverted by reversal");
    }
    std::vector<GateInstance> gates(c.gates().rbegin(), c.gates().rend());
    return Circuit(std::move(gates));
}

/// One gate per line: "TOFFOLI c1 c2 t", "CNOT c t" or "X t".
inline void dump_circuit(std::ostream& os, const Circuit& c) {
    for (const auto& g : c.gates()) {
        switch (g.num_controls()) {
            case 2: os << "TOFFOLI " << g.controls()[0] << ' ' << g.controls()[1] << ' ' << g.target() << '\n'; break;
            case 1: os << "CNOT " << g.controls()[0] << ' ' << g.target() << '\n'; break;
            default: os << "X " << g.target() << '\n'; break;
        }
    }
}

inline std::string dump_circuit(const Circuit& c) {
    std::ostringstream os;
    dump_circuit(os, c);
    return os.str();
}

inline void apply_circuit(QuantumState& state, const Circuit& c) {
    for (const auto& g : c.gates()) state.apply(g);
}

enum class Workspace { require_cleared, project };

/// Zero-mode Fourier amplitude of the coordinate registers, sum a_ij / N.
///
/// With `Workspace::require_cleared` the workspace must carry no
/// probability (<= 1e-20); `Workspace::project` sums over w = 0 only.
inline Amplitude zero_harmonic(const QuantumState& state, Workspace policy = Workspace::require_cleared) {
    const auto& layout = state.layout();
    if (policy == Workspace::require_cleared && state.workspace_probability() > 1e-20) {
        throw NumericalError("workspace not cleared");
    }
    const std::uint64_t mask = layout.work_mask();
    Amplitude sum{0.0};
    state.for_each_nonzero([&](std::uint64_t k, Amplitude a) {
        if ((k & mask) == 0) sum += a;
    });
    return sum / static_cast<double>(layout.lattice_size());
}

}  // namespace catsim
