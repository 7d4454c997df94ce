#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "catsim/error.hpp"
#include "catsim/gate.hpp"
#include "catsim/layout.hpp"

namespace catsim {

/// Storage strategy for a QuantumState.
///
/// `dense` keeps all 2^(3 n_q - 1) amplitudes and accepts any gate.
/// `monomial` keeps only the support as (index, amplitude) pairs; it accepts
/// monomial gates only, which map the support onto a support of equal size.
enum class Backend { dense, monomial };

inline const char* to_string(Backend b) { return b == Backend::dense ? "dense" : "monomial"; }

struct SparseEntry {
    std::uint64_t index = 0;
    Amplitude amplitude;
};

/// Plain complex product, without the NaN/Inf recovery path of
/// `operator*` on std::complex. Both backends use it so that they round
/// identically.
inline Amplitude cmul(Amplitude a, Amplitude b) noexcept {
    return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

struct LatticePoint {
    std::uint64_t i = 0;
    std::uint64_t j = 0;

    friend auto operator<=>(const LatticePoint&, const LatticePoint&) = default;
};

class QuantumState {
public:
    /// All-zero vector; callers fill it through `set_amplitude`.
    QuantumState(RegisterLayout layout, Backend backend) : layout_(std::move(layout)), backend_(backend) {
        if (backend_ == Backend::dense) {
            if (layout_.total_qubits() > kMaxDenseQubits) {
                throw ConfigError("backend", "dense backend limited to " + std::to_string(kMaxDenseQubits) +
                                                 " qubits, layout needs " + std::to_string(layout_.total_qubits()));
            }
            dense_.assign(layout_.dimension(), Amplitude{0.0});
        }
    }

    static constexpr int kMaxDenseQubits = 30;

    const RegisterLayout& layout() const noexcept { return layout_; }
    Backend backend() const noexcept { return backend_; }

    /// Number of stored nonzero amplitudes.
    std::size_t support_size() const {
        if (backend_ == Backend::monomial) return sparse_.size();
        return static_cast<std::size_t>(
            std::count_if(dense_.begin(), dense_.end(), [](Amplitude a) { return a != 0.0; }));
    }

    Amplitude amplitude(std::uint64_t index) const {
        if (backend_ == Backend::dense) return dense_.at(index);
        if (sorted_) {
            auto it = std::lower_bound(sparse_.begin(), sparse_.end(), index,
                                       [](const SparseEntry& e, std::uint64_t v) { return e.index < v; });
            return (it != sparse_.end() && it->index == index) ? it->amplitude : Amplitude{0.0};
        }
        for (const auto& e : sparse_) {
            if (e.index == index) return e.amplitude;
        }
        return Amplitude{0.0};
    }

    /// Overwrites one amplitude. For the monomial backend, writing zero
    /// removes the entry.
    void set_amplitude(std::uint64_t index, Amplitude value) {
        if (index >= layout_.dimension()) throw ConfigError("index", "basis index out of range");
        if (backend_ == Backend::dense) {
            dense_[index] = value;
            return;
        }
        sort_support();
        auto it = std::lower_bound(sparse_.begin(), sparse_.end(), index,
                                   [](const SparseEntry& e, std::uint64_t v) { return e.index < v; });
        if (it != sparse_.end() && it->index == index) {
            if (value == 0.0) {
                sparse_.erase(it);
            } else {
                it->amplitude = value;
            }
        } else if (value != 0.0) {
            sparse_.insert(it, SparseEntry{index, value});
        }
    }

    /// Visits every nonzero amplitude. Dense states are visited in ascending
    /// index order; monomial states in storage order.
    template <class F>
    void for_each_nonzero(F&& f) const {
        if (backend_ == Backend::dense) {
            for (std::uint64_t k = 0; k < dense_.size(); ++k) {
                if (dense_[k] != 0.0) f(k, dense_[k]);
            }
        } else {
            for (const auto& e : sparse_) f(e.index, e.amplitude);
        }
    }

    /// Nonzero amplitudes in ascending index order.
    std::vector<SparseEntry> sorted_support() const {
        std::vector<SparseEntry> out;
        if (backend_ == Backend::dense) {
            for_each_nonzero([&](std::uint64_t k, Amplitude a) { out.push_back({k, a}); });
        } else {
            out = sparse_;
            if (!sorted_) sort_entries(out);
        }
        return out;
    }

    std::span<const Amplitude> dense_amplitudes() const {
        if (backend_ != Backend::dense) throw ConfigError("backend", "state is not dense");
        return dense_;
    }

    double norm_squared() const {
        double s = 0.0;
        if (backend_ == Backend::dense) {
            for (Amplitude a : dense_) s += std::norm(a);
        } else {
            for (const auto& e : sparse_) s += std::norm(e.amplitude);
        }
        return s;
    }

    /// Total probability carried by basis states whose workspace is nonzero.
    double workspace_probability() const {
        const std::uint64_t mask = layout_.work_mask();
        double p = 0.0;
        for_each_nonzero([&](std::uint64_t k, Amplitude a) {
            if ((k & mask) != 0) p += std::norm(a);
        });
        return p;
    }

    /// Copy of this state stored with another backend.
    QuantumState with_backend(Backend backend) const {
        QuantumState out(layout_, backend);
        if (backend == Backend::dense) {
            for_each_nonzero([&](std::uint64_t k, Amplitude a) { out.dense_[k] = a; });
        } else {
            out.sparse_ = sorted_support();
        }
        return out;
    }

    /// Applies a controlled 2x2 block. The monomial backend rejects
    /// non-monomial gates.
    void apply(const GateInstance& gate) {
        if (gate.max_qubit() >= layout_.total_qubits()) {
            throw ConfigError("gate", "qubit index " + std::to_string(gate.max_qubit()) + " outside register of " +
                                          std::to_string(layout_.total_qubits()) + " qubits");
        }
        if (backend_ == Backend::dense) {
            apply_dense(gate);
        } else {
            apply_sparse(gate);
        }
    }

    /// Multiplies every nonzero amplitude, in ascending index order, by
    /// `phase()`. Identical draw order on both backends.
    template <class PhaseSource>
    void multiply_nonzero_in_order(PhaseSource&& phase) {
        if (backend_ == Backend::dense) {
            for (auto& a : dense_) {
                if (a != 0.0) a = cmul(a, phase());
            }
        } else {
            sort_support();
            for (auto& e : sparse_) e.amplitude = cmul(e.amplitude, phase());
        }
    }

private:
    static void sort_entries(std::vector<SparseEntry>& v) {
        std::sort(v.begin(), v.end(), [](const SparseEntry& a, const SparseEntry& b) { return a.index < b.index; });
    }

    void sort_support() {
        if (!sorted_) {
            sort_entries(sparse_);
            sorted_ = true;
        }
    }

    void apply_dense(const GateInstance& gate) {
        std::array<int, 3> fixed{};
        int n_fixed = 0;
        for (int c : gate.controls()) fixed[n_fixed++] = c;
        fixed[n_fixed++] = gate.target();
        std::sort(fixed.begin(), fixed.begin() + n_fixed);

        const std::uint64_t ctrl = gate.control_mask();
        const std::uint64_t tbit = std::uint64_t{1} << gate.target();
        const std::uint64_t count = layout_.dimension() >> n_fixed;
        const Block& m = gate.block();
        Amplitude* v = dense_.data();

        for (std::uint64_t k = 0; k < count; ++k) {
            std::uint64_t idx = k;
            for (int f = 0; f < n_fixed; ++f) {
                const int p = fixed[f];
                const std::uint64_t low = idx & ((std::uint64_t{1} << p) - 1);
                idx = ((idx >> p) << (p + 1)) | low;
            }
            const std::uint64_t i0 = idx | ctrl;
            const std::uint64_t i1 = i0 | tbit;
            const Amplitude a0 = v[i0];
            const Amplitude a1 = v[i1];
            v[i0] = cmul(m[0], a0) + cmul(m[1], a1);
            v[i1] = cmul(m[2], a0) + cmul(m[3], a1);
        }
    }

    void apply_sparse(const GateInstance& gate) {
        if (!gate.is_monomial()) {
            throw ConfigError("backend", "monomial backend cannot apply a non-monomial gate");
        }
        const std::uint64_t ctrl = gate.control_mask();
        const int t = gate.target();
        const std::uint64_t tbit = std::uint64_t{1} << t;
        const Block& m = gate.block();
        // Column c of a monomial block has its nonzero in row (c ^ flip).
        const bool flips = m[0] == 0.0;
        const Amplitude from0 = flips ? m[2] : m[0];
        const Amplitude from1 = flips ? m[1] : m[3];
        for (auto& e : sparse_) {
            if ((e.index & ctrl) != ctrl) continue;
            const bool bit = (e.index & tbit) != 0;
            e.amplitude = cmul(bit ? from1 : from0, e.amplitude);
            if (flips) e.index ^= tbit;
        }
        if (flips) sorted_ = false;
    }

    RegisterLayout layout_;
    Backend backend_;
    std::vector<Amplitude> dense_;
    std::vector<SparseEntry> sparse_;
    bool sorted_ = true;
};

/// Uniform superposition over `support`, amplitude 1/sqrt(N_d) on each
/// |i>|j>|0>.
inline QuantumState init_state(const RegisterLayout& layout, std::span<const LatticePoint> support,
                               Backend backend = Backend::monomial) {
    if (support.empty()) throw ConfigError("initial", "empty initial distribution");
    const std::uint64_t n = layout.lattice_size();
    std::set<LatticePoint> seen;
    for (const auto& p : support) {
        if (p.i >= n || p.j >= n) {
            throw ConfigError("initial", "point (" + std::to_string(p.i) + ", " + std::to_string(p.j) +
                                             ") outside the " + std::to_string(n) + "x" + std::to_string(n) +
                                             " lattice");
        }
        if (!seen.insert(p).second) {
            throw ConfigError("initial",
                              "duplicate point (" + std::to_string(p.i) + ", " + std::to_string(p.j) + ")");
        }
    }
    QuantumState state(layout, backend);
    const Amplitude a{1.0 / std::sqrt(static_cast<double>(support.size())), 0.0};
    for (const auto& p : seen) state.set_amplitude(layout.encode(p.i, p.j, 0), a);
    return state;
}

inline void apply_gate(QuantumState& state, const GateInstance& gate) { state.apply(gate); }

/// Multiplies each nonzero amplitude by exp(i theta), theta uniform in
/// [-pi, pi], drawn independently in ascending basis-index order.
template <std::uniform_random_bit_generator G>
void apply_per_amplitude_phase(QuantumState& state, G& rng) {
    std::uniform_real_distribution<double> theta(-std::numbers::pi, std::numbers::pi);
    state.multiply_nonzero_in_order([&] { return std::polar(1.0, theta(rng)); });
}

}  // namespace catsim
