#pragma once

#include <algorithm>
#include <array>
#include <complex>
#include <cstdint>
#include <span>
#include <string>

#include "catsim/error.hpp"

namespace catsim {

using Amplitude = std::complex<double>;

/// Row-major 2x2 block: {m00, m01, m10, m11}. Column = input target bit,
/// row = output target bit.
using Block = std::array<Amplitude, 4>;

inline constexpr Block kExchangeBlock{Amplitude{0.0}, Amplitude{1.0}, Amplitude{1.0}, Amplitude{0.0}};

/// True when the block has exactly one nonzero entry in every row and column.
inline bool is_monomial_block(const Block& b) {
    const bool nz00 = b[0] != 0.0, nz01 = b[1] != 0.0, nz10 = b[2] != 0.0, nz11 = b[3] != 0.0;
    return (nz00 && nz11 && !nz01 && !nz10) || (nz01 && nz10 && !nz00 && !nz11);
}

/// Max-entry deviation of B^dagger B from the identity.
inline double unitarity_defect(const Block& b) {
    const Amplitude p00 = std::conj(b[0]) * b[0] + std::conj(b[2]) * b[2];
    const Amplitude p01 = std::conj(b[0]) * b[1] + std::conj(b[2]) * b[3];
    const Amplitude p11 = std::conj(b[1]) * b[1] + std::conj(b[3]) * b[3];
    return std::max({std::abs(p00 - 1.0), std::abs(p01), std::abs(p11 - 1.0)});
}

inline Block multiply(const Block& a, const Block& b) {
    return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
            a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
}

/// A 2x2 block on one target qubit, conditioned on up to two control qubits
/// being |1>.
class GateInstance {
public:
    static constexpr int kMaxControls = 2;

    GateInstance(std::span<const int> controls, int target, const Block& block = kExchangeBlock)
        : target_(target), block_(block), monomial_(is_monomial_block(block)) {
        if (controls.size() > kMaxControls) {
            throw ConfigError("gate", "at most two controls are supported");
        }
        num_controls_ = static_cast<int>(controls.size());
        std::copy(controls.begin(), controls.end(), controls_.begin());
        if (target < 0) throw ConfigError("gate", "negative qubit index");
        for (int k = 0; k < num_controls_; ++k) {
            if (controls_[k] < 0) throw ConfigError("gate", "negative qubit index");
            if (controls_[k] == target) throw ConfigError("gate", "duplicate qubit index");
        }
        if (num_controls_ == 2 && controls_[0] == controls_[1]) {
            throw ConfigError("gate", "duplicate qubit index");
        }
    }

    static GateInstance x(int target) { return GateInstance({}, target); }
    static GateInstance cnot(int control, int target) {
        const std::array<int, 1> c{control};
        return GateInstance(c, target);
    }
    static GateInstance toffoli(int c1, int c2, int target) {
        const std::array<int, 2> c{c1, c2};
        return GateInstance(c, target);
    }

    std::span<const int> controls() const noexcept { return {controls_.data(), static_cast<std::size_t>(num_controls_)}; }
    int num_controls() const noexcept { return num_controls_; }
    int target() const noexcept { return target_; }
    const Block& block() const noexcept { return block_; }
    bool is_monomial() const noexcept { return monomial_; }
    bool is_ideal() const noexcept { return block_ == kExchangeBlock; }

    std::uint64_t control_mask() const noexcept {
        std::uint64_t m = 0;
        for (int k = 0; k < num_controls_; ++k) m |= std::uint64_t{1} << controls_[k];
        return m;
    }

    int max_qubit() const noexcept {
        int q = target_;
        for (int k = 0; k < num_controls_; ++k) q = std::max(q, controls_[k]);
        return q;
    }

    /// Same qubits, different block.
    GateInstance with_block(const Block& block) const {
        GateInstance g = *this;
        g.block_ = block;
        g.monomial_ = is_monomial_block(block);
        return g;
    }

    /// Same qubits and block; ignores monomial flag (it is derived).
    friend bool operator==(const GateInstance& a, const GateInstance& b) {
        return a.num_controls_ == b.num_controls_ && a.target_ == b.target_ &&
               std::equal(a.controls_.begin(), a.controls_.begin() + a.num_controls_, b.controls_.begin()) &&
               a.block_ == b.block_;
    }

private:
    std::array<int, kMaxControls> controls_{};
    int num_controls_ = 0;
    int target_ = 0;
    Block block_;
    bool monomial_ = true;
};

}  // namespace catsim
