#pragma once

#include <cstdint>
#include <vector>

#include "catsim/error.hpp"

namespace catsim {

/// Lattice coordinates plus workspace contents of one basis state.
struct BasisCoords {
    std::uint64_t i = 0;  ///< x register
    std::uint64_t j = 0;  ///< y register
    std::uint64_t w = 0;  ///< workspace register

    friend bool operator==(const BasisCoords&, const BasisCoords&) = default;
};

/// Three-register layout of the simulator: x and y registers of n_q qubits
/// and a workspace of n_q - 1 carry qubits.
///
/// A qubit index is the bit position in the basis index. Registers are
/// packed most-significant first:
///
///     index = (i << (2 n_q - 1)) | (j << (n_q - 1)) | w
///
/// so the first n_g qubits of a register are its top n_g bits.
class RegisterLayout {
public:
    static constexpr int kMinQubitsPerRegister = 2;
    static constexpr int kMaxQubitsPerRegister = 21;  // 3 n_q - 1 <= 62 bits

    explicit RegisterLayout(int n_q) : n_q_(n_q) {
        if (n_q < kMinQubitsPerRegister || n_q > kMaxQubitsPerRegister) {
            throw ConfigError("n_q", "n_q must be in [2, 21], got " + std::to_string(n_q));
        }
        for (int k = 0; k < n_q; ++k) x_.push_back(3 * n_q - 2 - k);
        for (int k = 0; k < n_q; ++k) y_.push_back(2 * n_q - 2 - k);
        for (int k = 0; k < n_q - 1; ++k) work_.push_back(n_q - 2 - k);
    }

    int n_q() const noexcept { return n_q_; }
    int total_qubits() const noexcept { return 3 * n_q_ - 1; }
    std::uint64_t lattice_size() const noexcept { return std::uint64_t{1} << n_q_; }
    std::uint64_t dimension() const noexcept { return std::uint64_t{1} << total_qubits(); }

    /// Qubit indices, most-significant first.
    const std::vector<int>& x_qubits() const noexcept { return x_; }
    const std::vector<int>& y_qubits() const noexcept { return y_; }
    const std::vector<int>& work_qubits() const noexcept { return work_; }

    std::uint64_t encode(std::uint64_t i, std::uint64_t j, std::uint64_t w = 0) const noexcept {
        return (i << (2 * n_q_ - 1)) | (j << (n_q_ - 1)) | w;
    }
    std::uint64_t encode(const BasisCoords& c) const noexcept { return encode(c.i, c.j, c.w); }

    BasisCoords decode(std::uint64_t index) const noexcept {
        const std::uint64_t reg_mask = lattice_size() - 1;
        const std::uint64_t work_mask = (std::uint64_t{1} << (n_q_ - 1)) - 1;
        return {(index >> (2 * n_q_ - 1)) & reg_mask, (index >> (n_q_ - 1)) & reg_mask,
                index & work_mask};
    }

    std::uint64_t work_mask() const noexcept { return (std::uint64_t{1} << (n_q_ - 1)) - 1; }

    friend bool operator==(const RegisterLayout& a, const RegisterLayout& b) {
        return a.n_q_ == b.n_q_;
    }

private:
    int n_q_;
    std::vector<int> x_;
    std::vector<int> y_;
    std::vector<int> work_;
};

}  // namespace catsim
