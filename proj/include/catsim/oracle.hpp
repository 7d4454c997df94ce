#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "catsim/cell_grid.hpp"
#include "catsim/error.hpp"
#include "catsim/state.hpp"

namespace catsim::oracle {

namespace detail {
inline void check_lattice(std::uint64_t n) {
    if (n < 2 || (n & (n - 1)) != 0) throw ConfigError("N", "lattice size must be a power of two >= 2");
}
inline void check_point(const LatticePoint& p, std::uint64_t n) {
    check_lattice(n);
    if (p.i >= n || p.j >= n) {
        throw ConfigError("point", "point (" + std::to_string(p.i) + ", " + std::to_string(p.j) +
                                       ") outside the lattice of size " + std::to_string(n));
    }
}
inline int log2_exact(std::uint64_t n) {
    int k = 0;
    while ((std::uint64_t{1} << k) < n) ++k;
    return k;
}
}  // namespace detail

/// y' = y + x, x' = y + 2x (mod N) on integer lattice coordinates (i = x, j = y).
inline LatticePoint cat_step(const LatticePoint& p, std::uint64_t n) {
    detail::check_point(p, n);
    const std::uint64_t j = (p.j + p.i) % n;
    return {(p.i + j) % n, j};
}

inline LatticePoint cat_step_inverse(const LatticePoint& p, std::uint64_t n) {
    detail::check_point(p, n);
    const std::uint64_t i = (p.i + n - p.j) % n;
    return {i, (p.j + n - i) % n};
}

/// Smallest T >= 1 with cat_step^T = identity on the whole N x N lattice.
inline std::uint64_t cat_period(std::uint64_t n) {
    detail::check_lattice(n);
    // The map is linear, so it suffices to follow the two unit vectors.
    LatticePoint ex{1, 0}, ey{0, 1};
    for (std::uint64_t t = 1;; ++t) {
        ex = cat_step(ex, n);
        ey = cat_step(ey, n);
        if (ex == LatticePoint{1, 0} && ey == LatticePoint{0, 1}) return t;
    }
}

/// Nonnegative weights on the N x N lattice, row-major in (i, j).
class LatticeDistribution {
public:
    explicit LatticeDistribution(std::uint64_t n) : n_(n) {
        detail::check_lattice(n);
        weights_.assign(n * n, 0.0);
    }

    /// Uniform weight 1 / N_d on each point of the set.
    static LatticeDistribution uniform(std::uint64_t n, std::span<const LatticePoint> points) {
        if (points.empty()) throw ConfigError("initial", "empty initial distribution");
        LatticeDistribution d(n);
        const double w = 1.0 / static_cast<double>(points.size());
        for (const auto& p : points) {
            detail::check_point(p, n);
            d.at(p) += w;
        }
        return d;
    }

    std::uint64_t size() const noexcept { return n_; }
    double& at(const LatticePoint& p) { return weights_[p.i * n_ + p.j]; }
    double at(const LatticePoint& p) const { return weights_[p.i * n_ + p.j]; }
    const std::vector<double>& weights() const noexcept { return weights_; }

    double total() const {
        double s = 0.0;
        for (double w : weights_) s += w;
        return s;
    }

    /// Sums weights over the cells formed by the top n_g bits of i and j.
    CellGrid coarse_grain(int n_g) const {
        const int n_q = detail::log2_exact(n_);
        if (n_g < 1 || n_g > n_q) throw ConfigError("n_g", "n_g out of range");
        CellGrid grid(n_g);
        const int shift = n_q - n_g;
        for (std::uint64_t i = 0; i < n_; ++i) {
            for (std::uint64_t j = 0; j < n_; ++j) grid.at(i >> shift, j >> shift) += weights_[i * n_ + j];
        }
        return grid;
    }

private:
    std::uint64_t n_;
    std::vector<double> weights_;
};

/// Transports the weights t times along the lattice cat map.
inline LatticeDistribution iterate_distribution(const LatticeDistribution& dist, std::uint64_t t) {
    const std::uint64_t n = dist.size();
    LatticeDistribution cur = dist;
    for (std::uint64_t s = 0; s < t; ++s) {
        LatticeDistribution next(n);
        for (std::uint64_t i = 0; i < n; ++i) {
            for (std::uint64_t j = 0; j < n; ++j) {
                const double w = cur.at({i, j});
                if (w != 0.0) next.at(cat_step({i, j}, n)) = w;
            }
        }
        cur = std::move(next);
    }
    return cur;
}

/// Monte Carlo estimate of the coarse-grained density after t steps: n_traj
/// start points drawn uniformly, with replacement, from `initial`.
template <std::uniform_random_bit_generator G>
CellGrid monte_carlo_cells(std::span<const LatticePoint> initial, std::uint64_t n, std::size_t n_traj,
                           std::uint64_t t, int n_g, G& rng) {
    if (initial.empty()) throw ConfigError("initial", "empty initial distribution");
    if (n_traj < 1) throw ConfigError("n_traj", "n_traj must be >= 1");
    detail::check_lattice(n);
    const int n_q = detail::log2_exact(n);
    if (n_g < 1 || n_g > n_q) throw ConfigError("n_g", "n_g out of range");
    const int shift = n_q - n_g;

    CellGrid grid(n_g);
    std::uniform_int_distribution<std::size_t> pick(0, initial.size() - 1);
    const double w = 1.0 / static_cast<double>(n_traj);
    for (std::size_t k = 0; k < n_traj; ++k) {
        LatticePoint p = initial[pick(rng)];
        for (std::uint64_t s = 0; s < t; ++s) p = cat_step(p, n);
        grid.at(p.i >> shift, p.j >> shift) += w;
    }
    return grid;
}

/// Exhaustive Monte Carlo: every initial point traced exactly once.
inline CellGrid exhaustive_cells(std::span<const LatticePoint> initial, std::uint64_t n, std::uint64_t t, int n_g) {
    if (initial.empty()) throw ConfigError("initial", "empty initial distribution");
    detail::check_lattice(n);
    const int n_q = detail::log2_exact(n);
    if (n_g < 1 || n_g > n_q) throw ConfigError("n_g", "n_g out of range");
    const int shift = n_q - n_g;
    CellGrid grid(n_g);
    const double w = 1.0 / static_cast<double>(initial.size());
    for (LatticePoint p : initial) {
        for (std::uint64_t s = 0; s < t; ++s) p = cat_step(p, n);
        grid.at(p.i >> shift, p.j >> shift) += w;
    }
    return grid;
}

}  // namespace catsim::oracle
