#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include "catsim/error.hpp"

namespace catsim {

/// 2^n_g x 2^n_g coarse-grained probabilities, indexed (i_g, j_g) with i_g
/// the x cell.
class CellGrid {
public:
    CellGrid() = default;
    explicit CellGrid(int n_g) : n_g_(n_g) {
        if (n_g < 0 || n_g > 15) throw ConfigError("n_g", "n_g must be in [0, 15]");
        cells_.assign(side() * side(), 0.0);
    }

    int n_g() const noexcept { return n_g_; }
    std::size_t side() const noexcept { return std::size_t{1} << n_g_; }
    std::size_t size() const noexcept { return cells_.size(); }

    double& at(std::size_t ig, std::size_t jg) { return cells_.at(ig * side() + jg); }
    double at(std::size_t ig, std::size_t jg) const { return cells_.at(ig * side() + jg); }

    const std::vector<double>& values() const noexcept { return cells_; }
    std::vector<double>& values() noexcept { return cells_; }

    double total() const { return std::accumulate(cells_.begin(), cells_.end(), 0.0); }

private:
    int n_g_ = 0;
    std::vector<double> cells_;
};

inline double l1_distance(const CellGrid& a, const CellGrid& b) {
    if (a.n_g() != b.n_g()) throw ConfigError("n_g", "grid size mismatch");
    double d = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) d += std::abs(a.values()[k] - b.values()[k]);
    return d;
}

inline double max_abs_difference(const CellGrid& a, const CellGrid& b) {
    if (a.n_g() != b.n_g()) throw ConfigError("n_g", "grid size mismatch");
    double d = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) d = std::max(d, std::abs(a.values()[k] - b.values()[k]));
    return d;
}

}  // namespace catsim
