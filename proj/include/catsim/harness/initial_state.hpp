#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "catsim/error.hpp"
#include "catsim/io.hpp"
#include "catsim/state.hpp"

namespace catsim::harness {

/// Stylized smile on the N x N lattice (N = 2^n_q, n_q >= 4).
///
/// Mouth: points within distance 1 of the circle of radius N/4 around
/// (N/2, N/2), restricted to j <= N/2. Eyes: 3 x (N/16) blocks centred on
/// (N/2 +- N/8, 5N/8). Returned sorted by (i, j).
inline std::vector<LatticePoint> build_initial_smile(int n_q) {
    if (n_q < 4) throw ConfigError("initial", "lattice too small for smile");
    if (n_q > 16) throw ConfigError("initial", "lattice too large for smile");
    const std::int64_t n = std::int64_t{1} << n_q;
    const std::int64_t c = n / 2;
    const std::int64_t r = n / 4;
    std::vector<LatticePoint> out;
    auto in_eye = [&](std::int64_t i, std::int64_t j) {
        const std::int64_t h = n / 16;
        const std::int64_t cy = 5 * n / 8;
        for (std::int64_t cx : {n / 2 - n / 8, n / 2 + n / 8}) {
            if (i >= cx - 1 && i <= cx + 1 && j >= cy - h / 2 && j < cy - h / 2 + h) return true;
        }
        return false;
    };
    for (std::int64_t i = 0; i < n; ++i) {
        for (std::int64_t j = 0; j < n; ++j) {
            const std::int64_t d2 = (i - c) * (i - c) + (j - c) * (j - c);
            // | |p - c| - r | <= 1  <=>  (r-1)^2 <= d2 <= (r+1)^2
            const bool mouth = j <= c && d2 >= (r - 1) * (r - 1) && d2 <= (r + 1) * (r + 1);
            if (mouth || in_eye(i, j)) {
                out.push_back({static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(j)});
            }
        }
    }
    return out;
}

/// Filled face disc of radius 3N/8 around (N/2, N/2) with the smile
/// features left empty. Dense enough (N_d ~ 7000 at n_q = 7) that some 2^5 x
/// 2^5 cell stays occupied through 100 map iterations.
inline std::vector<LatticePoint> build_initial_smile_face(int n_q) {
    const auto features = build_initial_smile(n_q);
    const std::int64_t n = std::int64_t{1} << n_q;
    const std::int64_t c = n / 2;
    const std::int64_t r = 3 * n / 8;
    std::vector<LatticePoint> out;
    for (std::int64_t i = 0; i < n; ++i) {
        for (std::int64_t j = 0; j < n; ++j) {
            const LatticePoint p{static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(j)};
            if ((i - c) * (i - c) + (j - c) * (j - c) <= r * r &&
                !std::binary_search(features.begin(), features.end(), p)) {
                out.push_back(p);
            }
        }
    }
    return out;
}

/// "smile", "smile-face", or a path to a point list ("i j" per line) or a P2 PGM bitmap
/// whose nonzero pixels are occupied.
inline std::vector<LatticePoint> load_initial(const std::string& spec, int n_q) {
    if (spec == "smile") return build_initial_smile(n_q);
    if (spec == "smile-face") return build_initial_smile_face(n_q);
    std::ifstream in(spec);
    if (!in) throw ConfigError("initial", "cannot open initial distribution '" + spec + "'");
    if (std::filesystem::path(spec).extension() == ".pgm") return io::read_pgm_points(in);
    return io::read_points(in);
}

}  // namespace catsim::harness
