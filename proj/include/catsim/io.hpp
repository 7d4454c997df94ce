#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "catsim/cell_grid.hpp"
#include "catsim/error.hpp"
#include "catsim/state.hpp"

namespace catsim::io {

/// Reads "i j" lines. Blank lines and lines starting with '#' are skipped.
inline std::vector<LatticePoint> read_points(std::istream& in) {
    std::vector<LatticePoint> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream ls(line);
        long long i = -1, j = -1;
        std::string rest;
        if (!(ls >> i >> j) || (ls >> rest) || i < 0 || j < 0) {
            throw ConfigError("initial", "malformed point on line " + std::to_string(lineno) + ": '" + line + "'");
        }
        out.push_back({static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(j)});
    }
    return out;
}

inline void write_points(std::ostream& os, const std::vector<LatticePoint>& points) {
    for (const auto& p : points) os << p.i << ' ' << p.j << '\n';
}

/// Plain PGM (P2) of a width x height image, values scaled so that the
/// maximum maps to 255. `value(col, row)` is queried with row 0 at the top.
template <class F>
void write_pgm(std::ostream& os, std::size_t width, std::size_t height, F&& value) {
    double vmax = 0.0;
    for (std::size_t r = 0; r < height; ++r) {
        for (std::size_t c = 0; c < width; ++c) vmax = std::max(vmax, value(c, r));
    }
    os << "P2\n" << width << ' ' << height << "\n255\n";
    for (std::size_t r = 0; r < height; ++r) {
        for (std::size_t c = 0; c < width; ++c) {
            const double v = value(c, r);
            const long px = vmax > 0.0 ? std::lround(255.0 * std::max(v, 0.0) / vmax) : 0;
            os << px << (c + 1 < width ? ' ' : '\n');
        }
    }
}

/// Cell grid as an image: column = x cell, top row = highest y cell.
inline void write_pgm(std::ostream& os, const CellGrid& grid) {
    const std::size_t side = grid.side();
    write_pgm(os, side, side, [&](std::size_t c, std::size_t r) { return grid.at(c, side - 1 - r); });
}

/// Lattice weights (row-major i, j) as an image, same orientation as the grid.
inline void write_pgm(std::ostream& os, std::uint64_t n, const std::vector<double>& weights) {
    write_pgm(os, n, n, [&](std::size_t c, std::size_t r) { return weights[c * n + (n - 1 - r)]; });
}

/// Pixels of a P2 image that are nonzero, as lattice points (same
/// orientation as write_pgm).
inline std::vector<LatticePoint> read_pgm_points(std::istream& in) {
    std::vector<std::string> tokens;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string tok;
        while (ls >> tok) tokens.push_back(tok);
    }
    if (tokens.size() < 4 || tokens[0] != "P2") throw ConfigError("initial", "not a plain (P2) PGM image");
    std::size_t width = 0, height = 0;
    try {
        width = std::stoul(tokens[1]);
        height = std::stoul(tokens[2]);
    } catch (const std::exception&) {
        throw ConfigError("initial", "bad PGM header");
    }
    if (tokens.size() != 4 + width * height) throw ConfigError("initial", "PGM pixel count does not match header");
    std::vector<LatticePoint> out;
    for (std::size_t r = 0; r < height; ++r) {
        for (std::size_t c = 0; c < width; ++c) {
            if (std::stol(tokens[4 + r * width + c]) != 0) out.push_back({c, height - 1 - r});
        }
    }
    return out;
}

/// Exact values, one "i_g,j_g,W" row per cell.
inline void write_grid_csv(std::ostream& os, const CellGrid& grid) {
    os << "ig,jg,w\n";
    for (std::size_t ig = 0; ig < grid.side(); ++ig) {
        for (std::size_t jg = 0; jg < grid.side(); ++jg) os << fmt::format("{},{},{}\n", ig, jg, grid.at(ig, jg));
    }
}

}  // namespace catsim::io
