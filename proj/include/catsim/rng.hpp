#pragma once

#include <cstdint>
#include <random>

namespace catsim {

/// Pseudo-random engine used for every noise draw in the library.
using Rng = std::mt19937_64;

/// Derives the stream for one noise realization from a master seed.
///
/// Streams for distinct realization indices are seeded through a
/// `std::seed_seq` over both 64-bit words, so parallel realizations are
/// independent of each other and of scheduling order.
inline Rng make_stream(std::uint64_t seed, std::uint64_t realization_index) {
    std::seed_seq seq{
        static_cast<std::uint32_t>(seed),
        static_cast<std::uint32_t>(seed >> 32),
        static_cast<std::uint32_t>(realization_index),
        static_cast<std::uint32_t>(realization_index >> 32),
    };
    return Rng(seq);
}

/// Uniform draw in [-half_width, half_width].
template <std::uniform_random_bit_generator G>
double uniform_symmetric(G& rng, double half_width) {
    return std::uniform_real_distribution<double>(-half_width, half_width)(rng);
}

}  // namespace catsim
