#pragma once

#include "macwt/prob_core.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace macwt {

using Rng = std::mt19937_64;

// Uniform double in [0, 1) from the top 53 bits; stable across standard
// libraries, unlike std::uniform_real_distribution.
inline double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

// Uniform integer in [0, n).
std::size_t uniform_index(Rng& rng, std::size_t n);

// Random pmf of the given length with every entry at least `floor`.
std::vector<double> random_pmf(Rng& rng, std::size_t size, double floor = 0.02);

// Index drawn from pmf by inverse CDF.
std::size_t sample_index(Rng& rng, const std::vector<double>& pmf);

// Arbitrary P(y, z | x).
MacWiretapChannel random_channel(Rng& rng, const std::vector<std::size_t>& input_sizes,
                                 std::size_t y_size, std::size_t z_size);

// Z is produced from Y by a random kernel, so the eavesdropper is degraded
// and every secrecy-feasibility difference is nonnegative.
MacWiretapChannel random_degraded_channel(Rng& rng, const std::vector<std::size_t>& input_sizes,
                                          std::size_t y_size, std::size_t z_size);

InputDistribution random_input(Rng& rng, const MacWiretapChannel& channel, double floor = 0.05);

// Seed for trial `trial` of a run keyed by (master, tag).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t tag, std::uint64_t trial);

}  // namespace macwt
