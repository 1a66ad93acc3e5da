#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>

namespace qrc {

// mt19937_64 output is fixed by the standard, so every stream below is
// reproducible across toolchains. The distributions are ours for the same
// reason: std::*_distribution algorithms are implementation-defined.
using Rng = std::mt19937_64;

/// SplitMix64 finalizer.
std::uint64_t splitmix64(std::uint64_t x);

/// Derives the seed of sub-stream `index` from `master`:
///   mix(master, index) = splitmix64(master + (index + 1) * 0x9E3779B97F4A7C15)
std::uint64_t mix_seed(std::uint64_t master, std::uint64_t index);

/// Uniform double in [0, 1) built from the top 53 bits of one draw.
double uniform01(Rng& rng);

/// Uniform integer in [0, n), unbiased (rejection sampling). n must be > 0.
std::size_t uniform_index(Rng& rng, std::size_t n);

/// Draws an index with probability proportional to `weights` by inverse CDF.
/// Weights must be nonnegative with a positive sum.
std::size_t sample_categorical(std::span<const double> weights, Rng& rng);

}  // namespace qrc
