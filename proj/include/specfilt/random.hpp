#pragma once

// Counter-based normal variates for white-noise realizations. A variate is a
// pure function of (seed, stream, index), so realizations can be generated in
// any order or in parallel and still be bit-identical.

#include <array>
#include <cstdint>
#include <span>

namespace specfilt::rng {

using Counter = std::array<std::uint32_t, 4>;
using Key = std::array<std::uint32_t, 2>;

/// Philox4x32 with 10 rounds (Salmon et al., SC'11).
Counter philox4x32(Counter counter, Key key);

/// Standard normal variate number `index` of stream `stream`.
double standard_normal(std::uint64_t seed, std::uint64_t stream, std::uint64_t index);

/// Fills out[k] = standard_normal(seed, stream, k).
void fill_standard_normal(std::uint64_t seed, std::uint64_t stream, std::span<double> out);

}  // namespace specfilt::rng
