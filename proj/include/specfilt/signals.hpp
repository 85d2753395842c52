#pragma once

// Closed-form spectral characteristics of test signals over the cosine basis.

#include "specfilt/types.hpp"

#include <cstddef>
#include <cstdint>
#include <span>

namespace specfilt::signals {

/// Relative tolerance for detecting the resonant index i pi = T omega.
inline constexpr double kResonanceTolerance = 1e-12;

bool is_resonant(std::size_t index, double omega, double horizon);

/// Coefficients of sin(omega t) on [0, T]. Requires omega > 0.
SpectralVec spectral_sin(double omega, double horizon, std::size_t order);

/// Coefficients of cos(omega t) on [0, T]. Requires omega > 0.
SpectralVec spectral_cos(double omega, double horizon, std::size_t order);

/// sigma * Q for standard Gaussian white noise: Q has i.i.d. N(0, 1) entries.
/// Entry i of realization r is keyed by (seed, r, i), so it does not depend on
/// the truncation order or on the order realizations are drawn in.
SpectralVec spectral_white_noise(double sigma, double horizon, std::size_t order, std::uint64_t seed,
                                 std::uint64_t realization);

struct WeightedTerm {
  double weight;
  const SpectralVec* vec;
};

/// Element-wise linear combination. Throws std::invalid_argument when the
/// terms disagree on (T, L) or the list is empty.
SpectralVec combine(std::span<const WeightedTerm> terms, std::string label = "combination");

}  // namespace specfilt::signals
