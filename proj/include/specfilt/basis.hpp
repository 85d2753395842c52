#pragma once

// Cosine orthonormal basis on [0, T]:
//   q(0, t) = 1/sqrt(T),  q(i, t) = sqrt(2/T) cos(i pi t / T)  for i >= 1.

#include "specfilt/types.hpp"

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace specfilt::basis {

/// Behaviour of q(i, t) outside [0, T].
enum class Extension {
  Natural,  ///< same formula for every real t
  Zero,     ///< q(i, t) = 0 for t outside [0, T]
};

struct BasisSpec {
  double horizon = 1.0;
  std::size_t order = 1;
  Extension extension = Extension::Natural;

  /// Throws std::invalid_argument unless horizon > 0 and order >= 1.
  void validate() const;
};

/// q(index, t). Throws std::out_of_range when index >= spec.order.
double eval(const BasisSpec& spec, std::size_t index, double t);

/// d/dt q(index, t) under the same extension rule.
double eval_derivative(const BasisSpec& spec, std::size_t index, double t);

/// Sum_{i<L} coeffs_i q(i, t) at a single time.
double reconstruct_at(const BasisSpec& spec, const Vector& coeffs, double t);

/// Time-domain samples s_k = Sum_i coeffs_i q(i, t_k).
/// Throws std::invalid_argument on length mismatch or non-finite grid points.
std::vector<double> reconstruct(const BasisSpec& spec, const SpectralVec& coeffs, std::span<const double> grid);

struct ProjectionOptions {
  /// Highest angular frequency present in f; sets the panel density together
  /// with the highest basis frequency (L - 1) pi / T.
  double max_frequency = 0.0;
  /// Absolute accuracy target per coefficient.
  double tolerance = 1e-10;
};

/// G_i = integral over [0, T] of q(i, t) f(t) dt by composite Gauss–Legendre.
/// Throws NumericError naming the first coefficient that fails to converge.
SpectralVec project_quadrature(const BasisSpec& spec, const std::function<double(double)>& f,
                               ProjectionOptions options = {});

}  // namespace specfilt::basis
