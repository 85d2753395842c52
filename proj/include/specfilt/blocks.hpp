#pragma once

// Truncated two-dimensional transfer functions of the elementary blocks over
// the cosine basis. All builders return dense L x L matrices.

#include "specfilt/types.hpp"

#include <cstddef>

namespace specfilt::blocks {

/// Derivative block P. Includes the boundary term q(i,0) q(j,0), so P acts
/// as the inverse of the integral block under zero initial conditions.
BlockMatrix derivative_matrix(double horizon, std::size_t order);

/// Integral block P^{-1}: P^{-1}_{ij} = int q(i,t) int_0^t q(j,s) ds dt.
BlockMatrix integral_matrix(double horizon, std::size_t order);

/// Proportional block with gain equal to the indicator of [0, cut].
/// cut = T gives exactly E and cut = 0 exactly the zero matrix.
/// Throws std::invalid_argument unless 0 <= cut <= T.
BlockMatrix indicator_gain_matrix(double horizon, std::size_t order, double cut);

/// Pure time shift by `shift` with naturally extended basis functions.
/// Positive shift is an advance. Throws std::invalid_argument if |shift| >= T.
BlockMatrix shift_matrix_natural(double horizon, std::size_t order, double shift);

/// Pure time shift with basis functions extended by zero (S+ for a positive
/// shift, S- for a negative one). Rejects shift == 0 and |shift| >= T.
BlockMatrix shift_matrix_zero_ext(double horizon, std::size_t order, double shift);

BlockMatrix identity_matrix(double horizon, std::size_t order);

/// Numerical quadrature of the defining integral of element (i, j) of the
/// block `kind`; `param` is the cut point (IndicatorGain) or the shift
/// (Shift*). Independent of the closed forms above.
double matrix_element_oracle(BlockKind kind, double horizon, std::size_t i, std::size_t j, double param = 0.0);

}  // namespace specfilt::blocks
