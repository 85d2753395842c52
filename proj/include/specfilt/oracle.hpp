#pragma once

// Time-domain reference for the spectral pipeline: a controllable canonical
// state-space realization of the cutoff-scaled transfer function, integrated
// with classical RK4 from zero initial state.

#include "specfilt/filters.hpp"
#include "specfilt/modeling.hpp"
#include "specfilt/types.hpp"

#include <cstddef>
#include <functional>
#include <vector>

namespace specfilt::oracle {

/// x' = A x + B u, y = C x + D u with A in companion form and B = e_n.
struct StateSpace {
  Matrix a;
  Vector b;
  Vector c;
  double d = 0.0;

  std::size_t order() const noexcept { return static_cast<std::size_t>(a.rows()); }
};

/// Monic polynomial prod (s - r_k), lowest degree first. Roots must be closed
/// under conjugation: an imaginary residue above 1e-10 relative throws
/// NumericError, otherwise it is dropped.
std::vector<double> expand_roots(const std::vector<filters::Complex>& roots);

/// Realization of H(s / cutoff) (low-pass) or H(cutoff / s) (high-pass).
StateSpace realize(const filters::FilterDesign& design);

/// Zero-order system with y = u.
StateSpace identity_system();

/// Poles of the realization (roots the companion matrix is built from).
std::vector<filters::Complex> realized_poles(const filters::FilterDesign& design);

struct Samples {
  std::vector<double> t;
  std::vector<double> y;
};

/// RK4 on a uniform grid of round(T / step) steps. Throws NumericError if
/// any state component exceeds 1e12 in magnitude.
Samples ode_filter(const StateSpace& system, const std::function<double(double)>& input, double horizon,
                   double step);

struct Discrepancy {
  double l2_full = 0.0;     ///< || reconstruct(W G) - y ||_{L2[0, T]}
  double sup_full = 0.0;
  double l2_window = 0.0;   ///< || reconstruct(S W G)(t) - y(t + tau) ||_{L2[0, T - tau]}
  double sup_window = 0.0;
  double phase_delay = 0.0;
  std::size_t truncation = 0;
  double step = 0.0;
};

/// Compares the spectral output of `op` applied to `input_spectrum` with the
/// ODE response of `system` to `input`; `tau` >= 0 is the compensation advance.
Discrepancy compare(const filters::FactoredOperator& op, const StateSpace& system, const SpectralVec& input_spectrum,
                    const std::function<double(double)>& input, double tau, modeling::ShiftMode mode, double step);

/// Deterministic-input cross-validation of a full experiment configuration.
/// Random noise is rejected with ConfigError.
Discrepancy cross_validate(const modeling::ExperimentConfig& config, double step = 1e-4);

}  // namespace specfilt::oracle
