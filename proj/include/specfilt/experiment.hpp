#pragma once

// Table runs over (order, truncation) grids and the cutoff calibration chain.

#include "specfilt/config.hpp"
#include "specfilt/modeling.hpp"

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace specfilt::experiment {

struct Cell {
  int order = 0;
  std::size_t truncation = 0;
  modeling::ErrorReport report;
};

struct Table {
  config::ExperimentSpec spec;
  std::vector<Cell> cells;  ///< row-major: orders outer, truncations inner

  /// Throws std::out_of_range if the cell is absent.
  const Cell& at(int order, std::size_t truncation) const;
};

using Progress = std::function<void(const Cell&)>;

Table run_table(const config::ExperimentSpec& spec, const Progress& progress = {});

/// Header "n,L=128,...". Deterministic cells print E as %.6f, Monte Carlo
/// cells as "mean (std)".
std::string table_csv(const Table& table);

/// One line per cell with tau_phi, E, E_0 and E_0^+ at full precision.
std::string table_summary(const Table& table);

/// E_0 at truncation L when the compensation advance is tau: the truncated
/// form sqrt(V^T A(T - tau) V) or sqrt(int_0^{T - tau} v^2 dt).
double apriori_at_delay(const config::ExperimentSpec& spec, std::size_t truncation, double tau,
                        config::DelayIntegrand integrand);

struct Root {
  double value = 0.0;
  double residual = 0.0;
};

/// Step 1: tau in [0, T] with apriori_at_delay(tau) = target. Targets at or
/// above the tau = 0 value give tau = 0.
Root solve_delay(const config::ExperimentSpec& spec, std::size_t truncation, double target,
                 config::DelayIntegrand integrand);

/// Step 2: cutoff in [lo, hi] whose phase delay at the signal frequency is
/// tau. Throws CalibrationError when the bracket has no sign change.
Root solve_cutoff(const filters::DesignParams& design, double signal_omega, double tau, double lo, double hi);

struct CalibrationPoint {
  std::size_t truncation = 0;
  double target = 0.0;
  Root delay;
  Root cutoff;
};

struct CalibrationResult {
  std::vector<CalibrationPoint> points;
  double consensus_cutoff = 0.0;  ///< mean of the per-anchor cutoffs
  double max_relative_spread = 0.0;
};

/// Runs both steps for every anchor of spec.calibration with the design of
/// spec.orders.front(). Throws ConfigError if there is no calibration
/// block.
CalibrationResult calibrate(const config::ExperimentSpec& spec);

std::string calibration_report(const CalibrationResult& result);

}  // namespace specfilt::experiment
