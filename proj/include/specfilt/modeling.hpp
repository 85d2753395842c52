#pragma once

// Filtering experiment: X = W G, delay compensation X* = S X, and the error
// metrics on [0, T - tau_phi], deterministic or Monte Carlo.

#include "specfilt/filters.hpp"
#include "specfilt/types.hpp"

#include <cstddef>
#include <cstdint>
#include <numbers>
#include <string_view>
#include <vector>

namespace specfilt::modeling {

enum class ShiftMode { Natural, ZeroExt };

const char* to_string(ShiftMode mode);
/// Accepts "natural" and "zero" (also "zero-ext", "zeroext").
ShiftMode parse_shift_mode(std::string_view name);

struct Tone {
  enum class Kind { Sin, Cos };
  Kind kind = Kind::Sin;
  double omega = 10.0 * std::numbers::pi;
  double weight = 1.0;

  double value(double t) const;
  SpectralVec spectrum(double horizon, std::size_t order) const;
};

struct NoiseSpec {
  enum class Kind { None, Deterministic, Random };
  Kind kind = Kind::Deterministic;
  double sigma = 0.2;
  std::vector<Tone> tones;  ///< deterministic noise is sigma * sum of tones

  static NoiseSpec none();
  /// sigma = 0.2 with sin 78 pi t, cos 95 pi t, sin 112 pi t.
  static NoiseSpec deterministic_default();
  /// Standard Gaussian white noise scaled by sigma = 0.01.
  static NoiseSpec random_default();

  double value(double t) const;  ///< deterministic noise only
};

struct ExperimentConfig {
  filters::DesignParams design;
  double horizon = 1.0;
  std::size_t truncation = 128;
  Tone signal;
  NoiseSpec noise = NoiseSpec::deterministic_default();
  std::size_t realizations = 10000;
  std::uint64_t seed = 1;
  ShiftMode shift_mode = ShiftMode::Natural;
  unsigned threads = 1;  ///< 0 picks the hardware concurrency
};

struct MonteCarloStats {
  double mean = 0.0;
  double stddev = 0.0;  ///< biased: divides by M
};

struct ErrorReport {
  double error = 0.0;          ///< E, or its sample mean for Monte Carlo runs
  double apriori = 0.0;        ///< E_0
  double apriori_upper = 0.0;  ///< E_0^+ = ||V||
  double phase_delay = 0.0;
  bool monte_carlo = false;
  std::size_t realizations = 0;
  MonteCarloStats error_stats;
  MonteCarloStats apriori_stats;
  MonteCarloStats upper_stats;
};

/// Quadratic form values below -1e-12 are a numerical failure.
inline constexpr double kNegativeFormTolerance = 1e-12;

/// sqrt(d^T A d) with small negative values clamped to zero.
double quadratic_form_root(const Vector& d, const Matrix& a);

SpectralVec apply_filter(const filters::PreparedOperator& op, const SpectralVec& g);
SpectralVec apply_filter(const filters::FactoredOperator& op, const SpectralVec& g);

SpectralVec compensate_delay(const BlockMatrix& shift, const SpectralVec& x);

/// E = sqrt((X* - U)^T A (X* - U)).
double error_metric(const SpectralVec& compensated, const SpectralVec& original, const BlockMatrix& gain);

struct AprioriErrors {
  double apriori = 0.0;
  double upper = 0.0;
};
AprioriErrors apriori_errors(const SpectralVec& noise, const BlockMatrix& gain);

/// Shift matrix for compensation by an advance tau; tau = 0 gives E in
/// both modes.
BlockMatrix shift_for(ShiftMode mode, double horizon, std::size_t order, double tau);

/// Throws ConfigError naming the offending field.
void validate(const ExperimentConfig& config);

filters::FilterDesign design_of(const ExperimentConfig& config);
double phase_delay_of(const ExperimentConfig& config);

SpectralVec signal_spectrum(const ExperimentConfig& config);
/// Deterministic noise spectrum (zero for None).
SpectralVec deterministic_noise(const ExperimentConfig& config);

ErrorReport run_deterministic(const ExperimentConfig& config);
ErrorReport run_monte_carlo(const ExperimentConfig& config);
/// Dispatches on the noise kind.
ErrorReport run(const ExperimentConfig& config);

/// Per-realization values of a Monte Carlo run, in realization order.
struct MonteCarloSamples {
  std::vector<double> error;
  std::vector<double> apriori;
  std::vector<double> upper;
};
MonteCarloSamples monte_carlo_samples(const ExperimentConfig& config);
MonteCarloStats summarize(const std::vector<double>& values);

/// Spectra of one run, for plotting. Random noise uses realization 0.
struct Trajectory {
  SpectralVec original;
  SpectralVec noisy;
  SpectralVec output;
  SpectralVec compensated;
  double phase_delay = 0.0;
};
Trajectory trajectory(const ExperimentConfig& config);

}  // namespace specfilt::modeling
