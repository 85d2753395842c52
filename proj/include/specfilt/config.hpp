#pragma once

// JSON experiment files. A file describes one table: a filter family, a list
// of orders (rows) and truncation orders (columns), signal, noise and seed.
// tables/schema.json documents the format.

#include "specfilt/filters.hpp"
#include "specfilt/modeling.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace specfilt::config {

struct CalibrationAnchor {
  std::size_t truncation = 0;
  double apriori_error = 0.0;
};

enum class DelayIntegrand {
  Spectral,    ///< sqrt(V^T A(T - tau) V) at the anchor's truncation order
  Continuous,  ///< sqrt(int_0^{T - tau} v(t)^2 dt)
};

const char* to_string(DelayIntegrand integrand);
DelayIntegrand parse_integrand(std::string_view name);

struct CalibrationSpec {
  std::vector<CalibrationAnchor> anchors;
  double bracket_lo_over_pi = 10.0;
  double bracket_hi_over_pi = 78.0;
  DelayIntegrand integrand = DelayIntegrand::Spectral;
};

/// A tone as written in the file: frequency in multiples of pi, so values
/// round-trip exactly.
struct ToneSpec {
  modeling::Tone::Kind kind = modeling::Tone::Kind::Sin;
  double omega_over_pi = 10.0;
  double weight = 1.0;

  modeling::Tone tone() const;
};

struct ExperimentSpec {
  std::string name = "experiment";
  filters::Family family = filters::Family::Butterworth;
  std::vector<int> orders{3};
  double ripple = 0.1;
  double cutoff_over_pi = 40.0;
  filters::PassKind pass = filters::PassKind::LowPass;
  double horizon = 1.0;
  std::vector<std::size_t> truncations{128, 256, 512, 1024};
  ToneSpec signal;
  modeling::NoiseSpec::Kind noise_kind = modeling::NoiseSpec::Kind::Deterministic;
  double sigma = 0.2;
  std::vector<ToneSpec> noise_terms{{modeling::Tone::Kind::Sin, 78.0, 1.0},
                                    {modeling::Tone::Kind::Cos, 95.0, 1.0},
                                    {modeling::Tone::Kind::Sin, 112.0, 1.0}};
  std::size_t realizations = 10000;
  std::uint64_t seed = 1;
  modeling::ShiftMode shift_mode = modeling::ShiftMode::Natural;
  unsigned threads = 1;
  std::optional<CalibrationSpec> calibration;

  /// Configuration of one table cell.
  modeling::ExperimentConfig cell(int order, std::size_t truncation) const;
  filters::DesignParams design(int order) const;
  modeling::NoiseSpec noise() const;
};

/// Throws ConfigError naming the offending field (dotted path).
ExperimentSpec parse(const std::string& text);
/// Throws IoError if the file cannot be read, ConfigError if it is invalid.
ExperimentSpec load(const std::string& path);
/// Canonical JSON; parse(serialize(s)) reproduces s.
std::string serialize(const ExperimentSpec& spec);

}  // namespace specfilt::config
