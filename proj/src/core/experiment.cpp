#include "specfilt/experiment.hpp"

#include "specfilt/blocks.hpp"
#include "specfilt/error.hpp"
#include "specfilt/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

namespace specfilt::experiment {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kMaxBisections = 200;

std::string format(const char* fmt, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, a);
  return buf;
}

std::string format(const char* fmt, double a, double b) {
  char buf[96];
  std::snprintf(buf, sizeof buf, fmt, a, b);
  return buf;
}

}  // namespace

const Cell& Table::at(int order, std::size_t truncation) const {
  for (const auto& c : cells) {
    if (c.order == order && c.truncation == truncation) return c;
  }
  throw std::out_of_range("table has no cell n=" + std::to_string(order) + " L=" + std::to_string(truncation));
}

Table run_table(const config::ExperimentSpec& spec, const Progress& progress) {
  Table t;
  t.spec = spec;
  for (int n : spec.orders) {
    for (std::size_t len : spec.truncations) {
      Cell c{n, len, modeling::run(spec.cell(n, len))};
      if (progress) progress(c);
      t.cells.push_back(c);
    }
  }
  return t;
}

std::string table_csv(const Table& table) {
  std::string out = "n";
  for (std::size_t len : table.spec.truncations) out += ",L=" + std::to_string(len);
  out += '\n';
  for (int n : table.spec.orders) {
    out += std::to_string(n);
    for (std::size_t len : table.spec.truncations) {
      const auto& r = table.at(n, len).report;
      out += ',';
      out += r.monte_carlo ? format("%.6f (%.6f)", r.error_stats.mean, r.error_stats.stddev) : format("%.6f", r.error);
    }
    out += '\n';
  }
  return out;
}

std::string table_summary(const Table& table) {
  std::string out = "# " + table.spec.name + ": " + filters::to_string(table.spec.family) + ", cutoff " +
                    format("%.9g", table.spec.cutoff_over_pi) + " pi, shift " +
                    modeling::to_string(table.spec.shift_mode) + "\n";
  for (const auto& c : table.cells) {
    const auto& r = c.report;
    out += "n=" + std::to_string(c.order) + " L=" + std::to_string(c.truncation);
    out += " tau=" + format("%.9g", r.phase_delay);
    if (r.monte_carlo) {
      out += " E=" + format("%.9g", r.error_stats.mean) + " sd=" + format("%.9g", r.error_stats.stddev);
      out += " E0=" + format("%.9g", r.apriori_stats.mean) + " sd=" + format("%.9g", r.apriori_stats.stddev);
      out += " E0+=" + format("%.9g", r.upper_stats.mean) + " sd=" + format("%.9g", r.upper_stats.stddev);
      out += " M=" + std::to_string(r.realizations);
    } else {
      out += " E=" + format("%.9g", r.error) + " E0=" + format("%.9g", r.apriori) +
             " E0+=" + format("%.9g", r.apriori_upper);
    }
    out += '\n';
  }
  return out;
}

double apriori_at_delay(const config::ExperimentSpec& spec, std::size_t truncation, double tau,
                        config::DelayIntegrand integrand) {
  const double T = spec.horizon;
  if (!(tau >= 0.0 && tau <= T)) throw std::invalid_argument("apriori_at_delay: tau outside [0, T]");
  const modeling::ExperimentConfig cfg = spec.cell(spec.orders.front(), truncation);
  if (integrand == config::DelayIntegrand::Spectral) {
    const SpectralVec v = modeling::deterministic_noise(cfg);
    return modeling::quadratic_form_root(v.coeffs(), blocks::indicator_gain_matrix(T, truncation, T - tau).data());
  }
  const double cut = T - tau;
  if (cut <= 0.0) return 0.0;
  double max_freq = 0.0;
  for (const auto& tn : cfg.noise.tones) max_freq = std::max(max_freq, tn.omega);
  const modeling::NoiseSpec noise = cfg.noise;
  const double sq =
      quadrature::integrate([&noise](double t) { return noise.value(t) * noise.value(t); }, 0.0, cut, 2.0 * max_freq);
  return std::sqrt(std::max(sq, 0.0));
}

Root solve_delay(const config::ExperimentSpec& spec, std::size_t truncation, double target,
                 config::DelayIntegrand integrand) {
  if (spec.noise_kind != modeling::NoiseSpec::Kind::Deterministic) {
    throw ConfigError("noise.kind", "calibration needs deterministic noise");
  }
  if (!(target > 0.0)) throw ConfigError("calibration.anchors", "apriori_error must be positive");
  auto f = [&](double tau) { return apriori_at_delay(spec, truncation, tau, integrand) - target; };
  const double f0 = f(0.0);
  if (f0 <= 0.0) return {0.0, std::abs(f0)};
  double lo = 0.0;
  double hi = spec.horizon;
  for (int it = 0; it < kMaxBisections && hi - lo > 1e-15 * spec.horizon; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (f(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double tau = 0.5 * (lo + hi);
  return {tau, std::abs(f(tau))};
}

Root solve_cutoff(const filters::DesignParams& design, double signal_omega, double tau, double lo, double hi) {
  if (!(lo > 0.0 && hi > lo)) throw std::invalid_argument("solve_cutoff: need 0 < lo < hi");
  auto g = [&](double wc) {
    filters::DesignParams p = design;
    p.cutoff = wc;
    return filters::phase_delay(filters::FilterDesign::make(p), signal_omega) - tau;
  };
  double glo = g(lo);
  const double ghi = g(hi);
  if (glo == 0.0) return {lo, 0.0};
  if (ghi == 0.0) return {hi, 0.0};
  if ((glo > 0.0) == (ghi > 0.0)) {
    throw CalibrationError("no sign change of phase_delay - tau on [" + format("%.9g", lo / kPi) + " pi, " +
                           format("%.9g", hi / kPi) + " pi] for tau = " + format("%.9g", tau));
  }
  for (int it = 0; it < kMaxBisections && hi - lo > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double gm = g(mid);
    if ((gm > 0.0) == (glo > 0.0)) {
      lo = mid;
      glo = gm;
    } else {
      hi = mid;
    }
  }
  const double wc = 0.5 * (lo + hi);
  return {wc, std::abs(g(wc))};
}

CalibrationResult calibrate(const config::ExperimentSpec& spec) {
  if (!spec.calibration) throw ConfigError("calibration", "missing calibration block");
  const auto& cal = *spec.calibration;
  CalibrationResult result;
  const filters::DesignParams design = spec.design(spec.orders.front());
  const double omega = spec.signal.tone().omega;
  for (const auto& a : cal.anchors) {
    CalibrationPoint p;
    p.truncation = a.truncation;
    p.target = a.apriori_error;
    p.delay = solve_delay(spec, a.truncation, a.apriori_error, cal.integrand);
    p.cutoff = solve_cutoff(design, omega, p.delay.value, cal.bracket_lo_over_pi * kPi, cal.bracket_hi_over_pi * kPi);
    result.points.push_back(p);
  }
  double sum = 0.0;
  for (const auto& p : result.points) sum += p.cutoff.value;
  result.consensus_cutoff = sum / static_cast<double>(result.points.size());
  for (const auto& p : result.points) {
    result.max_relative_spread =
        std::max(result.max_relative_spread, std::abs(p.cutoff.value - result.consensus_cutoff) / result.consensus_cutoff);
  }
  return result;
}

std::string calibration_report(const CalibrationResult& r) {
  std::string out = "L,target_E0,tau_phi,tau_residual,cutoff_over_pi,cutoff_residual\n";
  for (const auto& p : r.points) {
    out += std::to_string(p.truncation) + "," + format("%.9g", p.target) + "," + format("%.12g", p.delay.value) + "," +
           format("%.3g", p.delay.residual) + "," + format("%.9g", p.cutoff.value / kPi) + "," +
           format("%.3g", p.cutoff.residual) + "\n";
  }
  out += "# consensus cutoff = " + format("%.9g", r.consensus_cutoff / kPi) + " pi, max relative spread = " +
         format("%.3g", r.max_relative_spread) + "\n";
  return out;
}

}  // namespace specfilt::experiment
