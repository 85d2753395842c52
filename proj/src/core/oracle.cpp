#include "specfilt/oracle.hpp"

#include "specfilt/basis.hpp"
#include "specfilt/error.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace specfilt::oracle {

namespace {

constexpr double kImagResidue = 1e-10;
constexpr double kBlowUp = 1e12;

using filters::Complex;

StateSpace companion(const std::vector<double>& poly) {
  const auto n = static_cast<Eigen::Index>(poly.size() - 1);
  StateSpace ss;
  ss.a = Matrix::Zero(n, n);
  for (Eigen::Index i = 0; i + 1 < n; ++i) ss.a(i, i + 1) = 1.0;
  for (Eigen::Index k = 0; k < n; ++k) ss.a(n - 1, k) = -poly[static_cast<std::size_t>(k)];
  ss.b = Vector::Zero(n);
  ss.b(n - 1) = 1.0;
  ss.c = Vector::Zero(n);
  return ss;
}

// Trapezoid rule over uniformly spaced samples.
double trapezoid_l2(const std::vector<double>& diff, double h) {
  if (diff.size() < 2) return 0.0;
  double sum = 0.5 * (diff.front() * diff.front() + diff.back() * diff.back());
  for (std::size_t k = 1; k + 1 < diff.size(); ++k) sum += diff[k] * diff[k];
  return std::sqrt(sum * h);
}

double sup_abs(const std::vector<double>& diff) {
  double m = 0.0;
  for (double v : diff) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace

std::vector<double> expand_roots(const std::vector<Complex>& roots) {
  std::vector<Complex> poly{Complex(1.0, 0.0)};
  for (const auto& r : roots) {
    std::vector<Complex> next(poly.size() + 1, Complex(0.0, 0.0));
    for (std::size_t k = 0; k < poly.size(); ++k) {
      next[k + 1] += poly[k];
      next[k] -= r * poly[k];
    }
    poly = std::move(next);
  }
  double scale = 0.0;
  for (const auto& c : poly) scale = std::max(scale, std::abs(c));
  std::vector<double> out(poly.size());
  for (std::size_t k = 0; k < poly.size(); ++k) {
    if (std::abs(poly[k].imag()) > kImagResidue * scale) {
      throw NumericError("expand_roots: roots are not closed under conjugation");
    }
    out[k] = poly[k].real();
  }
  return out;
}

std::vector<Complex> realized_poles(const filters::FilterDesign& design) {
  std::vector<Complex> out;
  out.reserve(design.poles().size());
  for (const auto& s : design.poles()) {
    out.push_back(design.pass() == filters::PassKind::LowPass ? design.cutoff() * s : design.cutoff() / s);
  }
  return out;
}

StateSpace realize(const filters::FilterDesign& design) {
  const std::vector<double> poly = expand_roots(realized_poles(design));
  const auto n = static_cast<Eigen::Index>(design.poles().size());
  StateSpace ss = companion(poly);
  if (design.pass() == filters::PassKind::LowPass) {
    // H(s / wc) = gain wc^n / prod (s - wc s_k)
    ss.c(0) = design.gain() * std::pow(design.cutoff(), static_cast<double>(n));
    return ss;
  }
  // H(wc / s) = c s^n / prod (s - wc / s_k) with c = gain / prod(-s_k);
  // c s^n / a(s) = c + c (s^n - a(s)) / a(s).
  Complex prod(1.0, 0.0);
  for (const auto& s : design.poles()) prod *= -s;
  const double c = design.gain() / prod.real();
  ss.d = c;
  for (Eigen::Index k = 0; k < n; ++k) ss.c(k) = -c * poly[static_cast<std::size_t>(k)];
  return ss;
}

StateSpace identity_system() {
  StateSpace ss;
  ss.a = Matrix::Zero(0, 0);
  ss.b = Vector::Zero(0);
  ss.c = Vector::Zero(0);
  ss.d = 1.0;
  return ss;
}

Samples ode_filter(const StateSpace& system, const std::function<double(double)>& input, double horizon,
                   double step) {
  if (!(horizon > 0.0)) throw std::invalid_argument("ode_filter: horizon must be positive");
  if (!(step > 0.0) || step > horizon) throw std::invalid_argument("ode_filter: step must be in (0, T]");
  const auto steps = static_cast<std::size_t>(std::llround(horizon / step));
  const double h = horizon / static_cast<double>(steps);
  const auto n = static_cast<Eigen::Index>(system.order());

  Samples out;
  out.t.resize(steps + 1);
  out.y.resize(steps + 1);
  Vector x = Vector::Zero(n);
  auto rhs = [&](const Vector& state, double u) -> Vector { return system.a * state + system.b * u; };
  auto output = [&](const Vector& state, double u) { return (n > 0 ? system.c.dot(state) : 0.0) + system.d * u; };

  double u0 = input(0.0);
  out.t[0] = 0.0;
  out.y[0] = output(x, u0);
  for (std::size_t k = 0; k < steps; ++k) {
    const double t = static_cast<double>(k) * h;
    const double t1 = static_cast<double>(k + 1) * h;
    const double um = input(t + 0.5 * h);
    const double u1 = input(t1);
    if (n > 0) {
      const Vector k1 = rhs(x, u0);
      const Vector k2 = rhs(x + 0.5 * h * k1, um);
      const Vector k3 = rhs(x + 0.5 * h * k2, um);
      const Vector k4 = rhs(x + h * k3, u1);
      x += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      if (!(x.cwiseAbs().maxCoeff() <= kBlowUp)) {
        throw NumericError("ode_filter: state blew up at t = " + std::to_string(t1));
      }
    }
    out.t[k + 1] = t1;
    out.y[k + 1] = output(x, u1);
    u0 = u1;
  }
  return out;
}

Discrepancy compare(const filters::FactoredOperator& op, const StateSpace& system, const SpectralVec& input_spectrum,
                    const std::function<double(double)>& input, double tau, modeling::ShiftMode mode, double step) {
  const double T = input_spectrum.horizon();
  if (!(tau >= 0.0 && tau < T)) throw std::invalid_argument("compare: tau must lie in [0, T)");
  const std::size_t len = input_spectrum.size();
  const Samples ode = ode_filter(system, input, T, step);
  const double h = ode.t.size() > 1 ? ode.t[1] - ode.t[0] : T;

  const SpectralVec x = modeling::apply_filter(op, input_spectrum);
  const SpectralVec xs = modeling::compensate_delay(modeling::shift_for(mode, T, len, tau), x);
  const basis::BasisSpec spec{T, len, basis::Extension::Natural};

  Discrepancy r;
  r.phase_delay = tau;
  r.truncation = len;
  r.step = h;

  const std::vector<double> spectral = basis::reconstruct(spec, x, ode.t);
  std::vector<double> diff(ode.t.size());
  for (std::size_t k = 0; k < diff.size(); ++k) diff[k] = spectral[k] - ode.y[k];
  r.l2_full = trapezoid_l2(diff, h);
  r.sup_full = sup_abs(diff);

  // x*(t) = x(t + tau): evaluate the compensated reconstruction at
  // t_k - tau for every ODE sample t_k >= tau.
  std::vector<double> grid;
  std::vector<double> ode_y;
  for (std::size_t k = 0; k < ode.t.size(); ++k) {
    const double t = ode.t[k] - tau;
    if (t < 0.0) continue;
    grid.push_back(t);
    ode_y.push_back(ode.y[k]);
  }
  const std::vector<double> shifted = basis::reconstruct(spec, xs, grid);
  std::vector<double> wdiff(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) wdiff[k] = shifted[k] - ode_y[k];
  r.l2_window = trapezoid_l2(wdiff, h);
  r.sup_window = sup_abs(wdiff);
  return r;
}

Discrepancy cross_validate(const modeling::ExperimentConfig& config, double step) {
  modeling::validate(config);
  if (config.noise.kind == modeling::NoiseSpec::Kind::Random) {
    throw ConfigError("noise.kind", "cross-validation needs a deterministic input");
  }
  const filters::FilterDesign design = modeling::design_of(config);
  const double tau = modeling::phase_delay_of(config);
  const SpectralVec g(modeling::signal_spectrum(config).coeffs() + modeling::deterministic_noise(config).coeffs(),
                      config.horizon, "input");
  const modeling::Tone signal = config.signal;
  const modeling::NoiseSpec noise = config.noise;
  auto input = [signal, noise](double t) { return signal.value(t) + noise.value(t); };
  return compare(filters::ntf_factored(design, config.horizon, config.truncation), realize(design), g, input, tau,
                 config.shift_mode, step);
}

}  // namespace specfilt::oracle
