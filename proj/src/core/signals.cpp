#include "specfilt/signals.hpp"

#include "specfilt/random.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace specfilt::signals {

namespace {

constexpr double kPi = std::numbers::pi;

void check(double omega, double horizon, std::size_t order) {
  if (!(omega > 0.0) || !std::isfinite(omega)) throw std::invalid_argument("signals: omega must be positive");
  if (!(horizon > 0.0)) throw std::invalid_argument("signals: horizon must be positive");
  if (order < 1) throw std::invalid_argument("signals: order must be at least 1");
}

double parity(std::size_t k) { return (k % 2 == 0) ? 1.0 : -1.0; }

}  // namespace

bool is_resonant(std::size_t index, double omega, double horizon) {
  const double a = static_cast<double>(index) * kPi;
  const double b = horizon * omega;
  return std::abs(a - b) <= kResonanceTolerance * std::max(std::abs(a), std::abs(b));
}

SpectralVec spectral_sin(double omega, double horizon, std::size_t order) {
  check(omega, horizon, order);
  const double T = horizon;
  const double Tw = T * omega;
  const double cos_tw = std::cos(Tw);
  Vector F(static_cast<Eigen::Index>(order));
  F(0) = (1.0 - cos_tw) / (std::sqrt(T) * omega);
  const double scale = T * std::sqrt(2.0 * T) * omega;
  for (std::size_t i = 1; i < order; ++i) {
    const auto k = static_cast<Eigen::Index>(i);
    if (is_resonant(i, omega, T)) {
      F(k) = 0.0;
      continue;
    }
    const double di = static_cast<double>(i);
    F(k) = scale * (parity(i) * cos_tw - 1.0) / (di * di * kPi * kPi - Tw * Tw);
  }
  return SpectralVec(std::move(F), T, "sin");
}

SpectralVec spectral_cos(double omega, double horizon, std::size_t order) {
  check(omega, horizon, order);
  const double T = horizon;
  const double Tw = T * omega;
  const double sin_tw = std::sin(Tw);
  Vector F(static_cast<Eigen::Index>(order));
  F(0) = sin_tw / (std::sqrt(T) * omega);
  const double scale = T * std::sqrt(2.0 * T) * omega * sin_tw;
  for (std::size_t i = 1; i < order; ++i) {
    const auto k = static_cast<Eigen::Index>(i);
    if (is_resonant(i, omega, T)) {
      F(k) = std::sqrt(T / 2.0);
      continue;
    }
    const double di = static_cast<double>(i);
    F(k) = scale * parity(i + 1) / (di * di * kPi * kPi - Tw * Tw);
  }
  return SpectralVec(std::move(F), T, "cos");
}

SpectralVec spectral_white_noise(double sigma, double horizon, std::size_t order, std::uint64_t seed,
                                 std::uint64_t realization) {
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) throw std::invalid_argument("white noise: sigma must be >= 0");
  if (order < 1) throw std::invalid_argument("white noise: order must be at least 1");
  Vector Q = Vector::Zero(static_cast<Eigen::Index>(order));
  if (sigma > 0.0) {
    rng::fill_standard_normal(seed, realization, std::span<double>(Q.data(), order));
    Q *= sigma;
  }
  return SpectralVec(std::move(Q), horizon, "white-noise");
}

SpectralVec combine(std::span<const WeightedTerm> terms, std::string label) {
  if (terms.empty()) throw std::invalid_argument("combine: no terms");
  const SpectralVec& first = *terms.front().vec;
  Vector out = Vector::Zero(first.coeffs().size());
  for (const auto& term : terms) {
    if (term.vec->size() != first.size() || term.vec->horizon() != first.horizon()) {
      throw std::invalid_argument("combine: terms disagree on horizon or length");
    }
    out += term.weight * term.vec->coeffs();
  }
  return SpectralVec(std::move(out), first.horizon(), std::move(label));
}

}  // namespace specfilt::signals
