#include "specfilt/blocks.hpp"

#include "specfilt/basis.hpp"
#include "specfilt/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace specfilt::blocks {

namespace {

constexpr double kPi = std::numbers::pi;
const double kSqrt2 = std::sqrt(2.0);

double parity(std::size_t k) { return (k % 2 == 0) ? 1.0 : -1.0; }

void check_dims(double horizon, std::size_t order) {
  if (!(horizon > 0.0) || !std::isfinite(horizon)) throw std::invalid_argument("blocks: horizon must be positive");
  if (order < 1) throw std::invalid_argument("blocks: order must be at least 1");
}

Eigen::Index idx(std::size_t i) { return static_cast<Eigen::Index>(i); }

// sin(i pi x / T) and cos(i pi x / T) for i = 0..L-1.
struct Harmonics {
  std::vector<double> sin;
  std::vector<double> cos;
};

Harmonics harmonics(double horizon, std::size_t order, double x) {
  Harmonics h{std::vector<double>(order), std::vector<double>(order)};
  const double ratio = x / horizon;
  for (std::size_t i = 0; i < order; ++i) {
    const double arg = static_cast<double>(i) * kPi * ratio;
    h.sin[i] = std::sin(arg);
    h.cos[i] = std::cos(arg);
  }
  return h;
}

}  // namespace

BlockMatrix derivative_matrix(double horizon, std::size_t order) {
  check_dims(horizon, order);
  const double T = horizon;
  Matrix P(idx(order), idx(order));
  P(0, 0) = 1.0 / T;
  for (std::size_t i = 1; i < order; ++i) {
    P(idx(i), 0) = kSqrt2 / T;
    P(0, idx(i)) = parity(i) * kSqrt2 / T;
    P(idx(i), idx(i)) = 2.0 / T;
  }
  for (std::size_t i = 1; i < order; ++i) {
    const double ii = static_cast<double>(i) * static_cast<double>(i);
    for (std::size_t j = 1; j < order; ++j) {
      if (i == j) continue;
      const double jj = static_cast<double>(j) * static_cast<double>(j);
      P(idx(i), idx(j)) = 2.0 * (ii - parity(i + j) * jj) / (T * (ii - jj));
    }
  }
  return BlockMatrix(std::move(P), horizon, BlockKind::Derivative);
}

BlockMatrix integral_matrix(double horizon, std::size_t order) {
  check_dims(horizon, order);
  const double T = horizon;
  Matrix Pi = Matrix::Zero(idx(order), idx(order));
  Pi(0, 0) = T / 2.0;
  for (std::size_t i = 1; i < order; ++i) {
    const double di = static_cast<double>(i);
    const double v = kSqrt2 * T * (1.0 - parity(i)) / (di * di * kPi * kPi);
    Pi(0, idx(i)) = v;
    Pi(idx(i), 0) = -v;
  }
  for (std::size_t i = 1; i < order; ++i) {
    const double ii = static_cast<double>(i) * static_cast<double>(i);
    for (std::size_t j = i + 1; j < order; ++j) {
      const double jj = static_cast<double>(j) * static_cast<double>(j);
      const double v = 2.0 * T * (parity(i + j) - 1.0) / ((ii - jj) * kPi * kPi);
      Pi(idx(i), idx(j)) = v;
      Pi(idx(j), idx(i)) = -v;
    }
  }
  return BlockMatrix(std::move(Pi), horizon, BlockKind::Integral);
}

BlockMatrix indicator_gain_matrix(double horizon, std::size_t order, double cut) {
  check_dims(horizon, order);
  if (!(cut >= 0.0 && cut <= horizon)) throw std::invalid_argument("indicator_gain_matrix: cut point outside [0, T]");
  const double T = horizon;
  if (cut == T) return BlockMatrix(Matrix::Identity(idx(order), idx(order)), horizon, BlockKind::IndicatorGain, cut);
  if (cut == 0.0) return BlockMatrix(Matrix::Zero(idx(order), idx(order)), horizon, BlockKind::IndicatorGain, cut);

  const Harmonics h = harmonics(T, order, cut);
  Matrix A(idx(order), idx(order));
  A(0, 0) = cut / T;
  for (std::size_t i = 1; i < order; ++i) {
    const double di = static_cast<double>(i);
    const double v = kSqrt2 * h.sin[i] / (di * kPi);
    A(0, idx(i)) = v;
    A(idx(i), 0) = v;
    A(idx(i), idx(i)) = cut / T + std::sin(2.0 * di * kPi * cut / T) / (2.0 * di * kPi);
  }
  for (std::size_t i = 1; i < order; ++i) {
    const double di = static_cast<double>(i);
    for (std::size_t j = i + 1; j < order; ++j) {
      const double dj = static_cast<double>(j);
      const double v = 2.0 / ((di * di - dj * dj) * kPi) * (di * h.sin[i] * h.cos[j] - dj * h.cos[i] * h.sin[j]);
      A(idx(i), idx(j)) = v;
      A(idx(j), idx(i)) = v;
    }
  }
  return BlockMatrix(std::move(A), horizon, BlockKind::IndicatorGain, cut);
}

BlockMatrix shift_matrix_natural(double horizon, std::size_t order, double shift) {
  check_dims(horizon, order);
  if (!(std::abs(shift) < horizon)) throw std::invalid_argument("shift_matrix_natural: |shift| must be below T");
  const double T = horizon;
  const Harmonics h = harmonics(T, order, shift);
  Matrix S = Matrix::Zero(idx(order), idx(order));
  S(0, 0) = 1.0;
  for (std::size_t i = 1; i < order; ++i) {
    const double di = static_cast<double>(i);
    S(0, idx(i)) = kSqrt2 * (parity(i) - 1.0) * h.sin[i] / (di * kPi);
    S(idx(i), idx(i)) = h.cos[i];
  }
  for (std::size_t i = 1; i < order; ++i) {
    const double di = static_cast<double>(i);
    for (std::size_t j = 1; j < order; ++j) {
      if (i == j || (i + j) % 2 == 0) continue;  // 1 - (-1)^{i+j} vanishes for even i + j
      const double dj = static_cast<double>(j);
      S(idx(i), idx(j)) = 2.0 * dj * (1.0 - parity(i + j)) * h.sin[j] / ((di * di - dj * dj) * kPi);
    }
  }
  return BlockMatrix(std::move(S), horizon, BlockKind::ShiftNatural, shift);
}

BlockMatrix shift_matrix_zero_ext(double horizon, std::size_t order, double shift) {
  check_dims(horizon, order);
  if (shift == 0.0) throw std::invalid_argument("shift_matrix_zero_ext: zero shift, use the identity");
  if (!(std::abs(shift) < horizon)) throw std::invalid_argument("shift_matrix_zero_ext: |shift| must be below T");
  const double T = horizon;
  const double tau = shift;
  const Harmonics h = harmonics(T, order, tau);
  Matrix S(idx(order), idx(order));

  if (tau > 0.0) {
    const double keep = (T - tau) / T;
    S(0, 0) = keep;
    for (std::size_t i = 1; i < order; ++i) {
      const double di = static_cast<double>(i);
      S(0, idx(i)) = -kSqrt2 / (di * kPi) * h.sin[i];
      S(idx(i), 0) = kSqrt2 / (di * kPi) * std::sin(di * kPi * (T - tau) / T);
      S(idx(i), idx(i)) = keep * h.cos[i] - h.sin[i] / (di * kPi);
    }
    for (std::size_t i = 1; i < order; ++i) {
      const double di = static_cast<double>(i);
      for (std::size_t j = 1; j < order; ++j) {
        if (i == j) continue;
        const double dj = static_cast<double>(j);
        S(idx(i), idx(j)) = 2.0 / ((di * di - dj * dj) * kPi) * (dj * h.sin[j] - di * parity(i + j) * h.sin[i]);
      }
    }
    return BlockMatrix(std::move(S), horizon, BlockKind::ShiftZeroPos, shift);
  }

  const double keep = (T + tau) / T;
  S(0, 0) = keep;
  for (std::size_t i = 1; i < order; ++i) {
    const double di = static_cast<double>(i);
    S(0, idx(i)) = kSqrt2 / (di * kPi) * std::sin(di * kPi * (T + tau) / T);
    S(idx(i), 0) = kSqrt2 / (di * kPi) * h.sin[i];
    S(idx(i), idx(i)) = keep * h.cos[i] + h.sin[i] / (di * kPi);
  }
  for (std::size_t i = 1; i < order; ++i) {
    const double di = static_cast<double>(i);
    for (std::size_t j = 1; j < order; ++j) {
      if (i == j) continue;
      const double dj = static_cast<double>(j);
      S(idx(i), idx(j)) = 2.0 / ((di * di - dj * dj) * kPi) * (di * h.sin[i] - dj * parity(i + j) * h.sin[j]);
    }
  }
  return BlockMatrix(std::move(S), horizon, BlockKind::ShiftZeroNeg, shift);
}

BlockMatrix identity_matrix(double horizon, std::size_t order) {
  check_dims(horizon, order);
  return BlockMatrix(Matrix::Identity(idx(order), idx(order)), horizon, BlockKind::Identity);
}

double matrix_element_oracle(BlockKind kind, double horizon, std::size_t i, std::size_t j, double param) {
  check_dims(horizon, 1);
  const double T = horizon;
  const basis::BasisSpec spec{T, std::max(i, j) + 1, basis::Extension::Natural};
  const double freq = static_cast<double>(i + j + 1) * kPi / T;
  auto qi = [&](double t) { return basis::eval(spec, i, t); };
  auto qj = [&](double t) { return basis::eval(spec, j, t); };

  switch (kind) {
    case BlockKind::Identity:
      return quadrature::integrate([&](double t) { return qi(t) * qj(t); }, 0.0, T, freq);
    case BlockKind::Derivative:
      return qi(0.0) * qj(0.0) +
             quadrature::integrate([&](double t) { return qi(t) * basis::eval_derivative(spec, j, t); }, 0.0, T,
                                   freq);
    case BlockKind::Integral: {
      const double inner_freq = static_cast<double>(j + 1) * kPi / T;
      auto running = [&](double t) {
        const std::size_t panels = 2 * quadrature::panels_for(0.0, t, inner_freq);
        return quadrature::integrate_fixed(qj, 0.0, t, panels);
      };
      return quadrature::integrate([&](double t) { return qi(t) * running(t); }, 0.0, T, freq);
    }
    case BlockKind::IndicatorGain:
      if (!(param >= 0.0 && param <= T)) throw std::invalid_argument("oracle: cut point outside [0, T]");
      return quadrature::integrate([&](double t) { return qi(t) * qj(t); }, 0.0, param, freq);
    case BlockKind::ShiftNatural:
      return quadrature::integrate([&](double t) { return qi(t) * qj(t + param); }, 0.0, T, freq);
    case BlockKind::ShiftZeroPos:
    case BlockKind::ShiftZeroNeg: {
      // q(j, t + tau) vanishes unless t + tau lies in [0, T].
      const double lo = std::max(0.0, -param);
      const double hi = std::min(T, T - param);
      if (hi <= lo) return 0.0;
      return quadrature::integrate([&](double t) { return qi(t) * qj(t + param); }, lo, hi, freq);
    }
    case BlockKind::Composite:
      break;
  }
  throw std::invalid_argument("matrix_element_oracle: composite blocks have no defining integral");
}

}  // namespace specfilt::blocks
