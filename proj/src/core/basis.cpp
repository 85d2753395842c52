#include "specfilt/basis.hpp"

#include "specfilt/error.hpp"
#include "specfilt/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace specfilt::basis {

namespace {

bool outside(const BasisSpec& spec, double t) {
  return spec.extension == Extension::Zero && (t < 0.0 || t > spec.horizon);
}

}  // namespace

void BasisSpec::validate() const {
  if (!(horizon > 0.0) || !std::isfinite(horizon)) throw std::invalid_argument("basis: horizon must be positive");
  if (order < 1) throw std::invalid_argument("basis: order must be at least 1");
}

double eval(const BasisSpec& spec, std::size_t index, double t) {
  if (index >= spec.order) {
    throw std::out_of_range("basis index " + std::to_string(index) + " out of range for order " +
                            std::to_string(spec.order));
  }
  if (outside(spec, t)) return 0.0;
  if (index == 0) return 1.0 / std::sqrt(spec.horizon);
  return std::sqrt(2.0 / spec.horizon) *
         std::cos(static_cast<double>(index) * std::numbers::pi * t / spec.horizon);
}

double eval_derivative(const BasisSpec& spec, std::size_t index, double t) {
  if (index >= spec.order) throw std::out_of_range("basis index out of range");
  if (index == 0 || outside(spec, t)) return 0.0;
  const double k = static_cast<double>(index) * std::numbers::pi / spec.horizon;
  return -std::sqrt(2.0 / spec.horizon) * k * std::sin(k * t);
}

double reconstruct_at(const BasisSpec& spec, const Vector& coeffs, double t) {
  if (outside(spec, t)) return 0.0;
  const double scale = std::sqrt(2.0 / spec.horizon);
  const double base = std::numbers::pi * t / spec.horizon;
  double sum = 0.0;
  for (Eigen::Index i = 1; i < coeffs.size(); ++i) {
    sum += coeffs(i) * std::cos(static_cast<double>(i) * base);
  }
  return coeffs(0) / std::sqrt(spec.horizon) + scale * sum;
}

std::vector<double> reconstruct(const BasisSpec& spec, const SpectralVec& coeffs, std::span<const double> grid) {
  spec.validate();
  if (coeffs.size() != spec.order) {
    throw std::invalid_argument("reconstruct: coefficient length " + std::to_string(coeffs.size()) +
                                " does not match basis order " + std::to_string(spec.order));
  }
  std::vector<double> out;
  out.reserve(grid.size());
  for (double t : grid) {
    if (!std::isfinite(t)) throw std::invalid_argument("reconstruct: non-finite grid point");
    out.push_back(reconstruct_at(spec, coeffs.coeffs(), t));
  }
  return out;
}

SpectralVec project_quadrature(const BasisSpec& spec, const std::function<double(double)>& f,
                               ProjectionOptions options) {
  spec.validate();
  const double top = static_cast<double>(spec.order - 1) * std::numbers::pi / spec.horizon;
  std::size_t panels = quadrature::panels_for(0.0, spec.horizon, top + std::abs(options.max_frequency));

  auto project = [&](std::size_t panel_count) {
    const auto nodes = quadrature::composite_nodes(0.0, spec.horizon, panel_count);
    std::vector<double> weighted(nodes.points.size());
    for (std::size_t k = 0; k < nodes.points.size(); ++k) weighted[k] = nodes.weights[k] * f(nodes.points[k]);
    Vector out(static_cast<Eigen::Index>(spec.order));
    for (std::size_t i = 0; i < spec.order; ++i) {
      double sum = 0.0;
      for (std::size_t k = 0; k < nodes.points.size(); ++k) sum += weighted[k] * eval(spec, i, nodes.points[k]);
      out(static_cast<Eigen::Index>(i)) = sum;
    }
    return out;
  };

  Vector coarse = project(panels);
  for (int level = 0; level < 6; ++level) {
    panels *= 2;
    Vector fine = project(panels);
    Eigen::Index worst = 0;
    const double gap = (fine - coarse).cwiseAbs().maxCoeff(&worst);
    if (gap <= options.tolerance) return SpectralVec(std::move(fine), spec.horizon, "quadrature");
    if (level == 5) {
      throw NumericError("project_quadrature: coefficient " + std::to_string(worst) +
                         " did not converge (gap " + std::to_string(gap) + ")");
    }
    coarse = std::move(fine);
  }
  throw NumericError("project_quadrature: unreachable");
}

}  // namespace specfilt::basis
