#include "specfilt/quadrature.hpp"

#include "specfilt/error.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace specfilt::quadrature {

Rule gauss_legendre(std::size_t points) {
  if (points == 0) throw std::invalid_argument("gauss_legendre: zero points");
  Rule rule;
  rule.nodes.resize(points);
  rule.weights.resize(points);
  const auto n = static_cast<double>(points);
  for (std::size_t k = 0; k < (points + 1) / 2; ++k) {
    // Tricomi initial guess, then Newton on P_n.
    double x = std::cos(std::numbers::pi * (static_cast<double>(k) + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (std::size_t m = 2; m <= points; ++m) {
        const auto md = static_cast<double>(m);
        const double p2 = ((2.0 * md - 1.0) * x * p1 - (md - 1.0) * p0) / md;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[k] = -x;
    rule.nodes[points - 1 - k] = x;
    rule.weights[k] = w;
    rule.weights[points - 1 - k] = w;
  }
  if (points % 2 == 1) rule.nodes[points / 2] = 0.0;
  return rule;
}

const Rule& default_rule() {
  static const Rule rule = gauss_legendre(16);
  return rule;
}

std::size_t panels_for(double a, double b, double max_frequency, double nodes_per_period) {
  const double length = std::abs(b - a);
  const double periods = length * std::abs(max_frequency) / (2.0 * std::numbers::pi);
  const double nodes = std::max(periods * nodes_per_period, 1.0);
  const auto per_panel = static_cast<double>(default_rule().nodes.size());
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(nodes / per_panel)));
}

CompositeNodes composite_nodes(double a, double b, std::size_t panels) {
  const Rule& rule = default_rule();
  CompositeNodes out;
  out.points.reserve(panels * rule.nodes.size());
  out.weights.reserve(panels * rule.nodes.size());
  const double h = (b - a) / static_cast<double>(panels);
  for (std::size_t p = 0; p < panels; ++p) {
    const double left = a + h * static_cast<double>(p);
    const double mid = left + 0.5 * h;
    for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
      out.points.push_back(mid + 0.5 * h * rule.nodes[k]);
      out.weights.push_back(0.5 * h * rule.weights[k]);
    }
  }
  return out;
}

double integrate_fixed(const std::function<double(double)>& f, double a, double b, std::size_t panels) {
  if (a == b) return 0.0;
  const Rule& rule = default_rule();
  const double h = (b - a) / static_cast<double>(panels);
  double total = 0.0;
  for (std::size_t p = 0; p < panels; ++p) {
    const double mid = a + h * (static_cast<double>(p) + 0.5);
    double panel = 0.0;
    for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
      panel += rule.weights[k] * f(mid + 0.5 * h * rule.nodes[k]);
    }
    total += 0.5 * h * panel;
  }
  return total;
}

double integrate(const std::function<double(double)>& f, double a, double b, double max_frequency,
                 double tolerance) {
  if (a == b) return 0.0;
  std::size_t panels = panels_for(a, b, max_frequency);
  double coarse = integrate_fixed(f, a, b, panels);
  for (int level = 0; level < 8; ++level) {
    panels *= 2;
    const double fine = integrate_fixed(f, a, b, panels);
    if (std::abs(fine - coarse) <= tolerance) return fine;
    coarse = fine;
  }
  throw NumericError("quadrature did not converge on [" + std::to_string(a) + ", " + std::to_string(b) +
                     "]");
}

}  // namespace specfilt::quadrature
