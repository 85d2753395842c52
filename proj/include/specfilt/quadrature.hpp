#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace specfilt::quadrature {

/// Gauss–Legendre nodes and weights on [-1, 1].
struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Computes the n-point rule by Newton iteration on P_n. Cached for the
/// 16-point rule used by the composite integrators below.
Rule gauss_legendre(std::size_t points);
const Rule& default_rule();

/// Number of 16-point panels giving at least `nodes_per_period` nodes per
/// period of the highest angular frequency present on [a, b].
std::size_t panels_for(double a, double b, double max_frequency, double nodes_per_period = 10.0);

/// Fixed composite Gauss–Legendre rule with `panels` equal panels on [a, b].
double integrate_fixed(const std::function<double(double)>& f, double a, double b, std::size_t panels);

/// Composite Gauss–Legendre with panel doubling until two successive
/// estimates differ by at most `tolerance`. Throws NumericError otherwise.
double integrate(const std::function<double(double)>& f, double a, double b, double max_frequency,
                 double tolerance = 1e-12);

/// Nodes and weights of the composite rule on [a, b], for callers that
/// integrate many integrands against the same samples.
struct CompositeNodes {
  std::vector<double> points;
  std::vector<double> weights;
};
CompositeNodes composite_nodes(double a, double b, std::size_t panels);

}  // namespace specfilt::quadrature
