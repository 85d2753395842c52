#pragma once

// Analog filter prototypes (Butterworth, Linkwitz–Riley, Chebyshev I/II),
// their cutoff-scaled transfer functions, and the two-dimensional transfer
// function W as a product of inverse factor matrices over P or P^{-1}.

#include "specfilt/types.hpp"

#include <Eigen/LU>

#include <complex>
#include <cstddef>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace specfilt::filters {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;

enum class Family { Butterworth, LinkwitzRiley, ChebyshevI, ChebyshevII };
enum class PassKind { LowPass, HighPass };

const char* to_string(Family family);
const char* to_string(PassKind pass);
/// Accepts short names (bw, lr, ci, cii) and long ones (butterworth, ...).
/// Throws std::invalid_argument for anything else.
Family parse_family(std::string_view name);
PassKind parse_pass(std::string_view name);

/// A_k = sin((2k - 1) pi / (2n)), B_k = cos((2k - 1) pi / (2n)), k = 1..n.
double pole_a(int order, int k);
double pole_b(int order, int k);

/// s_k = -A_k + i B_k on the unit circle.
std::vector<Complex> butterworth_poles(int order);

struct PoleSet {
  std::vector<Complex> poles;
  double gamma = 1.0;   ///< 2^{n-1} eps
  double lambda = 0.0;  ///< asinh(1/eps) / n
  double alpha = 0.0;   ///< sinh(lambda)
  double beta = 0.0;    ///< cosh(lambda)
};

/// s_k = -alpha A_k + i beta B_k.
PoleSet chebyshev1_poles(int order, double ripple);
/// s_k = 1 / s_k^{CI}; gamma is the numerator constant.
PoleSet chebyshev2_poles(int order, double ripple);

struct DesignParams {
  Family family = Family::Butterworth;
  int order = 1;
  double ripple = 0.1;
  double cutoff = 1.0;  ///< angular cutoff frequency
  PassKind pass = PassKind::LowPass;
};

class FilterDesign {
 public:
  /// Validates and derives poles. Throws ConfigError naming the bad field.
  static FilterDesign make(const DesignParams& params);

  const DesignParams& params() const noexcept { return params_; }
  Family family() const noexcept { return params_.family; }
  int order() const noexcept { return params_.order; }
  double ripple() const noexcept { return params_.ripple; }
  double cutoff() const noexcept { return params_.cutoff; }
  PassKind pass() const noexcept { return params_.pass; }

  /// Unit-cutoff prototype poles, n of them (Linkwitz–Riley lists the
  /// Butterworth n/2 set twice).
  const std::vector<Complex>& poles() const noexcept { return poles_; }
  /// Numerator constant of the prototype: 1 (BW, LR), 1/gamma (CI), gamma (CII).
  double gain() const noexcept { return gain_; }
  double gamma() const noexcept { return cheb_.gamma; }
  double lambda() const noexcept { return cheb_.lambda; }
  double alpha() const noexcept { return cheb_.alpha; }
  double beta() const noexcept { return cheb_.beta; }

  FilterDesign with_cutoff(double cutoff) const;

 private:
  DesignParams params_;
  std::vector<Complex> poles_;
  double gain_ = 1.0;
  PoleSet cheb_;
};

/// Prototype H(z) with unit cutoff.
Complex prototype_eval(const FilterDesign& design, Complex z);

/// H(s / cutoff) for low-pass, H(cutoff / s) for high-pass. Throws
/// NumericError when |denominator| < 1e-30.
Complex transfer_eval(const FilterDesign& design, Complex s);

/// Characteristic polynomial of the prototype (denominator of H(z)),
/// including gamma for Chebyshev I.
Complex characteristic_polynomial(const FilterDesign& design, Complex z);

/// -arg H(i omega), accumulated factor by factor so there is no 2 pi wrap.
double phase_lag(const FilterDesign& design, double omega);

/// tau_phi = -arg H(i Omega) / Omega. Throws std::invalid_argument unless
/// Omega > 0.
double phase_delay(const FilterDesign& design, double omega);

/// tau_g = -d arg H(i omega) / d omega, summed analytically over the poles.
double group_delay(const FilterDesign& design, double omega);

/// Z + a E
struct LinearFactor {
  double a = 0.0;
};
/// Z^2 + a Z + b E
struct QuadraticFactor {
  double a = 0.0;
  double b = 0.0;
};
using Factor = std::variant<QuadraticFactor, LinearFactor>;

int degree(const Factor& factor);

/// What the factor polynomials are evaluated at.
enum class Operand {
  P,              ///< P itself (unit-cutoff prototype)
  ScaledP,        ///< P / cutoff (low-pass)
  ScaledIntegral, ///< cutoff * P^{-1} (high-pass)
};

const char* to_string(Operand operand);

/// W = gain * N_1 ... N_m * (D_1 ... D_k)^{-1}, applied as solves with D_1
/// first. The four families have no numerator factors.
struct FactoredOperator {
  double gain = 1.0;
  std::vector<Factor> denominator;
  std::vector<Factor> numerator;
  Operand operand = Operand::P;
  double cutoff = 1.0;
  double horizon = 1.0;
  std::size_t order = 1;

  int denominator_degree() const;
};

/// Real factors of the prototype denominator from the family formulas:
/// quadratics by ascending k, then the real factor for odd order.
/// Linkwitz–Riley repeats the Butterworth n/2 list.
std::vector<Factor> real_factors(const FilterDesign& design);

FactoredOperator ntf_factored(const FilterDesign& design, double horizon, std::size_t order);

/// Gain 1, no factors: W = E.
FactoredOperator identity_operator(double horizon, std::size_t order);

/// Dense operand matrix for `op` built from the closed-form P or P^{-1}.
Matrix operand_matrix(const FactoredOperator& op);

/// Factor matrices LU-decomposed once and reused for every right-hand side.
class PreparedOperator {
 public:
  explicit PreparedOperator(const FactoredOperator& op);
  PreparedOperator(const FactoredOperator& op, const Matrix& operand);

  std::size_t size() const noexcept { return size_; }
  double gain() const noexcept { return gain_; }

  /// Columns of x are independent right-hand sides.
  Matrix apply(const Matrix& x) const;
  Vector apply(const Vector& x) const;

 private:
  void prepare(const FactoredOperator& op, const Matrix& operand);

  std::size_t size_ = 0;
  double gain_ = 1.0;
  std::vector<Eigen::PartialPivLU<Matrix>> solvers_;
  std::vector<Matrix> numerators_;
};

/// Explicit W. Throws NumericError naming the index of a singular factor.
BlockMatrix ntf_materialize(const FactoredOperator& op);
BlockMatrix ntf_materialize(const FactoredOperator& op, const Matrix& operand);

/// W from the complex linear factors (Z - s_k E)^{-1} in pole order; the
/// real part is returned. Independent of real_factors.
Matrix ntf_materialize_complex(const FilterDesign& design, double horizon, std::size_t order);

}  // namespace specfilt::filters
