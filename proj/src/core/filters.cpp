#include "specfilt/filters.hpp"

#include "specfilt/blocks.hpp"
#include "specfilt/error.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace specfilt::filters {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kPoleProximity = 1e-30;
constexpr double kSingularRcond = 1e-15;

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
  return out;
}

double pole_angle(int order, int k) { return (-kPi + 2.0 * kPi * k) / (2.0 * order); }

// Builds the n poles from the k <= n/2 formula values; the rest are mirrored
// by conjugation and the middle pole of an odd order is exactly real.
template <class Upper, class Middle>
std::vector<Complex> mirrored(int order, Upper upper, Middle middle) {
  std::vector<Complex> poles(static_cast<std::size_t>(order));
  for (int k = 1; k <= order / 2; ++k) {
    const Complex s = upper(k);
    poles[static_cast<std::size_t>(k - 1)] = s;
    poles[static_cast<std::size_t>(order - k)] = std::conj(s);
  }
  if (order % 2 == 1) poles[static_cast<std::size_t>(order / 2)] = Complex(middle(), 0.0);
  return poles;
}

void check_order(int order) {
  if (order < 1) throw std::invalid_argument("filter order must be at least 1");
}

PoleSet chebyshev_params(int order, double ripple) {
  check_order(order);
  if (!(ripple > 0.0) || !std::isfinite(ripple)) throw std::invalid_argument("ripple must be positive");
  PoleSet set;
  set.lambda = std::asinh(1.0 / ripple) / order;
  set.alpha = std::sinh(set.lambda);
  set.beta = std::cosh(set.lambda);
  set.gamma = std::ldexp(ripple, order - 1);
  return set;
}

void solve_in_place(const Eigen::PartialPivLU<Matrix>& lu, Matrix& x) { x = lu.solve(x); }

Matrix factor_matrix(const Factor& factor, const Matrix& z, const Matrix* z2) {
  if (const auto* q = std::get_if<QuadraticFactor>(&factor)) {
    Matrix m = *z2 + q->a * z;
    m.diagonal().array() += q->b;
    return m;
  }
  const auto& l = std::get<LinearFactor>(factor);
  Matrix m = z;
  m.diagonal().array() += l.a;
  return m;
}

bool needs_square(const FactoredOperator& op) {
  auto quad = [](const Factor& f) { return std::holds_alternative<QuadraticFactor>(f); };
  return std::any_of(op.denominator.begin(), op.denominator.end(), quad) ||
         std::any_of(op.numerator.begin(), op.numerator.end(), quad);
}

}  // namespace

const char* to_string(Family family) {
  switch (family) {
    case Family::Butterworth: return "butterworth";
    case Family::LinkwitzRiley: return "linkwitz-riley";
    case Family::ChebyshevI: return "chebyshev1";
    case Family::ChebyshevII: return "chebyshev2";
  }
  return "unknown";
}

const char* to_string(PassKind pass) { return pass == PassKind::LowPass ? "low" : "high"; }

const char* to_string(Operand operand) {
  switch (operand) {
    case Operand::P: return "P";
    case Operand::ScaledP: return "P/cutoff";
    case Operand::ScaledIntegral: return "cutoff*P^-1";
  }
  return "unknown";
}

Family parse_family(std::string_view name) {
  const std::string s = lower(name);
  if (s == "bw" || s == "butterworth") return Family::Butterworth;
  if (s == "lr" || s == "linkwitz-riley" || s == "linkwitzriley") return Family::LinkwitzRiley;
  if (s == "ci" || s == "cheb1" || s == "chebyshev1" || s == "chebyshev-i") return Family::ChebyshevI;
  if (s == "cii" || s == "cheb2" || s == "chebyshev2" || s == "chebyshev-ii") return Family::ChebyshevII;
  throw std::invalid_argument("unknown filter family '" + std::string(name) + "'");
}

PassKind parse_pass(std::string_view name) {
  const std::string s = lower(name);
  if (s == "low" || s == "lowpass" || s == "low-pass") return PassKind::LowPass;
  if (s == "high" || s == "highpass" || s == "high-pass") return PassKind::HighPass;
  throw std::invalid_argument("unknown pass kind '" + std::string(name) + "'");
}

double pole_a(int order, int k) { return std::sin(pole_angle(order, k)); }
double pole_b(int order, int k) { return std::cos(pole_angle(order, k)); }

std::vector<Complex> butterworth_poles(int order) {
  check_order(order);
  return mirrored(
      order, [&](int k) { return Complex(-pole_a(order, k), pole_b(order, k)); }, [] { return -1.0; });
}

PoleSet chebyshev1_poles(int order, double ripple) {
  PoleSet set = chebyshev_params(order, ripple);
  set.poles = mirrored(
      order, [&](int k) { return Complex(-set.alpha * pole_a(order, k), set.beta * pole_b(order, k)); },
      [&] { return -set.alpha; });
  return set;
}

PoleSet chebyshev2_poles(int order, double ripple) {
  PoleSet set = chebyshev_params(order, ripple);
  set.poles = mirrored(
      order,
      [&](int k) {
        const double a = set.alpha * pole_a(order, k);
        const double b = set.beta * pole_b(order, k);
        const double rho2 = a * a + b * b;
        return Complex(-a / rho2, -b / rho2);
      },
      [&] { return -1.0 / set.alpha; });
  return set;
}

FilterDesign FilterDesign::make(const DesignParams& params) {
  if (params.order < 1) throw ConfigError("order", "must be a positive integer");
  if (params.family == Family::LinkwitzRiley && params.order % 2 != 0) {
    throw ConfigError("order", "Linkwitz-Riley order must be even");
  }
  if (!(params.cutoff > 0.0) || !std::isfinite(params.cutoff)) throw ConfigError("cutoff", "must be positive");
  const bool chebyshev = params.family == Family::ChebyshevI || params.family == Family::ChebyshevII;
  if (chebyshev && (!(params.ripple > 0.0) || !std::isfinite(params.ripple))) {
    throw ConfigError("ripple", "must be positive");
  }

  FilterDesign d;
  d.params_ = params;
  switch (params.family) {
    case Family::Butterworth:
      d.poles_ = butterworth_poles(params.order);
      break;
    case Family::LinkwitzRiley: {
      const auto half = butterworth_poles(params.order / 2);
      d.poles_ = half;
      d.poles_.insert(d.poles_.end(), half.begin(), half.end());
      break;
    }
    case Family::ChebyshevI:
      d.cheb_ = chebyshev1_poles(params.order, params.ripple);
      d.poles_ = d.cheb_.poles;
      d.gain_ = 1.0 / d.cheb_.gamma;
      break;
    case Family::ChebyshevII:
      d.cheb_ = chebyshev2_poles(params.order, params.ripple);
      d.poles_ = d.cheb_.poles;
      d.gain_ = d.cheb_.gamma;
      break;
  }
  d.cheb_.poles.clear();
  return d;
}

FilterDesign FilterDesign::with_cutoff(double cutoff) const {
  DesignParams p = params_;
  p.cutoff = cutoff;
  return make(p);
}

Complex characteristic_polynomial(const FilterDesign& design, Complex z) {
  Complex d = design.family() == Family::ChebyshevI ? Complex(design.gamma(), 0.0) : Complex(1.0, 0.0);
  for (const auto& s : design.poles()) d *= (z - s);
  return d;
}

Complex prototype_eval(const FilterDesign& design, Complex z) {
  Complex d(1.0, 0.0);
  for (const auto& s : design.poles()) d *= (z - s);
  if (std::abs(d) < kPoleProximity) throw NumericError("transfer function evaluated at a pole");
  return design.gain() / d;
}

Complex transfer_eval(const FilterDesign& design, Complex s) {
  if (design.pass() == PassKind::LowPass) return prototype_eval(design, s / design.cutoff());
  if (std::abs(s) == 0.0) throw NumericError("high-pass transfer function evaluated at s = 0");
  return prototype_eval(design, design.cutoff() / s);
}

double phase_lag(const FilterDesign& design, double omega) {
  // Each factor (z - s_k) has Re > 0 on the imaginary axis, so atan2 is
  // continuous in omega and the sum needs no unwrapping.
  const double wc = design.cutoff();
  double lag = 0.0;
  for (const auto& s : design.poles()) {
    const Complex z = design.pass() == PassKind::LowPass ? Complex(0.0, omega / wc) : Complex(0.0, -wc / omega);
    lag += std::arg(z - s);
  }
  return lag;
}

double phase_delay(const FilterDesign& design, double omega) {
  if (!(omega > 0.0) || !std::isfinite(omega)) throw std::invalid_argument("phase_delay: omega must be positive");
  return phase_lag(design, omega) / omega;
}

double group_delay(const FilterDesign& design, double omega) {
  if (!(omega > 0.0) && design.pass() == PassKind::HighPass) {
    throw std::invalid_argument("group_delay: omega must be positive for high-pass designs");
  }
  if (omega < 0.0 || !std::isfinite(omega)) throw std::invalid_argument("group_delay: omega must be >= 0");
  const double wc = design.cutoff();
  double tau = 0.0;
  for (const auto& s : design.poles()) {
    const double re = -s.real();
    if (design.pass() == PassKind::LowPass) {
      const double im = omega / wc - s.imag();
      tau += (re / wc) / (re * re + im * im);
    } else {
      const double im = -wc / omega - s.imag();
      tau += re * (wc / (omega * omega)) / (re * re + im * im);
    }
  }
  return tau;
}

int degree(const Factor& factor) { return std::holds_alternative<QuadraticFactor>(factor) ? 2 : 1; }

int FactoredOperator::denominator_degree() const {
  int d = 0;
  for (const auto& f : denominator) d += degree(f);
  return d;
}

std::vector<Factor> real_factors(const FilterDesign& design) {
  const int n = design.order();
  std::vector<Factor> out;
  switch (design.family()) {
    case Family::Butterworth:
      for (int k = 1; k <= n / 2; ++k) out.emplace_back(QuadraticFactor{2.0 * pole_a(n, k), 1.0});
      if (n % 2 == 1) out.emplace_back(LinearFactor{1.0});
      break;
    case Family::LinkwitzRiley: {
      DesignParams half = design.params();
      half.family = Family::Butterworth;
      half.order = n / 2;
      const auto once = real_factors(FilterDesign::make(half));
      out = once;
      out.insert(out.end(), once.begin(), once.end());
      break;
    }
    case Family::ChebyshevI:
    case Family::ChebyshevII: {
      const double alpha = design.alpha();
      const double beta = design.beta();
      const bool inverse = design.family() == Family::ChebyshevII;
      for (int k = 1; k <= n / 2; ++k) {
        const double a = alpha * pole_a(n, k);
        const double b = beta * pole_b(n, k);
        const double rho2 = a * a + b * b;
        if (inverse) {
          out.emplace_back(QuadraticFactor{2.0 * a / rho2, 1.0 / rho2});
        } else {
          out.emplace_back(QuadraticFactor{2.0 * a, rho2});
        }
      }
      if (n % 2 == 1) out.emplace_back(LinearFactor{inverse ? 1.0 / alpha : alpha});
      break;
    }
  }
  return out;
}

FactoredOperator ntf_factored(const FilterDesign& design, double horizon, std::size_t order) {
  if (!(horizon > 0.0)) throw std::invalid_argument("ntf_factored: horizon must be positive");
  if (order < 1) throw std::invalid_argument("ntf_factored: order must be at least 1");
  FactoredOperator op;
  op.gain = design.gain();
  op.denominator = real_factors(design);
  op.operand = design.pass() == PassKind::LowPass ? Operand::ScaledP : Operand::ScaledIntegral;
  op.cutoff = design.cutoff();
  op.horizon = horizon;
  op.order = order;
  return op;
}

FactoredOperator identity_operator(double horizon, std::size_t order) {
  FactoredOperator op;
  op.horizon = horizon;
  op.order = order;
  return op;
}

Matrix operand_matrix(const FactoredOperator& op) {
  switch (op.operand) {
    case Operand::P:
      return blocks::derivative_matrix(op.horizon, op.order).data();
    case Operand::ScaledP:
      return blocks::derivative_matrix(op.horizon, op.order).data() / op.cutoff;
    case Operand::ScaledIntegral:
      return op.cutoff * blocks::integral_matrix(op.horizon, op.order).data();
  }
  throw std::invalid_argument("operand_matrix: unknown operand");
}

PreparedOperator::PreparedOperator(const FactoredOperator& op) {
  if (op.denominator.empty() && op.numerator.empty()) {
    size_ = op.order;
    gain_ = op.gain;
    return;
  }
  prepare(op, operand_matrix(op));
}

PreparedOperator::PreparedOperator(const FactoredOperator& op, const Matrix& operand) { prepare(op, operand); }

void PreparedOperator::prepare(const FactoredOperator& op, const Matrix& operand) {
  if (operand.rows() != operand.cols()) throw std::invalid_argument("PreparedOperator: operand must be square");
  size_ = static_cast<std::size_t>(operand.rows());
  gain_ = op.gain;
  Matrix square;
  if (needs_square(op)) square = operand * operand;
  solvers_.reserve(op.denominator.size());
  for (std::size_t k = 0; k < op.denominator.size(); ++k) {
    Eigen::PartialPivLU<Matrix> lu(factor_matrix(op.denominator[k], operand, &square));
    const double rc = lu.rcond();
    if (!(rc > kSingularRcond)) {
      throw NumericError("factor " + std::to_string(k) + " is singular (rcond " + std::to_string(rc) + ")");
    }
    solvers_.push_back(std::move(lu));
  }
  for (const auto& f : op.numerator) numerators_.push_back(factor_matrix(f, operand, &square));
}

Matrix PreparedOperator::apply(const Matrix& x) const {
  if (static_cast<std::size_t>(x.rows()) != size_) throw std::invalid_argument("PreparedOperator: row mismatch");
  Matrix y = x;
  for (const auto& lu : solvers_) solve_in_place(lu, y);
  for (const auto& m : numerators_) y = m * y;
  y *= gain_;
  return y;
}

Vector PreparedOperator::apply(const Vector& x) const {
  Matrix y = apply(Matrix(x));
  return y.col(0);
}

BlockMatrix ntf_materialize(const FactoredOperator& op) {
  const PreparedOperator prepared(op);
  const auto n = static_cast<Eigen::Index>(op.order);
  const BlockKind kind = op.denominator.empty() && op.numerator.empty() && op.gain == 1.0 ? BlockKind::Identity
                                                                                          : BlockKind::Composite;
  return BlockMatrix(prepared.apply(Matrix(Matrix::Identity(n, n))), op.horizon, kind);
}

BlockMatrix ntf_materialize(const FactoredOperator& op, const Matrix& operand) {
  const PreparedOperator prepared(op, operand);
  const auto n = operand.rows();
  return BlockMatrix(prepared.apply(Matrix(Matrix::Identity(n, n))), op.horizon, BlockKind::Composite);
}

Matrix ntf_materialize_complex(const FilterDesign& design, double horizon, std::size_t order) {
  const FactoredOperator op = ntf_factored(design, horizon, order);
  const ComplexMatrix z = operand_matrix(op).cast<Complex>();
  const auto n = z.rows();
  ComplexMatrix x = ComplexMatrix::Identity(n, n);
  for (std::size_t k = 0; k < design.poles().size(); ++k) {
    ComplexMatrix f = z;
    f.diagonal().array() -= design.poles()[k];
    Eigen::PartialPivLU<ComplexMatrix> lu(f);
    if (!(lu.rcond() > kSingularRcond)) throw NumericError("complex factor " + std::to_string(k) + " is singular");
    x = lu.solve(x);
  }
  return design.gain() * x.real();
}

}  // namespace specfilt::filters
