#include "specfilt/blocks.hpp"
#include "specfilt/error.hpp"
#include "specfilt/filters.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <variant>

using namespace specfilt;
using namespace specfilt::filters;

namespace {

constexpr double kPi = std::numbers::pi;

FilterDesign make(Family f, int n, double cutoff = 1.0, double ripple = 0.1, PassKind pass = PassKind::LowPass) {
  return FilterDesign::make(DesignParams{f, n, ripple, cutoff, pass});
}

bool contains(const std::vector<Complex>& poles, Complex z, double tol = 1e-14) {
  for (const auto& p : poles) {
    if (std::abs(p - z) < tol) return true;
  }
  return false;
}

double rel_frobenius(const Matrix& a, const Matrix& b) { return (a - b).norm() / b.norm(); }

}  // namespace

TEST_SUITE("filters") {
  TEST_CASE("Butterworth poles") {
    const auto p3 = butterworth_poles(3);
    REQUIRE(p3.size() == 3);
    CHECK(contains(p3, {-1.0, 0.0}));
    CHECK(contains(p3, {-0.5, std::sqrt(3.0) / 2.0}));
    CHECK(contains(p3, {-0.5, -std::sqrt(3.0) / 2.0}));
    CHECK(p3[1].imag() == 0.0);

    const auto p2 = butterworth_poles(2);
    CHECK(contains(p2, {-1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)}));
    CHECK(contains(p2, {-1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0)}));

    const auto p1 = butterworth_poles(1);
    REQUIRE(p1.size() == 1);
    CHECK(p1[0] == Complex(-1.0, 0.0));
  }

  TEST_CASE("Chebyshev I first order") {
    const auto ps = chebyshev1_poles(1, 0.1);
    CHECK(ps.lambda == doctest::Approx(std::log(10.0 + std::sqrt(101.0))).epsilon(1e-15));
    CHECK(ps.poles[0].real() == doctest::Approx(-10.0).epsilon(1e-14));
    CHECK(ps.poles[0].imag() == 0.0);
    CHECK(ps.gamma == doctest::Approx(0.1).epsilon(1e-15));
    // eps^2 T_1^2(-i s) + 1 = 0 with T_1(x) = x
    const Complex x = Complex(0.0, -1.0) * ps.poles[0];
    CHECK(std::abs(0.01 * x * x + 1.0) < 1e-12);
  }

  TEST_CASE("odd Chebyshev orders have the expected real pole") {
    for (int n : {3, 5, 7}) {
      const auto c1 = chebyshev1_poles(n, 0.1);
      const auto c2 = chebyshev2_poles(n, 0.1);
      CAPTURE(n);
      CHECK(c1.poles[static_cast<std::size_t>(n / 2)] == Complex(-c1.alpha, 0.0));
      CHECK(c2.poles[static_cast<std::size_t>(n / 2)] == Complex(-1.0 / c2.alpha, 0.0));
    }
  }

  TEST_CASE("Chebyshev II poles are reciprocals of Chebyshev I poles") {
    for (int n = 1; n <= 8; ++n) {
      for (double eps : {0.05, 0.1, 0.7}) {
        const auto c1 = chebyshev1_poles(n, eps);
        const auto c2 = chebyshev2_poles(n, eps);
        for (std::size_t k = 0; k < c1.poles.size(); ++k) CHECK(std::abs(c1.poles[k] * c2.poles[k] - 1.0) < 1e-13);
      }
    }
  }

  TEST_CASE("Chebyshev II second order modulus") {
    const auto c2 = chebyshev2_poles(2, 0.1);
    const double rho2 = std::pow(c2.alpha * pole_a(2, 1), 2) + std::pow(c2.beta * pole_b(2, 1), 2);
    for (const auto& s : c2.poles) CHECK(std::norm(s) == doctest::Approx(1.0 / rho2).epsilon(1e-14));
  }

  TEST_CASE("design validation names the field") {
    try {
      FilterDesign::make(DesignParams{Family::LinkwitzRiley, 3});
      FAIL("odd Linkwitz-Riley order accepted");
    } catch (const ConfigError& e) {
      CHECK(e.field() == "order");
    }
    CHECK_THROWS_AS(FilterDesign::make(DesignParams{Family::Butterworth, 0}), ConfigError);
    CHECK_THROWS_AS(FilterDesign::make(DesignParams{Family::Butterworth, 2, 0.1, -1.0}), ConfigError);
    CHECK_THROWS_AS(FilterDesign::make(DesignParams{Family::ChebyshevI, 2, 0.0}), ConfigError);
  }

  TEST_CASE("family and pass names") {
    CHECK(parse_family("bw") == Family::Butterworth);
    CHECK(parse_family("lr") == Family::LinkwitzRiley);
    CHECK(parse_family("ci") == Family::ChebyshevI);
    CHECK(parse_family("cii") == Family::ChebyshevII);
    CHECK(parse_pass("high") == PassKind::HighPass);
    CHECK_THROWS(parse_family("elliptic"));
  }

  TEST_CASE("Butterworth magnitude at the cutoff") {
    for (int n = 2; n <= 6; ++n) {
      CHECK(std::abs(std::abs(transfer_eval(make(Family::Butterworth, n), {0.0, 1.0})) - 1.0 / std::sqrt(2.0)) < 1e-12);
    }
    CHECK(std::abs(transfer_eval(make(Family::Butterworth, 3), 0.0) - 1.0) < 1e-14);
    CHECK(std::abs(std::abs(transfer_eval(make(Family::LinkwitzRiley, 4), {0.0, 1.0})) - 0.5) < 1e-12);
  }

  TEST_CASE("gains of the four families") {
    CHECK(make(Family::Butterworth, 4).gain() == 1.0);
    CHECK(make(Family::LinkwitzRiley, 4).gain() == 1.0);
    const auto c1 = make(Family::ChebyshevI, 4);
    CHECK(c1.gain() == doctest::Approx(1.0 / c1.gamma()).epsilon(1e-15));
    const auto c2 = make(Family::ChebyshevII, 4);
    CHECK(c2.gain() == doctest::Approx(c2.gamma()).epsilon(1e-15));
    CHECK(c2.gamma() == doctest::Approx(8.0 * 0.1).epsilon(1e-15));
  }

  TEST_CASE("real factors") {
    const auto f2 = real_factors(make(Family::Butterworth, 2));
    REQUIRE(f2.size() == 1);
    const auto q2 = std::get<QuadraticFactor>(f2[0]);
    CHECK(q2.a == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK(q2.b == doctest::Approx(1.0).epsilon(1e-15));

    const auto f3 = real_factors(make(Family::Butterworth, 3));
    REQUIRE(f3.size() == 2);
    CHECK(std::get<QuadraticFactor>(f3[0]).a == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(std::get<QuadraticFactor>(f3[0]).b == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(std::get<LinearFactor>(f3[1]).a == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(degree(f3[0]) == 2);
    CHECK(degree(f3[1]) == 1);

    const auto d = make(Family::ChebyshevII, 2);
    const auto fc = real_factors(d);
    REQUIRE(fc.size() == 1);
    const double a1 = pole_a(2, 1), b1 = pole_b(2, 1);
    const double rho2 = std::pow(d.alpha() * a1, 2) + std::pow(d.beta() * b1, 2);
    CHECK(std::get<QuadraticFactor>(fc[0]).a == doctest::Approx(2.0 * d.alpha() * a1 / rho2).epsilon(1e-14));
    CHECK(std::get<QuadraticFactor>(fc[0]).b == doctest::Approx(1.0 / rho2).epsilon(1e-14));

    const auto lr = real_factors(make(Family::LinkwitzRiley, 6));
    const auto bw = real_factors(make(Family::Butterworth, 3));
    REQUIRE(lr.size() == 2 * bw.size());
  }

  TEST_CASE("factored operator shape") {
    const auto op = ntf_factored(make(Family::Butterworth, 3, 40.0 * kPi), 1.0, 64);
    CHECK(op.operand == Operand::ScaledP);
    CHECK(op.cutoff == 40.0 * kPi);
    CHECK(op.denominator_degree() == 3);
    CHECK(op.numerator.empty());
    const auto hp = ntf_factored(make(Family::Butterworth, 3, 2.0, 0.1, PassKind::HighPass), 1.0, 64);
    CHECK(hp.operand == Operand::ScaledIntegral);
  }

  TEST_CASE("identity operator materializes to E") {
    CHECK(ntf_materialize(identity_operator(1.0, 32)).data() == Matrix::Identity(32, 32));
    const PreparedOperator id(identity_operator(1.0, 8));
    const Vector x = Vector::LinSpaced(8, -1.0, 1.0);
    CHECK(id.apply(x) == x);
  }

  TEST_CASE("real and complex factorizations agree for Butterworth n = 3") {
    const auto d = make(Family::Butterworth, 3, 40.0 * kPi);
    const Matrix w = ntf_materialize(ntf_factored(d, 1.0, 128)).data();
    CHECK(rel_frobenius(w, ntf_materialize_complex(d, 1.0, 128)) < 1e-8);
  }

  TEST_CASE("Linkwitz-Riley is the Butterworth operator squared") {
    const Matrix lr = ntf_materialize(ntf_factored(make(Family::LinkwitzRiley, 4, 40.0 * kPi), 1.0, 128)).data();
    const Matrix bw = ntf_materialize(ntf_factored(make(Family::Butterworth, 2, 40.0 * kPi), 1.0, 128)).data();
    CHECK(rel_frobenius(lr, bw * bw) < 1e-8);
  }

  TEST_CASE("prepared solves match the materialized matrix") {
    const auto op = ntf_factored(make(Family::ChebyshevI, 5, 40.0 * kPi), 1.0, 96);
    const PreparedOperator prepared(op);
    const Matrix w = ntf_materialize(op).data();
    const Vector g = Vector::LinSpaced(96, 1.0, -0.5);
    CHECK((prepared.apply(g) - w * g).cwiseAbs().maxCoeff() < 1e-12);
  }

  TEST_CASE("singular factor is reported by index") {
    FactoredOperator op;
    op.denominator = {QuadraticFactor{1.0, 1.0}, LinearFactor{0.0}};
    op.operand = Operand::P;
    op.order = 4;
    Matrix zero = Matrix::Zero(4, 4);
    try {
      ntf_materialize(op, zero);
      FAIL("singular factor not detected");
    } catch (const NumericError& e) {
      CHECK(std::string(e.what()).find("factor 1") != std::string::npos);
    }
  }

  TEST_CASE("phase delay") {
    CHECK(phase_delay(make(Family::Butterworth, 1), 1.0) == doctest::Approx(kPi / 4.0).epsilon(1e-15));
    for (Family f : {Family::Butterworth, Family::ChebyshevI, Family::ChebyshevII}) {
      const double t = phase_delay(make(f, 4), 1e-6);
      CHECK(std::isfinite(t));
      CHECK(t == doctest::Approx(group_delay(make(f, 4), 0.0)).epsilon(1e-6));
    }
    CHECK_THROWS_AS(phase_delay(make(Family::Butterworth, 2), 0.0), std::invalid_argument);
  }

  TEST_CASE("phase lag is unwrapped") {
    // n = 6 Butterworth passes 3 pi / 2 of lag well above the cutoff.
    const double lag = phase_lag(make(Family::Butterworth, 6), 20.0);
    CHECK(lag > kPi);
    CHECK(lag < 3.0 * kPi);
  }

  TEST_CASE("group delay") {
    const auto bw1 = make(Family::Butterworth, 1);
    for (double w : {0.0, 0.5, 2.0}) CHECK(group_delay(bw1, w) == doctest::Approx(1.0 / (1.0 + w * w)).epsilon(1e-14));
    CHECK(group_delay(make(Family::Butterworth, 2), 0.0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  }

  TEST_CASE("group delay is the derivative of the phase lag") {
    for (Family f : {Family::Butterworth, Family::LinkwitzRiley, Family::ChebyshevI, Family::ChebyshevII}) {
      for (double cutoff : {1.0, 40.0 * kPi}) {
        const auto d = make(f, 4, cutoff);
        for (double w : {1.0, 10.0 * kPi}) {
          const double h = 1e-5 * w;
          const double fd = (phase_lag(d, w + h) - phase_lag(d, w - h)) / (2.0 * h);
          CAPTURE(std::string(to_string(f)));
          CAPTURE(w);
          CHECK(group_delay(d, w) == doctest::Approx(fd).epsilon(1e-6));
        }
      }
    }
  }

  TEST_CASE("characteristic polynomial vanishes at the poles") {
    for (Family f : {Family::Butterworth, Family::ChebyshevI, Family::ChebyshevII}) {
      const auto d = make(f, 5);
      for (const auto& s : d.poles()) CHECK(std::abs(characteristic_polynomial(d, s)) < 1e-12);
      CHECK(std::abs(characteristic_polynomial(d, 3.0)) > 1.0);
    }
  }

  TEST_CASE("high-pass response") {
    const auto hp = make(Family::Butterworth, 3, 1.0, 0.1, PassKind::HighPass);
    CHECK(std::abs(transfer_eval(hp, {0.0, 1e6})) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(std::abs(transfer_eval(hp, {0.0, 1e-3})) < 1e-8);
  }
}
