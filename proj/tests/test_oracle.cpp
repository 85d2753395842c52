#include "specfilt/basis.hpp"
#include "specfilt/error.hpp"
#include "specfilt/oracle.hpp"
#include "specfilt/quadrature.hpp"
#include "specfilt/signals.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

using namespace specfilt;
using filters::Complex;
using filters::Family;

namespace {

constexpr double kPi = std::numbers::pi;

modeling::ExperimentConfig cell(Family family, int order, std::size_t L) {
  modeling::ExperimentConfig c;
  c.design = filters::DesignParams{family, order, 0.1, 40.0 * kPi, filters::PassKind::LowPass};
  c.truncation = L;
  return c;
}

}  // namespace

TEST_SUITE("oracle") {
  TEST_CASE("polynomial expansion") {
    const auto p = oracle::expand_roots({Complex(-1.0, 0.0), Complex(-2.0, 0.0)});
    REQUIRE(p.size() == 3);
    CHECK(p[0] == 2.0);
    CHECK(p[1] == 3.0);
    CHECK(p[2] == 1.0);

    const auto q = oracle::expand_roots({Complex(-0.5, 2.0), Complex(-0.5, -2.0)});
    CHECK(q[0] == doctest::Approx(4.25));
    CHECK(q[1] == doctest::Approx(1.0));

    CHECK_THROWS_AS(oracle::expand_roots({Complex(0.0, 1.0)}), NumericError);
  }

  TEST_CASE("zero input gives zero output") {
    const auto sys = oracle::realize(filters::FilterDesign::make({Family::ChebyshevI, 4, 0.1, 3.0}));
    const auto out = oracle::ode_filter(sys, [](double) { return 0.0; }, 1.0, 1e-3);
    CHECK(std::all_of(out.y.begin(), out.y.end(), [](double v) { return v == 0.0; }));
    CHECK(out.t.size() == 1001);
  }

  TEST_CASE("first-order step response") {
    const auto sys = oracle::realize(filters::FilterDesign::make({Family::Butterworth, 1, 0.1, 1.0}));
    const auto out = oracle::ode_filter(sys, [](double) { return 1.0; }, 1.0, 1e-4);
    double worst = 0.0;
    for (std::size_t k = 0; k < out.t.size(); ++k) worst = std::max(worst, std::abs(out.y[k] - (1.0 - std::exp(-out.t[k]))));
    CHECK(worst < 1e-6);
  }

  TEST_CASE("high-pass realization has a direct feedthrough") {
    const auto d = filters::FilterDesign::make({Family::Butterworth, 2, 0.1, 1.0, filters::PassKind::HighPass});
    const auto sys = oracle::realize(d);
    CHECK(sys.d == doctest::Approx(1.0).epsilon(1e-14));
    const auto out = oracle::ode_filter(sys, [](double) { return 1.0; }, 20.0, 1e-3);
    CHECK(std::abs(out.y.back()) < 1e-6);
  }

  TEST_CASE("divergent integration is reported") {
    oracle::StateSpace unstable;
    unstable.a = Matrix::Constant(1, 1, 100.0);
    unstable.b = Vector::Ones(1);
    unstable.c = Vector::Ones(1);
    CHECK_THROWS_AS(oracle::ode_filter(unstable, [](double) { return 1.0; }, 1.0, 1e-3), NumericError);
  }

  TEST_CASE("spectral output agrees with the ODE for Butterworth n = 3") {
    const auto d = oracle::cross_validate(cell(Family::Butterworth, 3, 512));
    CHECK(d.l2_full < 1e-2);
    CHECK(d.l2_window < 1e-2);
    CHECK(d.truncation == 512);
  }

  TEST_CASE("gap shrinks with the truncation order") {
    double previous = 1.0;
    for (std::size_t L : {128u, 256u, 512u}) {
      const double gap = oracle::cross_validate(cell(Family::Butterworth, 3, L)).l2_full;
      CAPTURE(L);
      CHECK(gap < previous);
      previous = gap;
    }
  }

  TEST_CASE("Chebyshev gaps at L = 512") {
    CHECK(oracle::cross_validate(cell(Family::ChebyshevII, 2, 512)).l2_full < 1e-2);
    CHECK(oracle::cross_validate(cell(Family::ChebyshevI, 5, 512)).l2_full < 1e-2);
  }

  TEST_CASE("identity filter gap is the reconstruction error") {
    const std::size_t L = 128;
    const auto input = [](double t) { return std::sin(10.0 * kPi * t) + 0.2 * std::cos(95.0 * kPi * t); };
    const auto g1 = signals::spectral_sin(10.0 * kPi, 1.0, L);
    const auto g2 = signals::spectral_cos(95.0 * kPi, 1.0, L);
    const std::vector<signals::WeightedTerm> terms{{1.0, &g1}, {0.2, &g2}};
    const auto g = signals::combine(terms);
    const auto d = oracle::compare(filters::identity_operator(1.0, L), oracle::identity_system(), g, input, 0.0,
                                   modeling::ShiftMode::Natural, 1e-4);
    const basis::BasisSpec spec{1.0, L};
    const double sq = quadrature::integrate(
        [&](double t) {
          const double e = basis::reconstruct_at(spec, g.coeffs(), t) - input(t);
          return e * e;
        },
        0.0, 1.0, static_cast<double>(L) * kPi, 1e-12);
    CHECK(d.l2_full == doctest::Approx(std::sqrt(sq)).epsilon(1e-3));
  }

  TEST_CASE("step halving leaves the output unchanged") {
    const auto design = filters::FilterDesign::make({Family::ChebyshevI, 5, 0.1, 40.0 * kPi});
    const auto sys = oracle::realize(design);
    const auto input = [](double t) { return std::sin(10.0 * kPi * t) + 0.2 * std::sin(78.0 * kPi * t); };
    const auto coarse = oracle::ode_filter(sys, input, 1.0, 2e-5);
    const auto fine = oracle::ode_filter(sys, input, 1.0, 1e-5);
    double worst = 0.0;
    for (std::size_t k = 0; k < coarse.y.size(); ++k) worst = std::max(worst, std::abs(coarse.y[k] - fine.y[2 * k]));
    CHECK(worst < 1e-8);
  }

  TEST_CASE("random noise cannot be cross-validated") {
    auto c = cell(Family::Butterworth, 3, 128);
    c.noise = modeling::NoiseSpec::random_default();
    CHECK_THROWS_AS(oracle::cross_validate(c), ConfigError);
  }
}
