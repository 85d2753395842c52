#include "specfilt/basis.hpp"
#include "specfilt/quadrature.hpp"
#include "specfilt/signals.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

using namespace specfilt;
using basis::BasisSpec;
using basis::Extension;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_SUITE("basis") {
  TEST_CASE("basis function values") {
    const BasisSpec spec{1.0, 8, Extension::Natural};
    CHECK(basis::eval(spec, 0, 0.37) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(basis::eval(spec, 2, 0.0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK(std::abs(basis::eval(spec, 1, 1.5)) < 1e-15);
    CHECK(basis::eval(spec, 1, 1.25) == doctest::Approx(-1.0).epsilon(1e-14));

    const BasisSpec zero{1.0, 8, Extension::Zero};
    CHECK(basis::eval(zero, 1, 1.5) == 0.0);
    CHECK(basis::eval(zero, 1, 1.25) == 0.0);
    CHECK(basis::eval(zero, 1, -0.25) == 0.0);
  }

  TEST_CASE("non-unit horizon scales the normalisation") {
    const BasisSpec spec{2.0, 4};
    CHECK(basis::eval(spec, 0, 1.3) == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(basis::eval(spec, 3, 0.5) == doctest::Approx(std::cos(3.0 * kPi * 0.25)));
  }

  TEST_CASE("index beyond the truncation is rejected") {
    const BasisSpec spec{1.0, 4};
    CHECK_THROWS_AS(basis::eval(spec, 4, 0.1), std::out_of_range);
    CHECK_THROWS_AS((BasisSpec{0.0, 4}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((BasisSpec{1.0, 0}.validate()), std::invalid_argument);
  }

  TEST_CASE("derivative matches a central difference") {
    const BasisSpec spec{1.0, 8};
    for (std::size_t i = 0; i < 8; ++i) {
      const double t = 0.31;
      const double h = 1e-6;
      const double fd = (basis::eval(spec, i, t + h) - basis::eval(spec, i, t - h)) / (2.0 * h);
      CHECK(basis::eval_derivative(spec, i, t) == doctest::Approx(fd).epsilon(1e-6).scale(1.0));
    }
  }

  TEST_CASE("constant coefficient vector reconstructs the constant one") {
    const double T = 1.5;
    Vector c = Vector::Zero(16);
    c(0) = std::sqrt(T);
    const SpectralVec v(c, T);
    const std::vector<double> grid{0.0, 0.2, 0.75, 1.1, 1.5};
    for (double y : basis::reconstruct(BasisSpec{T, 16}, v, grid)) CHECK(y == doctest::Approx(1.0).epsilon(1e-14));
  }

  TEST_CASE("resonant cosine reconstructs cos at t = 0") {
    const SpectralVec f = signals::spectral_cos(kPi, 1.0, 64);
    CHECK(f[1] == doctest::Approx(std::sqrt(0.5)).epsilon(1e-14));
    CHECK(basis::reconstruct_at(BasisSpec{1.0, 64}, f.coeffs(), 0.0) == doctest::Approx(1.0).epsilon(1e-12));
  }

  TEST_CASE("reconstruct rejects length mismatch and non-finite grids") {
    const SpectralVec f = signals::spectral_sin(10.0 * kPi, 1.0, 8);
    const std::vector<double> grid{0.1};
    CHECK_THROWS_AS(basis::reconstruct(BasisSpec{1.0, 16}, f, grid), std::invalid_argument);
    const std::vector<double> bad{std::nan("")};
    CHECK_THROWS_AS(basis::reconstruct(BasisSpec{1.0, 8}, f, bad), std::invalid_argument);
  }

  TEST_CASE("projection of a basis function is a unit vector") {
    const BasisSpec spec{1.0, 8};
    const auto e3 = basis::project_quadrature(spec, [&](double t) { return basis::eval(spec, 3, t); });
    for (std::size_t i = 0; i < 8; ++i) CHECK(std::abs(e3[i] - (i == 3 ? 1.0 : 0.0)) < 1e-10);

    const auto one = basis::project_quadrature(spec, [](double) { return 1.0; });
    CHECK(std::abs(one[0] - 1.0) < 1e-12);
    for (std::size_t i = 1; i < 8; ++i) CHECK(std::abs(one[i]) < 1e-12);
  }

  TEST_CASE("projection of sin 10 pi t matches the closed form") {
    const BasisSpec spec{1.0, 1024};
    basis::ProjectionOptions opt;
    opt.max_frequency = 10.0 * kPi;
    const auto q = basis::project_quadrature(spec, [](double t) { return std::sin(10.0 * kPi * t); }, opt);
    const auto c = signals::spectral_sin(10.0 * kPi, 1.0, 1024);
    double worst = 0.0;
    for (std::size_t i = 0; i < 1024; ++i) worst = std::max(worst, std::abs(q[i] - c[i]));
    CHECK(worst < 1e-9);

  }

  TEST_CASE("pointwise error of the sin 10 pi t series") {
    // The even extension has a corner at both ends, so the sup error is
    // first order in 1/L there and much smaller inside.
    std::vector<double> grid(1001);
    for (std::size_t k = 0; k < grid.size(); ++k) grid[k] = static_cast<double>(k) / 1000.0;
    auto errors = [&](std::size_t L) {
      const auto y = basis::reconstruct({1.0, L}, signals::spectral_sin(10.0 * kPi, 1.0, L), grid);
      double edge = 0.0, inside = 0.0;
      for (std::size_t k = 0; k < grid.size(); ++k) {
        const double e = std::abs(y[k] - std::sin(10.0 * kPi * grid[k]));
        double& worst = grid[k] < 0.1 || grid[k] > 0.9 ? edge : inside;
        worst = std::max(worst, e);
      }
      return std::pair{edge, inside};
    };
    const auto [edge512, inside512] = errors(512);
    const auto [edge1024, inside1024] = errors(1024);
    CHECK(edge512 / edge1024 == doctest::Approx(2.0).epsilon(0.1));
    CHECK(inside1024 < 1e-4);
    CHECK(inside1024 < inside512);
  }

  TEST_CASE("orthonormality of the first 32 functions") {
    const BasisSpec spec{1.0, 32};
    double worst = 0.0;
    for (std::size_t i = 0; i < 32; ++i) {
      for (std::size_t j = 0; j <= i; ++j) {
        const double ip = quadrature::integrate(
            [&](double t) { return basis::eval(spec, i, t) * basis::eval(spec, j, t); }, 0.0, 1.0, 32.0 * kPi);
        worst = std::max(worst, std::abs(ip - (i == j ? 1.0 : 0.0)));
      }
    }
    CHECK(worst < 1e-10);
  }

  TEST_CASE("Parseval tail is nonnegative and shrinks with L") {
    double previous = 1.0;
    for (std::size_t L : {128u, 256u, 512u, 1024u}) {
      const double tail = 0.5 - signals::spectral_sin(10.0 * kPi, 1.0, L).coeffs().squaredNorm();
      CAPTURE(L);
      CHECK(tail >= 0.0);
      CHECK(tail < previous);
      previous = tail;
    }
  }

  TEST_CASE("natural and zero extensions agree on the segment") {
    for (double T : {0.5, 1.0, 3.0}) {
      const BasisSpec nat{T, 40, Extension::Natural};
      const BasisSpec zero{T, 40, Extension::Zero};
      for (std::size_t i = 0; i < 40; ++i) {
        for (double u : {0.0, 0.13, 0.5, 0.77, 1.0}) {
          CHECK(basis::eval(nat, i, u * T) == basis::eval(zero, i, u * T));
        }
      }
    }
  }
}
