#include "generators.hpp"

#include "specfilt/blocks.hpp"
#include "specfilt/config.hpp"
#include "specfilt/filters.hpp"
#include "specfilt/modeling.hpp"
#include "specfilt/oracle.hpp"
#include "specfilt/signals.hpp"

#include <doctest.h>

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>

using namespace specfilt;
using filters::Complex;
using filters::Family;

namespace {

constexpr double kPi = std::numbers::pi;

Complex chebyshev_t(int n, Complex x) {
  Complex t0 = 1.0, t1 = x;
  if (n == 0) return t0;
  for (int k = 1; k < n; ++k) {
    const Complex t2 = 2.0 * x * t1 - t0;
    t0 = t1;
    t1 = t2;
  }
  return t1;
}

double rel_frobenius(const Matrix& a, const Matrix& b) { return (a - b).norm() / b.norm(); }

}  // namespace

TEST_SUITE("properties") {
  TEST_CASE("closed-form block elements agree with quadrature") {
    gen::Source src(11);
    for (int draw = 0; draw < 2; ++draw) {
      const double T = src.real(0.5, 2.0);
      const double cut = src.real(0.1, 0.9) * T;
      const double shift = src.real(0.05, 0.4) * T;
      CAPTURE(T);
      CAPTURE(shift);
      const std::size_t L = 32;
      const std::vector<std::pair<BlockKind, BlockMatrix>> blocks{
          {BlockKind::Derivative, blocks::derivative_matrix(T, L)},
          {BlockKind::Integral, blocks::integral_matrix(T, L)},
          {BlockKind::IndicatorGain, blocks::indicator_gain_matrix(T, L, cut)},
          {BlockKind::ShiftNatural, blocks::shift_matrix_natural(T, L, shift)},
          {BlockKind::ShiftZeroPos, blocks::shift_matrix_zero_ext(T, L, shift)},
          {BlockKind::ShiftZeroNeg, blocks::shift_matrix_zero_ext(T, L, -shift)},
      };
      for (const auto& [kind, m] : blocks) {
        double worst = 0.0;
        for (std::size_t i = 0; i < L; ++i) {
          for (std::size_t j = 0; j < L; ++j) {
            worst = std::max(worst, std::abs(m(i, j) - blocks::matrix_element_oracle(kind, T, i, j, m.param())));
          }
        }
        CAPTURE(to_string(kind));
        CHECK(worst < 1e-8);
      }
    }
  }

  TEST_CASE("pole residuals of the defining equations") {
    gen::Source src(12);
    for (int c = 0; c < gen::kCases; ++c) {
      const int n = src.integer(1, 8);
      const double eps = src.pick(std::vector{0.01, 0.1, 0.5, 1.0});
      CAPTURE(n);
      CAPTURE(eps);
      for (const auto& s : filters::butterworth_poles(n)) {
        CHECK(std::abs(std::pow(Complex(0.0, -1.0) * s, 2 * n) + 1.0) < 1e-10);
      }
      for (const auto& s : filters::chebyshev1_poles(n, eps).poles) {
        const Complex t = chebyshev_t(n, Complex(0.0, -1.0) * s);
        CHECK(std::abs(eps * eps * t * t + 1.0) < 1e-9);
      }
      for (const auto& s : filters::chebyshev2_poles(n, eps).poles) {
        const Complex t = chebyshev_t(n, Complex(0.0, -1.0) / s);
        CHECK(std::abs(eps * eps * t * t + 1.0) < 1e-9);
      }
    }
  }

  TEST_CASE("poles are conjugate-closed and stable") {
    for (Family f : {Family::Butterworth, Family::LinkwitzRiley, Family::ChebyshevI, Family::ChebyshevII}) {
      for (int n = 1; n <= 8; ++n) {
        if (f == Family::LinkwitzRiley && n % 2 != 0) continue;
        for (double eps : {0.01, 0.1, 1.0}) {
          const auto d = filters::FilterDesign::make({f, n, eps});
          const auto& poles = d.poles();
          CAPTURE(std::string(to_string(f)));
          CAPTURE(n);
          REQUIRE(poles.size() == static_cast<std::size_t>(n));
          int real_count = 0;
          for (const auto& s : poles) {
            CHECK(s.real() < 0.0);
            if (s.imag() == 0.0) ++real_count;
            const auto match = std::count_if(poles.begin(), poles.end(),
                                             [&](const Complex& z) { return std::abs(z - std::conj(s)) < 1e-13; });
            CHECK(match >= 1);
          }
          const int proto = f == Family::LinkwitzRiley ? n / 2 : n;
          const int expected_real = (proto % 2) * (f == Family::LinkwitzRiley ? 2 : 1);
          CHECK(real_count == expected_real);
        }
      }
    }
  }

  TEST_CASE("real and complex factorizations agree") {
    gen::Source src(13);
    for (Family f : {Family::Butterworth, Family::LinkwitzRiley, Family::ChebyshevI, Family::ChebyshevII}) {
      for (int n = 1; n <= 6; ++n) {
        if (f == Family::LinkwitzRiley && n % 2 != 0) continue;
        const double cutoff = src.real(10.0, 80.0) * kPi;
        const auto d = filters::FilterDesign::make({f, n, 0.1, cutoff});
        const Matrix real = filters::ntf_materialize(filters::ntf_factored(d, 1.0, 128)).data();
        const Matrix cplx = filters::ntf_materialize_complex(d, 1.0, 128);
        CAPTURE(std::string(to_string(f)));
        CAPTURE(n);
        CHECK(rel_frobenius(real, cplx) < 1e-8);
      }
    }
  }

  TEST_CASE("Linkwitz-Riley equals Butterworth squared") {
    for (int n : {2, 4, 6}) {
      const double cutoff = 40.0 * kPi;
      const Matrix lr =
          filters::ntf_materialize(filters::ntf_factored(filters::FilterDesign::make({Family::LinkwitzRiley, n, 0.1, cutoff}),
                                                         1.0, 128))
              .data();
      const Matrix bw =
          filters::ntf_materialize(filters::ntf_factored(filters::FilterDesign::make({Family::Butterworth, n / 2, 0.1, cutoff}),
                                                         1.0, 128))
              .data();
      CHECK(rel_frobenius(lr, bw * bw) < 1e-8);
    }
  }

  TEST_CASE("cutoff scaling is the prototype built on P over the cutoff") {
    gen::Source src(14);
    for (int c = 0; c < 8; ++c) {
      const auto p = src.design(6, src.real(5.0, 80.0));
      const auto d = filters::FilterDesign::make(p);
      const auto scaled = filters::ntf_factored(d, 1.0, 64);
      auto proto = filters::ntf_factored(d.with_cutoff(1.0), 1.0, 64);
      const Matrix operand = blocks::derivative_matrix(1.0, 64).data() / p.cutoff;
      CHECK(filters::ntf_materialize(scaled).data() == filters::ntf_materialize(proto, operand).data());
    }
  }

  TEST_CASE("high-pass and low-pass magnitudes are mirrored") {
    gen::Source src(15);
    for (int c = 0; c < gen::kCases; ++c) {
      auto p = src.design(6);
      const auto lp = filters::FilterDesign::make(p);
      p.pass = filters::PassKind::HighPass;
      const auto hp = filters::FilterDesign::make(p);
      for (double w : {0.5, 2.0}) {
        CHECK(std::abs(filters::transfer_eval(hp, {0.0, w})) ==
              doctest::Approx(std::abs(filters::transfer_eval(lp, {0.0, -1.0 / w}))).epsilon(1e-12));
      }
    }
  }

  TEST_CASE("scaled poles are roots of the companion polynomial") {
    // Eigenvalues of a companion matrix lose accuracy for large cutoffs and
    // repeated poles, so the check is the relative residual of the polynomial
    // read back from its last row.
    gen::Source src(16);
    for (Family f : {Family::Butterworth, Family::LinkwitzRiley, Family::ChebyshevI, Family::ChebyshevII}) {
      for (int n = 1; n <= 6; ++n) {
        if (f == Family::LinkwitzRiley && n % 2 != 0) continue;
        const double cutoff = src.real(1.0, 80.0) * kPi;
        const auto d = filters::FilterDesign::make({f, n, 0.1, cutoff});
        const auto sys = oracle::realize(d);
        for (const auto& s : d.poles()) {
          const Complex z = cutoff * s;
          Complex value = std::pow(z, n);
          double scale = std::pow(std::abs(z), n);
          for (int k = 0; k < n; ++k) {
            const double a = -sys.a(n - 1, k);
            value += a * std::pow(z, k);
            scale += std::abs(a) * std::pow(std::abs(z), k);
          }
          CAPTURE(std::string(to_string(f)));
          CAPTURE(n);
          CHECK(std::abs(value) / scale < 1e-12);
        }
      }
    }
  }

  TEST_CASE("Linkwitz-Riley realization has the squared characteristic polynomial") {
    for (int n : {2, 4, 6}) {
      const double cutoff = 40.0 * kPi;
      const auto lr = oracle::realize(filters::FilterDesign::make({Family::LinkwitzRiley, n, 0.1, cutoff}));
      const auto bw = filters::FilterDesign::make({Family::Butterworth, n / 2, 0.1, cutoff});
      const auto base = oracle::expand_roots(oracle::realized_poles(bw));
      // last row of the companion matrix holds -a_0 .. -a_{n-1}
      std::vector<double> squared(static_cast<std::size_t>(n) + 1, 0.0);
      for (std::size_t i = 0; i < base.size(); ++i) {
        for (std::size_t j = 0; j < base.size(); ++j) squared[i + j] += base[i] * base[j];
      }
      for (int k = 0; k < n; ++k) {
        CHECK(-lr.a(n - 1, k) == doctest::Approx(squared[static_cast<std::size_t>(k)]).epsilon(1e-10));
      }
    }
  }

  TEST_CASE("filtering is linear") {
    gen::Source src(17);
    for (int c = 0; c < 10; ++c) {
      const auto p = src.design(6, src.real(10.0, 80.0) * kPi);
      const auto op = filters::ntf_factored(filters::FilterDesign::make(p), 1.0, 96);
      const auto u1 = signals::spectral_sin(src.real(1.0, 100.0), 1.0, 96);
      const auto u2 = signals::spectral_cos(src.real(1.0, 100.0), 1.0, 96);
      const double a = src.real(-2.0, 2.0), b = src.real(-2.0, 2.0);
      const std::vector<signals::WeightedTerm> mix{{a, &u1}, {b, &u2}};
      const Vector lhs = modeling::apply_filter(op, signals::combine(mix)).coeffs();
      const Vector rhs = a * modeling::apply_filter(op, u1).coeffs() + b * modeling::apply_filter(op, u2).coeffs();
      CHECK((lhs - rhs).norm() <= 1e-10 * rhs.norm());
    }
  }

  TEST_CASE("a-priori error never exceeds its upper estimate") {
    gen::Source src(18);
    for (int c = 0; c < gen::kCases; ++c) {
      const std::size_t L = src.index(16, 256);
      const double cut = src.real(0.0, 1.0);
      const auto v = signals::spectral_white_noise(1.0, 1.0, L, 3, static_cast<std::uint64_t>(c));
      const auto e = modeling::apriori_errors(v, blocks::indicator_gain_matrix(1.0, L, cut));
      CHECK(e.apriori <= e.upper);
    }
  }

  TEST_CASE("upper a-priori error does not depend on the filter") {
    for (std::size_t L : {128u, 512u}) {
      double first = -1.0;
      for (Family f : {Family::Butterworth, Family::LinkwitzRiley, Family::ChebyshevI, Family::ChebyshevII}) {
        modeling::ExperimentConfig c;
        c.design = {f, 4, 0.1, 40.0 * kPi};
        c.truncation = L;
        const double upper = modeling::run(c).apriori_upper;
        if (first < 0.0) first = upper;
        CHECK(upper == first);
      }
    }
  }

  TEST_CASE("white-noise upper error grows with L") {
    const std::size_t m = 2000;
    double previous = 0.0;
    for (std::size_t L : {128u, 256u, 512u}) {
      double sum = 0.0;
      for (std::size_t j = 0; j < m; ++j) sum += signals::spectral_white_noise(0.01, 1.0, L, 1, j).coeffs().norm();
      const double mean = sum / static_cast<double>(m);
      CHECK(mean > previous);
      previous = mean;
    }
  }

  TEST_CASE("identical configuration gives a bit-identical report") {
    gen::Source src(19);
    for (int c = 0; c < 4; ++c) {
      modeling::ExperimentConfig cfg;
      cfg.design = src.design(6, 40.0 * kPi);
      cfg.truncation = src.index(32, 128);
      cfg.noise = modeling::NoiseSpec::random_default();
      cfg.realizations = 64;
      cfg.seed = static_cast<std::uint64_t>(src.integer(0, 1000));
      const auto a = modeling::run(cfg);
      const auto b = modeling::run(cfg);
      CHECK(a.error_stats.mean == b.error_stats.mean);
      CHECK(a.error_stats.stddev == b.error_stats.stddev);
      CHECK(a.apriori_stats.mean == b.apriori_stats.mean);
      CHECK(a.upper_stats.mean == b.upper_stats.mean);
      CHECK(a.phase_delay == b.phase_delay);
    }
  }

  TEST_CASE("configuration round-trip") {
    gen::Source src(20);
    for (int c = 0; c < gen::kCases; ++c) {
      config::ExperimentSpec s;
      s.name = "case" + std::to_string(c);
      s.family = src.family();
      s.orders = {s.family == Family::LinkwitzRiley ? 2 * src.integer(1, 4) : src.integer(1, 8)};
      s.ripple = src.real(0.01, 1.0);
      s.cutoff_over_pi = src.real(1.0, 100.0);
      s.horizon = src.real(0.5, 3.0);
      s.truncations = {src.index(8, 2048), src.index(8, 2048)};
      s.signal = {src.pick(std::vector{modeling::Tone::Kind::Sin, modeling::Tone::Kind::Cos}), src.real(0.1, 50.0),
                  src.real(-2.0, 2.0)};
      s.noise_kind = src.pick(std::vector{modeling::NoiseSpec::Kind::Deterministic, modeling::NoiseSpec::Kind::Random,
                                          modeling::NoiseSpec::Kind::None});
      s.sigma = s.noise_kind == modeling::NoiseSpec::Kind::None ? 0.0 : src.real(0.0, 1.0);
      if (s.noise_kind != modeling::NoiseSpec::Kind::Deterministic) s.noise_terms.clear();
      s.realizations = src.index(1, 100000);
      s.seed = static_cast<std::uint64_t>(src.integer(0, 1 << 30));
      s.shift_mode = src.pick(std::vector{modeling::ShiftMode::Natural, modeling::ShiftMode::ZeroExt});
      s.threads = static_cast<unsigned>(src.integer(0, 8));
      if (src.integer(0, 1)) {
        s.calibration = config::CalibrationSpec{{{s.truncations[0], src.real(0.01, 1.0)}}, src.real(1.0, 10.0),
                                                src.real(20.0, 90.0), config::DelayIntegrand::Continuous};
      }
      const std::string once = config::serialize(s);
      const auto back = config::parse(once);
      CAPTURE(once);
      CHECK(config::serialize(back) == once);
      CHECK(back.cutoff_over_pi == s.cutoff_over_pi);
      CHECK(back.signal.omega_over_pi == s.signal.omega_over_pi);
      CHECK(back.seed == s.seed);
    }
  }
}
