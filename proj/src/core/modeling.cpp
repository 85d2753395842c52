#include "specfilt/modeling.hpp"

#include "specfilt/blocks.hpp"
#include "specfilt/error.hpp"
#include "specfilt/random.hpp"
#include "specfilt/signals.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <string>
#include <mutex>
#include <thread>

namespace specfilt::modeling {

namespace {

constexpr double kPi = std::numbers::pi;
// Realizations are processed in fixed column blocks; the block size does not
// depend on the thread count so results are identical for any --threads.
constexpr std::size_t kChunk = 256;

Tone tone(Tone::Kind kind, double multiple) { return Tone{kind, multiple * kPi, 1.0}; }

double clamp_form(double value) {
  if (value >= 0.0) return value;
  if (value >= -kNegativeFormTolerance) return 0.0;
  throw NumericError("quadratic form is negative (" + std::to_string(value) + ")");
}

unsigned thread_count(unsigned requested, std::size_t jobs) {
  unsigned n = requested == 0 ? std::max(1u, std::thread::hardware_concurrency()) : requested;
  return static_cast<unsigned>(std::min<std::size_t>(n, std::max<std::size_t>(jobs, 1)));
}

struct Pipeline {
  filters::FilterDesign design;
  double tau = 0.0;
  filters::PreparedOperator w;
  BlockMatrix shift;
  BlockMatrix gain;
  SpectralVec original;

  explicit Pipeline(const ExperimentConfig& c)
      : design(design_of(c)),
        tau(phase_delay_of(c)),
        w(filters::ntf_factored(design, c.horizon, c.truncation)),
        shift(shift_for(c.shift_mode, c.horizon, c.truncation, tau)),
        gain(blocks::indicator_gain_matrix(c.horizon, c.truncation, c.horizon - tau)),
        original(signal_spectrum(c)) {}
};

}  // namespace

const char* to_string(ShiftMode mode) { return mode == ShiftMode::Natural ? "natural" : "zero"; }

ShiftMode parse_shift_mode(std::string_view name) {
  if (name == "natural") return ShiftMode::Natural;
  if (name == "zero" || name == "zero-ext" || name == "zeroext") return ShiftMode::ZeroExt;
  throw std::invalid_argument("unknown shift mode '" + std::string(name) + "'");
}

double Tone::value(double t) const {
  return weight * (kind == Kind::Sin ? std::sin(omega * t) : std::cos(omega * t));
}

SpectralVec Tone::spectrum(double horizon, std::size_t order) const {
  SpectralVec base = kind == Kind::Sin ? signals::spectral_sin(omega, horizon, order)
                                       : signals::spectral_cos(omega, horizon, order);
  if (weight == 1.0) return base;
  return SpectralVec(weight * base.coeffs(), horizon, base.label());
}

NoiseSpec NoiseSpec::none() { return NoiseSpec{Kind::None, 0.0, {}}; }

NoiseSpec NoiseSpec::deterministic_default() {
  return NoiseSpec{Kind::Deterministic, 0.2,
                   {tone(Tone::Kind::Sin, 78.0), tone(Tone::Kind::Cos, 95.0), tone(Tone::Kind::Sin, 112.0)}};
}

NoiseSpec NoiseSpec::random_default() { return NoiseSpec{Kind::Random, 0.01, {}}; }

double NoiseSpec::value(double t) const {
  if (kind != Kind::Deterministic) return 0.0;
  double sum = 0.0;
  for (const auto& tn : tones) sum += tn.value(t);
  return sigma * sum;
}

double quadratic_form_root(const Vector& d, const Matrix& a) { return std::sqrt(clamp_form(d.dot(a * d))); }

SpectralVec apply_filter(const filters::PreparedOperator& op, const SpectralVec& g) {
  if (g.size() != op.size()) throw std::invalid_argument("apply_filter: dimension mismatch");
  return SpectralVec(op.apply(g.coeffs()), g.horizon(), "output");
}

SpectralVec apply_filter(const filters::FactoredOperator& op, const SpectralVec& g) {
  return apply_filter(filters::PreparedOperator(op), g);
}

SpectralVec compensate_delay(const BlockMatrix& shift, const SpectralVec& x) {
  if (shift.size() != x.size()) throw std::invalid_argument("compensate_delay: dimension mismatch");
  return SpectralVec(shift.data() * x.coeffs(), x.horizon(), "compensated");
}

double error_metric(const SpectralVec& compensated, const SpectralVec& original, const BlockMatrix& gain) {
  if (compensated.size() != original.size() || gain.size() != original.size()) {
    throw std::invalid_argument("error_metric: dimension mismatch");
  }
  return quadratic_form_root(compensated.coeffs() - original.coeffs(), gain.data());
}

AprioriErrors apriori_errors(const SpectralVec& noise, const BlockMatrix& gain) {
  if (gain.size() != noise.size()) throw std::invalid_argument("apriori_errors: dimension mismatch");
  return {quadratic_form_root(noise.coeffs(), gain.data()), noise.coeffs().norm()};
}

BlockMatrix shift_for(ShiftMode mode, double horizon, std::size_t order, double tau) {
  if (tau == 0.0) return blocks::identity_matrix(horizon, order);
  if (mode == ShiftMode::Natural) return blocks::shift_matrix_natural(horizon, order, tau);
  return blocks::shift_matrix_zero_ext(horizon, order, tau);
}

void validate(const ExperimentConfig& c) {
  (void)filters::FilterDesign::make(c.design);
  if (!(c.horizon > 0.0) || !std::isfinite(c.horizon)) throw ConfigError("horizon", "must be positive");
  if (c.truncation < 1) throw ConfigError("truncation", "must be at least 1");
  if (!(c.signal.omega > 0.0) || !std::isfinite(c.signal.omega)) throw ConfigError("signal.omega", "must be positive");
  if (!(c.noise.sigma >= 0.0) || !std::isfinite(c.noise.sigma)) throw ConfigError("noise.sigma", "must be >= 0");
  if (c.noise.kind == NoiseSpec::Kind::Deterministic) {
    for (const auto& tn : c.noise.tones) {
      if (!(tn.omega > 0.0) || !std::isfinite(tn.omega)) throw ConfigError("noise.terms", "omega must be positive");
    }
  }
  if (c.noise.kind == NoiseSpec::Kind::Random && c.realizations < 1) {
    throw ConfigError("noise.realizations", "must be at least 1");
  }
  (void)phase_delay_of(c);
}

filters::FilterDesign design_of(const ExperimentConfig& c) { return filters::FilterDesign::make(c.design); }

double phase_delay_of(const ExperimentConfig& c) {
  const double tau = filters::phase_delay(design_of(c), c.signal.omega);
  if (!(tau >= 0.0 && tau < c.horizon)) {
    throw ConfigError("cutoff", "phase delay " + std::to_string(tau) + " at the signal frequency is outside [0, T)");
  }
  return tau;
}

SpectralVec signal_spectrum(const ExperimentConfig& c) {
  return c.signal.spectrum(c.horizon, c.truncation).relabeled("original");
}

SpectralVec deterministic_noise(const ExperimentConfig& c) {
  Vector v = Vector::Zero(static_cast<Eigen::Index>(c.truncation));
  if (c.noise.kind == NoiseSpec::Kind::Deterministic) {
    for (const auto& tn : c.noise.tones) v += tn.spectrum(c.horizon, c.truncation).coeffs();
    v *= c.noise.sigma;
  }
  return SpectralVec(std::move(v), c.horizon, "noise");
}

ErrorReport run_deterministic(const ExperimentConfig& c) {
  validate(c);
  if (c.noise.kind == NoiseSpec::Kind::Random) throw ConfigError("noise.kind", "random noise needs run_monte_carlo");
  const Pipeline p(c);
  const SpectralVec noise = deterministic_noise(c);
  const SpectralVec g(p.original.coeffs() + noise.coeffs(), c.horizon, "input");
  const SpectralVec x = apply_filter(p.w, g);
  const SpectralVec xs = compensate_delay(p.shift, x);

  ErrorReport r;
  r.phase_delay = p.tau;
  r.error = error_metric(xs, p.original, p.gain);
  const AprioriErrors a = apriori_errors(noise, p.gain);
  r.apriori = a.apriori;
  r.apriori_upper = a.upper;
  r.realizations = 1;
  return r;
}

MonteCarloStats summarize(const std::vector<double>& values) {
  if (values.empty()) throw std::invalid_argument("summarize: no values");
  double sum = 0.0;
  for (double v : values) sum += v;
  const double mean = sum / static_cast<double>(values.size());
  double sq = 0.0;
  for (double v : values) sq += (v - mean) * (v - mean);
  return {mean, std::sqrt(sq / static_cast<double>(values.size()))};
}

MonteCarloSamples monte_carlo_samples(const ExperimentConfig& c) {
  validate(c);
  if (c.noise.kind != NoiseSpec::Kind::Random) throw ConfigError("noise.kind", "Monte Carlo needs random noise");
  const Pipeline p(c);
  const std::size_t m = c.realizations;
  const std::size_t len = c.truncation;
  MonteCarloSamples out{std::vector<double>(m), std::vector<double>(m), std::vector<double>(m)};

  const std::size_t chunks = (m + kChunk - 1) / kChunk;
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::string failure;
  std::mutex failure_mutex;

  auto work = [&] {
    std::vector<double> column(len);
    while (!failed.load()) {
      const std::size_t chunk = next.fetch_add(1);
      if (chunk >= chunks) return;
      const std::size_t first = chunk * kChunk;
      const std::size_t cols = std::min(kChunk, m - first);
      try {
        Matrix v(static_cast<Eigen::Index>(len), static_cast<Eigen::Index>(cols));
        for (std::size_t j = 0; j < cols; ++j) {
          rng::fill_standard_normal(c.seed, first + j, column);
          for (std::size_t i = 0; i < len; ++i) v(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = column[i];
        }
        v *= c.noise.sigma;
        Matrix g = v;
        g.colwise() += p.original.coeffs();
        Matrix d = p.shift.data() * p.w.apply(g);
        d.colwise() -= p.original.coeffs();
        const Matrix ad = p.gain.data() * d;
        const Matrix av = p.gain.data() * v;
        for (std::size_t j = 0; j < cols; ++j) {
          const auto k = static_cast<Eigen::Index>(j);
          out.error[first + j] = std::sqrt(clamp_form(d.col(k).dot(ad.col(k))));
          out.apriori[first + j] = std::sqrt(clamp_form(v.col(k).dot(av.col(k))));
          out.upper[first + j] = v.col(k).norm();
        }
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failed.exchange(true)) failure = e.what();
      }
    }
  };

  const unsigned threads = thread_count(c.threads, chunks);
  if (threads <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  if (failed) throw NumericError(failure);
  return out;
}

ErrorReport run_monte_carlo(const ExperimentConfig& c) {
  const MonteCarloSamples s = monte_carlo_samples(c);
  ErrorReport r;
  r.monte_carlo = true;
  r.realizations = c.realizations;
  r.phase_delay = phase_delay_of(c);
  r.error_stats = summarize(s.error);
  r.apriori_stats = summarize(s.apriori);
  r.upper_stats = summarize(s.upper);
  r.error = r.error_stats.mean;
  r.apriori = r.apriori_stats.mean;
  r.apriori_upper = r.upper_stats.mean;
  return r;
}

ErrorReport run(const ExperimentConfig& c) {
  return c.noise.kind == NoiseSpec::Kind::Random ? run_monte_carlo(c) : run_deterministic(c);
}

Trajectory trajectory(const ExperimentConfig& c) {
  validate(c);
  const Pipeline p(c);
  Vector noise = deterministic_noise(c).coeffs();
  if (c.noise.kind == NoiseSpec::Kind::Random) {
    noise = signals::spectral_white_noise(c.noise.sigma, c.horizon, c.truncation, c.seed, 0).coeffs();
  }
  SpectralVec g(p.original.coeffs() + noise, c.horizon, "input");
  SpectralVec x = apply_filter(p.w, g);
  SpectralVec xs = compensate_delay(p.shift, x);
  return Trajectory{p.original, std::move(g), std::move(x), std::move(xs), p.tau};
}

}  // namespace specfilt::modeling
