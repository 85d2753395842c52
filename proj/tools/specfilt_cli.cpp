#include "specfilt/specfilt.h"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

constexpr double kPi = std::numbers::pi;

// Exit codes seen by scripts.
constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitCalibration = 4;

struct Failure {
  sf_status status;
  std::string message;
};

int exit_code(sf_status s) {
  switch (s) {
    case SF_OK: return kExitOk;
    case SF_ERR_INVALID_ARGUMENT:
    case SF_ERR_CONFIG: return kExitConfig;
    case SF_ERR_NUMERIC: return kExitNumeric;
    case SF_ERR_CALIBRATION: return kExitCalibration;
    default: return kExitIo;
  }
}

void check(sf_status s) {
  if (s != SF_OK) throw Failure{s, sf_last_error()};
}

template <class Handle, class Fn>
std::string fetch_text(const Handle* h, Fn fn) {
  std::size_t needed = 0;
  fn(h, nullptr, 0, &needed);
  std::string buf(needed, '\0');
  check(fn(h, buf.data(), buf.size(), &needed));
  buf.resize(needed - 1);
  return buf;
}

struct ConfigDeleter {
  void operator()(sf_config* c) const { sf_config_destroy(c); }
};
struct DesignDeleter {
  void operator()(sf_design* d) const { sf_design_destroy(d); }
};
struct TableDeleter {
  void operator()(sf_table* t) const { sf_table_destroy(t); }
};
struct CalibrationDeleter {
  void operator()(sf_calibration* c) const { sf_calibration_destroy(c); }
};
using ConfigPtr = std::unique_ptr<sf_config, ConfigDeleter>;

// Sends text to --out when given, stdout otherwise.
void emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out, std::ios::binary);
  f << text;
  f.close();
  if (!f) throw Failure{SF_ERR_IO, "cannot write " + out};
}

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

struct Common {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> threads;
  std::string shift_mode;
};

ConfigPtr load_config(const Common& c) {
  if (c.config.empty()) throw Failure{SF_ERR_CONFIG, "--config is required"};
  sf_config* raw = nullptr;
  check(sf_config_load(c.config.c_str(), &raw));
  ConfigPtr cfg(raw);
  if (c.seed) check(sf_config_set_seed(cfg.get(), *c.seed));
  if (c.threads) check(sf_config_set_threads(cfg.get(), *c.threads));
  if (c.shift_mode == "natural") check(sf_config_set_shift_mode(cfg.get(), SF_SHIFT_NATURAL));
  if (c.shift_mode == "zero") check(sf_config_set_shift_mode(cfg.get(), SF_SHIFT_ZERO_EXT));
  return cfg;
}

int first_order(const sf_config* cfg) {
  int n = 0;
  check(sf_config_order(cfg, 0, &n));
  return n;
}

std::size_t first_truncation(const sf_config* cfg) {
  std::size_t len = 0;
  check(sf_config_truncation(cfg, 0, &len));
  return len;
}

void add_common(CLI::App* sub, Common& c, bool with_config) {
  if (with_config) {
    sub->add_option("--config", c.config, "experiment configuration (JSON)")->required()->check(CLI::ExistingFile);
    sub->add_option("--seed", c.seed, "override the configured seed");
    sub->add_option("--threads", c.threads, "worker threads for Monte Carlo runs");
    sub->add_option("--shift-mode", c.shift_mode, "time shift convention")
        ->check(CLI::IsMember({"natural", "zero"}));
  }
  sub->add_option("--out", c.out, "output file (default: stdout)");
}

std::string report_text(const sf_error_report& r, int order, std::size_t len) {
  std::ostringstream s;
  s << "n = " << order << ", L = " << len << '\n';
  s << "tau_phi  = " << fmt("%.9g", r.phase_delay) << '\n';
  if (r.monte_carlo) {
    s << "E        = " << fmt("%.9g", r.error) << " (sd " << fmt("%.9g", r.error_std) << ")\n";
    s << "E0       = " << fmt("%.9g", r.apriori) << " (sd " << fmt("%.9g", r.apriori_std) << ")\n";
    s << "E0+      = " << fmt("%.9g", r.apriori_upper) << " (sd " << fmt("%.9g", r.apriori_upper_std) << ")\n";
    s << "M        = " << r.realizations << '\n';
  } else {
    s << "E        = " << fmt("%.9g", r.error) << '\n';
    s << "E0       = " << fmt("%.9g", r.apriori) << '\n';
    s << "E0+      = " << fmt("%.9g", r.apriori_upper) << '\n';
  }
  return s.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral-form modeling of continuous-time filters"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(sf_version()));

  Common common;

  // matrices
  auto* matrices = app.add_subcommand("matrices", "dump a block matrix as CSV");
  std::string kind = "derivative";
  double horizon = 1.0;
  std::size_t truncation = 16;
  double param = 0.0;
  const std::map<std::string, sf_block_kind> kinds{{"derivative", SF_BLOCK_DERIVATIVE},
                                                   {"integral", SF_BLOCK_INTEGRAL},
                                                   {"indicator", SF_BLOCK_INDICATOR_GAIN},
                                                   {"shift", SF_BLOCK_SHIFT_NATURAL},
                                                   {"shift-zero", SF_BLOCK_SHIFT_ZERO_EXT},
                                                   {"identity", SF_BLOCK_IDENTITY}};
  matrices->add_option("--kind", kind, "derivative, integral, indicator, shift, shift-zero or identity")
      ->check(CLI::IsMember({"derivative", "integral", "indicator", "shift", "shift-zero", "identity"}));
  matrices->add_option("--horizon", horizon, "segment length T");
  matrices->add_option("--truncation", truncation, "truncation order L")->check(CLI::PositiveNumber);
  matrices->add_option("--param", param, "cut point for indicator, shift for shift kinds");
  add_common(matrices, common, false);

  // design
  auto* design = app.add_subcommand("design", "print poles, gains and delays of a filter");
  std::string family = "bw";
  int order = 3;
  double ripple = 0.1;
  double cutoff_over_pi = 40.0;
  double omega_over_pi = 10.0;
  std::string pass = "low";
  std::string csv_out;
  design->add_option("--family", family, "bw, lr, ci or cii");
  design->add_option("--order", order, "filter order n");
  design->add_option("--ripple", ripple, "Chebyshev ripple epsilon");
  design->add_option("--cutoff", cutoff_over_pi, "cutoff frequency in units of pi");
  design->add_option("--omega", omega_over_pi, "frequency for the delays, in units of pi");
  design->add_option("--pass", pass, "low or high")->check(CLI::IsMember({"low", "high"}));
  design->add_option("--csv", csv_out, "also write the poles as CSV");
  add_common(design, common, false);

  // simulate / validate / emit
  auto* simulate = app.add_subcommand("simulate", "run one (order, truncation) cell of a configuration");
  auto* validate = app.add_subcommand("validate", "compare the spectral output against the ODE oracle");
  auto* emit_cmd = app.add_subcommand("emit", "sample u, g, x and x* on a uniform grid as CSV");
  std::optional<int> cell_order;
  std::optional<std::size_t> cell_truncation;
  double step = 1e-4;
  std::size_t grid = 2000;
  for (auto* sub : {simulate, validate, emit_cmd}) {
    add_common(sub, common, true);
    sub->add_option("--order", cell_order, "filter order (default: first configured)");
    sub->add_option("--truncation", cell_truncation, "truncation L (default: first configured)");
  }
  validate->add_option("--step", step, "RK4 step of the oracle")->check(CLI::PositiveNumber);
  emit_cmd->add_option("--grid", grid, "number of sample points")->check(CLI::Range(2, 10000000));

  // experiment / calibrate
  auto* experiment = app.add_subcommand("experiment", "run the (order, truncation) table of a configuration");
  std::string summary_out;
  add_common(experiment, common, true);
  experiment->add_option("--summary", summary_out, "write the full-precision summary to this file");
  bool quiet = false;
  experiment->add_flag("--quiet", quiet, "no per-cell progress on stderr");

  auto* calibrate = app.add_subcommand("calibrate", "estimate the cutoff from a-priori error anchors");
  add_common(calibrate, common, true);

  // render-poly
  auto* render = app.add_subcommand("render-poly", "domain coloring of the characteristic polynomial (PPM)");
  double lo = -2.0;
  double hi = 2.0;
  std::size_t px = 800;
  render->add_option("--family", family, "bw, lr, ci or cii");
  render->add_option("--order", order, "filter order n");
  render->add_option("--ripple", ripple, "Chebyshev ripple epsilon");
  render->add_option("--min", lo, "lower bound of Re and Im");
  render->add_option("--max", hi, "upper bound of Re and Im");
  render->add_option("--px", px, "image width and height")->check(CLI::Range(16, 20000));
  render->add_option("--out", common.out, "PPM file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    auto design_params = [&](double cutoff) {
      sf_design_params p{};
      check(sf_family_parse(family.c_str(), &p.family));
      p.order = order;
      p.ripple = ripple;
      p.cutoff = cutoff;
      p.pass = pass == "high" ? SF_PASS_HIGH : SF_PASS_LOW;
      return p;
    };

    if (*matrices) {
      std::vector<double> m(truncation * truncation);
      check(sf_block_matrix(kinds.at(kind), horizon, truncation, param, m.data(), m.size()));
      std::string text;
      for (std::size_t i = 0; i < truncation; ++i) {
        for (std::size_t j = 0; j < truncation; ++j) {
          if (j) text += ',';
          text += fmt("%.17e", m[i * truncation + j]);
        }
        text += '\n';
      }
      emit(text, common.out);
    } else if (*design) {
      const sf_design_params p = design_params(cutoff_over_pi * kPi);
      sf_design* raw = nullptr;
      check(sf_design_create(&p, &raw));
      std::unique_ptr<sf_design, DesignDeleter> d(raw);
      sf_design_info info{};
      check(sf_design_get_info(d.get(), &info));
      std::vector<double> re(info.pole_count), im(info.pole_count);
      check(sf_design_poles(d.get(), re.data(), im.data(), info.pole_count));
      double tau_phi = 0.0, tau_g = 0.0;
      check(sf_design_phase_delay(d.get(), omega_over_pi * kPi, &tau_phi));
      check(sf_design_group_delay(d.get(), omega_over_pi * kPi, &tau_g));

      std::ostringstream s;
      s << family << " n=" << order << " " << pass << "-pass, cutoff " << fmt("%.9g", cutoff_over_pi) << " pi\n";
      s << "poles (unit cutoff):\n";
      for (std::size_t k = 0; k < re.size(); ++k) {
        s << "  s" << k + 1 << (k + 1 < 10 ? "  = " : " = ") << fmt("%+.15f", re[k]) << " " << fmt("%+.15f", im[k])
          << " i\n";
      }
      s << "gain     = " << fmt("%.15g", info.gain) << '\n';
      s << "gamma    = " << fmt("%.15g", info.gamma) << '\n';
      s << "alpha    = " << fmt("%.15g", info.alpha) << '\n';
      s << "beta     = " << fmt("%.15g", info.beta) << '\n';
      s << "lambda   = " << fmt("%.15g", info.lambda) << '\n';
      s << "tau_phi  = " << fmt("%.15g", tau_phi) << "  at omega = " << fmt("%.9g", omega_over_pi) << " pi\n";
      s << "tau_g    = " << fmt("%.15g", tau_g) << '\n';
      emit(s.str(), common.out);

      if (!csv_out.empty()) {
        std::string csv = "k,re,im\n";
        for (std::size_t k = 0; k < re.size(); ++k) {
          csv += std::to_string(k + 1) + "," + fmt("%.17g", re[k]) + "," + fmt("%.17g", im[k]) + "\n";
        }
        emit(csv, csv_out);
      }
    } else if (*simulate) {
      ConfigPtr cfg = load_config(common);
      const int n = cell_order.value_or(first_order(cfg.get()));
      const std::size_t len = cell_truncation.value_or(first_truncation(cfg.get()));
      sf_error_report r{};
      check(sf_simulate(cfg.get(), n, len, &r));
      emit(report_text(r, n, len), common.out);
    } else if (*validate) {
      ConfigPtr cfg = load_config(common);
      const int n = cell_order.value_or(first_order(cfg.get()));
      const std::size_t len = cell_truncation.value_or(first_truncation(cfg.get()));
      sf_discrepancy d{};
      check(sf_validate(cfg.get(), n, len, step, &d));
      std::string csv = "n,L,step,tau_phi,l2_full,sup_full,l2_window,sup_window\n";
      csv += std::to_string(n) + "," + std::to_string(d.truncation) + "," + fmt("%.9g", d.step) + "," +
             fmt("%.9g", d.phase_delay) + "," + fmt("%.9g", d.l2_full) + "," + fmt("%.9g", d.sup_full) + "," +
             fmt("%.9g", d.l2_window) + "," + fmt("%.9g", d.sup_window) + "\n";
      emit(csv, common.out);
    } else if (*emit_cmd) {
      ConfigPtr cfg = load_config(common);
      const int n = cell_order.value_or(first_order(cfg.get()));
      const std::size_t len = cell_truncation.value_or(first_truncation(cfg.get()));
      if (common.out.empty()) throw Failure{SF_ERR_CONFIG, "--out is required for emit"};
      check(sf_emit_signals(cfg.get(), n, len, grid, common.out.c_str()));
    } else if (*experiment) {
      ConfigPtr cfg = load_config(common);
      sf_progress_fn progress = nullptr;
      if (!quiet) {
        progress = [](int n, std::size_t len, const sf_error_report* r, void*) {
          std::fprintf(stderr, "n=%d L=%zu E=%.6f\n", n, len, r->error);
        };
      }
      sf_table* raw = nullptr;
      check(sf_experiment_run(cfg.get(), progress, nullptr, &raw));
      std::unique_ptr<sf_table, TableDeleter> table(raw);
      emit(fetch_text(table.get(), sf_table_csv), common.out);
      if (!summary_out.empty()) emit(fetch_text(table.get(), sf_table_summary), summary_out);
    } else if (*calibrate) {
      ConfigPtr cfg = load_config(common);
      sf_calibration* raw = nullptr;
      check(sf_calibrate(cfg.get(), &raw));
      std::unique_ptr<sf_calibration, CalibrationDeleter> cal(raw);
      emit(fetch_text(cal.get(), sf_calibration_report), common.out);
    } else if (*render) {
      const sf_design_params p = design_params(1.0);
      check(sf_render_poly(&p, lo, hi, lo, hi, px, px, common.out.c_str()));
    }
  } catch (const Failure& f) {
    std::cerr << "specfilt: " << sf_status_string(f.status) << ": " << f.message << '\n';
    return exit_code(f.status);
  } catch (const std::exception& e) {
    std::cerr << "specfilt: " << e.what() << '\n';
    return kExitIo;
  }
  return kExitOk;
}
