#include "specfilt/specfilt.h"

#include "specfilt/blocks.hpp"
#include "specfilt/config.hpp"
#include "specfilt/error.hpp"
#include "specfilt/experiment.hpp"
#include "specfilt/filters.hpp"
#include "specfilt/oracle.hpp"
#include "specfilt/render.hpp"

#include <cstring>
#include <exception>
#include <new>
#include <string>

using namespace specfilt;

struct sf_design {
  filters::FilterDesign design;
  std::vector<filters::Factor> factors;
};

struct sf_config {
  config::ExperimentSpec spec;
};

struct sf_table {
  experiment::Table table;
};

struct sf_calibration {
  experiment::CalibrationResult result;
};

namespace {

thread_local std::string g_last_error;

sf_status fail(sf_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

template <class F>
sf_status guarded(F&& body) {
  try {
    g_last_error.clear();
    return body();
  } catch (const Error& e) {
    switch (e.kind()) {
      case ErrorKind::Config: return fail(SF_ERR_CONFIG, e.what());
      case ErrorKind::Numeric: return fail(SF_ERR_NUMERIC, e.what());
      case ErrorKind::Calibration: return fail(SF_ERR_CALIBRATION, e.what());
      case ErrorKind::Io: return fail(SF_ERR_IO, e.what());
    }
    return fail(SF_ERR_INTERNAL, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(SF_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::out_of_range& e) {
    return fail(SF_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(SF_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(SF_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(SF_ERR_INTERNAL, "unknown error");
  }
}

sf_status null_argument(const char* name) { return fail(SF_ERR_INVALID_ARGUMENT, std::string(name) + " is NULL"); }

sf_status copy_text(const std::string& text, char* buf, size_t len, size_t* needed) {
  if (needed) *needed = text.size() + 1;
  if (!buf || len < text.size() + 1) {
    return fail(SF_ERR_BUFFER_TOO_SMALL, "buffer needs " + std::to_string(text.size() + 1) + " bytes");
  }
  std::memcpy(buf, text.c_str(), text.size() + 1);
  return SF_OK;
}

filters::DesignParams to_params(const sf_design_params& p) {
  filters::DesignParams d;
  switch (p.family) {
    case SF_FAMILY_BUTTERWORTH: d.family = filters::Family::Butterworth; break;
    case SF_FAMILY_LINKWITZ_RILEY: d.family = filters::Family::LinkwitzRiley; break;
    case SF_FAMILY_CHEBYSHEV1: d.family = filters::Family::ChebyshevI; break;
    case SF_FAMILY_CHEBYSHEV2: d.family = filters::Family::ChebyshevII; break;
    default: throw std::invalid_argument("unknown family");
  }
  d.order = p.order;
  d.ripple = p.ripple;
  d.cutoff = p.cutoff;
  d.pass = p.pass == SF_PASS_HIGH ? filters::PassKind::HighPass : filters::PassKind::LowPass;
  return d;
}

sf_error_report to_report(const modeling::ErrorReport& r) {
  sf_error_report out{};
  out.error = r.error;
  out.apriori = r.apriori;
  out.apriori_upper = r.apriori_upper;
  out.phase_delay = r.phase_delay;
  out.monte_carlo = r.monte_carlo ? 1 : 0;
  out.realizations = r.realizations;
  out.error_std = r.error_stats.stddev;
  out.apriori_std = r.apriori_stats.stddev;
  out.apriori_upper_std = r.upper_stats.stddev;
  return out;
}

}  // namespace

extern "C" {

const char* sf_version(void) { return "0.3.0"; }

const char* sf_last_error(void) { return g_last_error.c_str(); }

const char* sf_status_string(sf_status status) {
  switch (status) {
    case SF_OK: return "ok";
    case SF_ERR_INVALID_ARGUMENT: return "invalid argument";
    case SF_ERR_CONFIG: return "configuration error";
    case SF_ERR_NUMERIC: return "numerical failure";
    case SF_ERR_CALIBRATION: return "calibration failure";
    case SF_ERR_IO: return "I/O error";
    case SF_ERR_BUFFER_TOO_SMALL: return "buffer too small";
    case SF_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

sf_status sf_block_matrix(sf_block_kind kind, double horizon, size_t order, double param, double* out,
                          size_t out_len) {
  if (!out) return null_argument("out");
  return guarded([&] {
    if (out_len < order * order) return fail(SF_ERR_BUFFER_TOO_SMALL, "output needs order * order entries");
    BlockMatrix m = [&] {
      switch (kind) {
        case SF_BLOCK_DERIVATIVE: return blocks::derivative_matrix(horizon, order);
        case SF_BLOCK_INTEGRAL: return blocks::integral_matrix(horizon, order);
        case SF_BLOCK_INDICATOR_GAIN: return blocks::indicator_gain_matrix(horizon, order, param);
        case SF_BLOCK_SHIFT_NATURAL: return blocks::shift_matrix_natural(horizon, order, param);
        case SF_BLOCK_SHIFT_ZERO_EXT: return blocks::shift_matrix_zero_ext(horizon, order, param);
        case SF_BLOCK_IDENTITY: return blocks::identity_matrix(horizon, order);
      }
      throw std::invalid_argument("unknown block kind");
    }();
    for (size_t i = 0; i < order; ++i) {
      for (size_t j = 0; j < order; ++j) out[i * order + j] = m(i, j);
    }
    return SF_OK;
  });
}

sf_status sf_family_parse(const char* name, sf_family* out) {
  if (!name) return null_argument("name");
  if (!out) return null_argument("out");
  return guarded([&] {
    switch (filters::parse_family(name)) {
      case filters::Family::Butterworth: *out = SF_FAMILY_BUTTERWORTH; break;
      case filters::Family::LinkwitzRiley: *out = SF_FAMILY_LINKWITZ_RILEY; break;
      case filters::Family::ChebyshevI: *out = SF_FAMILY_CHEBYSHEV1; break;
      case filters::Family::ChebyshevII: *out = SF_FAMILY_CHEBYSHEV2; break;
    }
    return SF_OK;
  });
}

sf_status sf_design_create(const sf_design_params* params, sf_design** out) {
  if (!params) return null_argument("params");
  if (!out) return null_argument("out");
  *out = nullptr;
  return guarded([&] {
    auto design = filters::FilterDesign::make(to_params(*params));
    auto factors = filters::real_factors(design);
    *out = new sf_design{std::move(design), std::move(factors)};
    return SF_OK;
  });
}

void sf_design_destroy(sf_design* design) { delete design; }

sf_status sf_design_get_info(const sf_design* design, sf_design_info* out) {
  if (!design) return null_argument("design");
  if (!out) return null_argument("out");
  const auto& d = design->design;
  out->gain = d.gain();
  out->gamma = d.gamma();
  out->lambda = d.lambda();
  out->alpha = d.alpha();
  out->beta = d.beta();
  out->pole_count = d.poles().size();
  out->factor_count = design->factors.size();
  return SF_OK;
}

sf_status sf_design_poles(const sf_design* design, double* re, double* im, size_t len) {
  if (!design) return null_argument("design");
  if (!re || !im) return null_argument("re/im");
  const auto& poles = design->design.poles();
  if (len < poles.size()) return fail(SF_ERR_BUFFER_TOO_SMALL, "pole buffers too short");
  for (size_t k = 0; k < poles.size(); ++k) {
    re[k] = poles[k].real();
    im[k] = poles[k].imag();
  }
  return SF_OK;
}

sf_status sf_design_factor(const sf_design* design, size_t index, sf_factor* out) {
  if (!design) return null_argument("design");
  if (!out) return null_argument("out");
  if (index >= design->factors.size()) return fail(SF_ERR_INVALID_ARGUMENT, "factor index out of range");
  const auto& f = design->factors[index];
  if (const auto* q = std::get_if<filters::QuadraticFactor>(&f)) {
    *out = sf_factor{2, q->a, q->b};
  } else {
    *out = sf_factor{1, std::get<filters::LinearFactor>(f).a, 0.0};
  }
  return SF_OK;
}

sf_status sf_design_transfer(const sf_design* design, double re, double im, double* out_re, double* out_im) {
  if (!design) return null_argument("design");
  if (!out_re || !out_im) return null_argument("out");
  return guarded([&] {
    const auto h = filters::transfer_eval(design->design, {re, im});
    *out_re = h.real();
    *out_im = h.imag();
    return SF_OK;
  });
}

sf_status sf_design_phase_delay(const sf_design* design, double omega, double* out) {
  if (!design) return null_argument("design");
  if (!out) return null_argument("out");
  return guarded([&] {
    *out = filters::phase_delay(design->design, omega);
    return SF_OK;
  });
}

sf_status sf_design_group_delay(const sf_design* design, double omega, double* out) {
  if (!design) return null_argument("design");
  if (!out) return null_argument("out");
  return guarded([&] {
    *out = filters::group_delay(design->design, omega);
    return SF_OK;
  });
}

sf_status sf_render_poly(const sf_design_params* params, double re_min, double re_max, double im_min, double im_max,
                         size_t width, size_t height, const char* path) {
  if (!params) return null_argument("params");
  if (!path) return null_argument("path");
  return guarded([&] {
    const auto design = filters::FilterDesign::make(to_params(*params));
    const render::Region region{re_min, re_max, im_min, im_max};
    render::write_ppm(render::to_image(render::domain_coloring(design, region, width, height)), path);
    return SF_OK;
  });
}

sf_status sf_config_load(const char* path, sf_config** out) {
  if (!path) return null_argument("path");
  if (!out) return null_argument("out");
  *out = nullptr;
  return guarded([&] {
    *out = new sf_config{config::load(path)};
    return SF_OK;
  });
}

sf_status sf_config_parse(const char* text, sf_config** out) {
  if (!text) return null_argument("text");
  if (!out) return null_argument("out");
  *out = nullptr;
  return guarded([&] {
    *out = new sf_config{config::parse(text)};
    return SF_OK;
  });
}

void sf_config_destroy(sf_config* config) { delete config; }

sf_status sf_config_serialize(const sf_config* config, char* buf, size_t len, size_t* needed) {
  if (!config) return null_argument("config");
  return guarded([&] { return copy_text(config::serialize(config->spec), buf, len, needed); });
}

sf_status sf_config_set_seed(sf_config* config, uint64_t seed) {
  if (!config) return null_argument("config");
  config->spec.seed = seed;
  return SF_OK;
}

sf_status sf_config_set_threads(sf_config* config, unsigned threads) {
  if (!config) return null_argument("config");
  config->spec.threads = threads;
  return SF_OK;
}

sf_status sf_config_set_shift_mode(sf_config* config, sf_shift_mode mode) {
  if (!config) return null_argument("config");
  if (mode != SF_SHIFT_NATURAL && mode != SF_SHIFT_ZERO_EXT) return fail(SF_ERR_INVALID_ARGUMENT, "unknown shift mode");
  config->spec.shift_mode = mode == SF_SHIFT_NATURAL ? modeling::ShiftMode::Natural : modeling::ShiftMode::ZeroExt;
  return SF_OK;
}

sf_status sf_config_order_count(const sf_config* config, size_t* out) {
  if (!config) return null_argument("config");
  if (!out) return null_argument("out");
  *out = config->spec.orders.size();
  return SF_OK;
}

sf_status sf_config_order(const sf_config* config, size_t index, int* out) {
  if (!config) return null_argument("config");
  if (!out) return null_argument("out");
  if (index >= config->spec.orders.size()) return fail(SF_ERR_INVALID_ARGUMENT, "order index out of range");
  *out = config->spec.orders[index];
  return SF_OK;
}

sf_status sf_config_truncation_count(const sf_config* config, size_t* out) {
  if (!config) return null_argument("config");
  if (!out) return null_argument("out");
  *out = config->spec.truncations.size();
  return SF_OK;
}

sf_status sf_config_truncation(const sf_config* config, size_t index, size_t* out) {
  if (!config) return null_argument("config");
  if (!out) return null_argument("out");
  if (index >= config->spec.truncations.size()) return fail(SF_ERR_INVALID_ARGUMENT, "truncation index out of range");
  *out = config->spec.truncations[index];
  return SF_OK;
}

sf_status sf_simulate(const sf_config* config, int order, size_t truncation, sf_error_report* out) {
  if (!config) return null_argument("config");
  if (!out) return null_argument("out");
  return guarded([&] {
    *out = to_report(modeling::run(config->spec.cell(order, truncation)));
    return SF_OK;
  });
}

sf_status sf_validate(const sf_config* config, int order, size_t truncation, double step, sf_discrepancy* out) {
  if (!config) return null_argument("config");
  if (!out) return null_argument("out");
  return guarded([&] {
    const auto d = oracle::cross_validate(config->spec.cell(order, truncation), step > 0.0 ? step : 1e-4);
    *out = sf_discrepancy{d.l2_full, d.sup_full, d.l2_window, d.sup_window, d.phase_delay, d.truncation, d.step};
    return SF_OK;
  });
}

sf_status sf_emit_signals(const sf_config* config, int order, size_t truncation, size_t grid_points,
                          const char* path) {
  if (!config) return null_argument("config");
  if (!path) return null_argument("path");
  return guarded([&] {
    const auto tr = modeling::trajectory(config->spec.cell(order, truncation));
    const auto grid = render::uniform_grid(config->spec.horizon, grid_points);
    const std::vector<std::pair<std::string, SpectralVec>> series{
        {"u", tr.original}, {"g", tr.noisy}, {"x", tr.output}, {"x_star", tr.compensated}};
    render::write_text(path, render::signal_csv(series, grid));
    return SF_OK;
  });
}

sf_status sf_experiment_run(const sf_config* config, sf_progress_fn progress, void* user, sf_table** out) {
  if (!config) return null_argument("config");
  if (!out) return null_argument("out");
  *out = nullptr;
  return guarded([&] {
    experiment::Progress cb;
    if (progress) {
      cb = [progress, user](const experiment::Cell& c) {
        const sf_error_report r = to_report(c.report);
        progress(c.order, c.truncation, &r, user);
      };
    }
    *out = new sf_table{experiment::run_table(config->spec, cb)};
    return SF_OK;
  });
}

void sf_table_destroy(sf_table* table) { delete table; }

sf_status sf_table_cell_count(const sf_table* table, size_t* out) {
  if (!table) return null_argument("table");
  if (!out) return null_argument("out");
  *out = table->table.cells.size();
  return SF_OK;
}

sf_status sf_table_cell(const sf_table* table, size_t index, int* order, size_t* truncation,
                        sf_error_report* report) {
  if (!table) return null_argument("table");
  if (index >= table->table.cells.size()) return fail(SF_ERR_INVALID_ARGUMENT, "cell index out of range");
  const auto& c = table->table.cells[index];
  if (order) *order = c.order;
  if (truncation) *truncation = c.truncation;
  if (report) *report = to_report(c.report);
  return SF_OK;
}

sf_status sf_table_csv(const sf_table* table, char* buf, size_t len, size_t* needed) {
  if (!table) return null_argument("table");
  return guarded([&] { return copy_text(experiment::table_csv(table->table), buf, len, needed); });
}

sf_status sf_table_summary(const sf_table* table, char* buf, size_t len, size_t* needed) {
  if (!table) return null_argument("table");
  return guarded([&] { return copy_text(experiment::table_summary(table->table), buf, len, needed); });
}

sf_status sf_calibrate(const sf_config* config, sf_calibration** out) {
  if (!config) return null_argument("config");
  if (!out) return null_argument("out");
  *out = nullptr;
  return guarded([&] {
    *out = new sf_calibration{experiment::calibrate(config->spec)};
    return SF_OK;
  });
}

void sf_calibration_destroy(sf_calibration* calibration) { delete calibration; }

sf_status sf_calibration_point_count(const sf_calibration* calibration, size_t* out) {
  if (!calibration) return null_argument("calibration");
  if (!out) return null_argument("out");
  *out = calibration->result.points.size();
  return SF_OK;
}

sf_status sf_calibration_get_point(const sf_calibration* calibration, size_t index, sf_calibration_point* out) {
  if (!calibration) return null_argument("calibration");
  if (!out) return null_argument("out");
  if (index >= calibration->result.points.size()) return fail(SF_ERR_INVALID_ARGUMENT, "point index out of range");
  const auto& p = calibration->result.points[index];
  *out = sf_calibration_point{p.truncation,   p.target,       p.delay.value,
                              p.delay.residual, p.cutoff.value, p.cutoff.residual};
  return SF_OK;
}

sf_status sf_calibration_consensus(const sf_calibration* calibration, double* cutoff, double* spread) {
  if (!calibration) return null_argument("calibration");
  if (cutoff) *cutoff = calibration->result.consensus_cutoff;
  if (spread) *spread = calibration->result.max_relative_spread;
  return SF_OK;
}

sf_status sf_calibration_report(const sf_calibration* calibration, char* buf, size_t len, size_t* needed) {
  if (!calibration) return null_argument("calibration");
  return guarded([&] { return copy_text(experiment::calibration_report(calibration->result), buf, len, needed); });
}

}  // extern "C"
