/*
 * specfilt C interface.
 *
 * All objects are opaque handles created and destroyed by the library. Every
 * function returns an sf_status; on failure sf_last_error() describes the
 * problem for the calling thread. Functions that produce text take a caller
 * buffer and report the required size (including the terminating NUL) in
 * *needed; if the buffer is too small SF_ERR_BUFFER_TOO_SMALL is returned and
 * nothing is written.
 */
#ifndef SPECFILT_H
#define SPECFILT_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  ifdef SPECFILT_BUILDING_LIBRARY
#    define SF_API __declspec(dllexport)
#  else
#    define SF_API __declspec(dllimport)
#  endif
#elif defined(__GNUC__) || defined(__clang__)
#  define SF_API __attribute__((visibility("default")))
#else
#  define SF_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sf_status {
  SF_OK = 0,
  SF_ERR_INVALID_ARGUMENT = 1,
  SF_ERR_CONFIG = 2,
  SF_ERR_NUMERIC = 3,
  SF_ERR_CALIBRATION = 4,
  SF_ERR_IO = 5,
  SF_ERR_BUFFER_TOO_SMALL = 6,
  SF_ERR_INTERNAL = 7
} sf_status;

typedef enum sf_block_kind {
  SF_BLOCK_DERIVATIVE = 0,
  SF_BLOCK_INTEGRAL = 1,
  SF_BLOCK_INDICATOR_GAIN = 2,  /* param: cut point c in [0, T] */
  SF_BLOCK_SHIFT_NATURAL = 3,   /* param: shift tau, |tau| < T */
  SF_BLOCK_SHIFT_ZERO_EXT = 4,  /* param: shift tau, 0 < |tau| < T */
  SF_BLOCK_IDENTITY = 5
} sf_block_kind;

typedef enum sf_family {
  SF_FAMILY_BUTTERWORTH = 0,
  SF_FAMILY_LINKWITZ_RILEY = 1,
  SF_FAMILY_CHEBYSHEV1 = 2,
  SF_FAMILY_CHEBYSHEV2 = 3
} sf_family;

typedef enum sf_pass { SF_PASS_LOW = 0, SF_PASS_HIGH = 1 } sf_pass;

typedef enum sf_shift_mode { SF_SHIFT_NATURAL = 0, SF_SHIFT_ZERO_EXT = 1 } sf_shift_mode;

typedef struct sf_design_params {
  sf_family family;
  int order;
  double ripple;
  double cutoff; /* angular frequency */
  sf_pass pass;
} sf_design_params;

typedef struct sf_design_info {
  double gain; /* numerator constant of the unit-cutoff prototype */
  double gamma;
  double lambda;
  double alpha;
  double beta;
  size_t pole_count;
  size_t factor_count;
} sf_design_info;

typedef struct sf_factor {
  int degree; /* 2: Z^2 + a Z + b E, 1: Z + a E */
  double a;
  double b;
} sf_factor;

typedef struct sf_error_report {
  double error;         /* E, or its mean over realizations */
  double apriori;       /* E_0 (mean for Monte Carlo) */
  double apriori_upper; /* E_0^+ (mean for Monte Carlo) */
  double phase_delay;
  int monte_carlo;
  size_t realizations;
  double error_std; /* biased standard deviations; zero for deterministic runs */
  double apriori_std;
  double apriori_upper_std;
} sf_error_report;

typedef struct sf_discrepancy {
  double l2_full;
  double sup_full;
  double l2_window;
  double sup_window;
  double phase_delay;
  size_t truncation;
  double step;
} sf_discrepancy;

typedef struct sf_calibration_point {
  size_t truncation;
  double target;
  double delay;
  double delay_residual;
  double cutoff;
  double cutoff_residual;
} sf_calibration_point;

typedef struct sf_design sf_design;
typedef struct sf_config sf_config;
typedef struct sf_table sf_table;
typedef struct sf_calibration sf_calibration;

typedef void (*sf_progress_fn)(int order, size_t truncation, const sf_error_report* report, void* user);

SF_API const char* sf_version(void);
SF_API const char* sf_last_error(void);
SF_API const char* sf_status_string(sf_status status);

/* Block matrices, written row-major into out[order * order]. */
SF_API sf_status sf_block_matrix(sf_block_kind kind, double horizon, size_t order, double param, double* out,
                                 size_t out_len);

/* Filter designs. */
SF_API sf_status sf_family_parse(const char* name, sf_family* out);
SF_API sf_status sf_design_create(const sf_design_params* params, sf_design** out);
SF_API void sf_design_destroy(sf_design* design);
SF_API sf_status sf_design_get_info(const sf_design* design, sf_design_info* out);
SF_API sf_status sf_design_poles(const sf_design* design, double* re, double* im, size_t len);
SF_API sf_status sf_design_factor(const sf_design* design, size_t index, sf_factor* out);
SF_API sf_status sf_design_transfer(const sf_design* design, double re, double im, double* out_re, double* out_im);
SF_API sf_status sf_design_phase_delay(const sf_design* design, double omega, double* out);
SF_API sf_status sf_design_group_delay(const sf_design* design, double omega, double* out);

/* Domain coloring of the prototype characteristic polynomial, written as PPM. */
SF_API sf_status sf_render_poly(const sf_design_params* params, double re_min, double re_max, double im_min,
                                double im_max, size_t width, size_t height, const char* path);

/* Experiment configurations (JSON). */
SF_API sf_status sf_config_load(const char* path, sf_config** out);
SF_API sf_status sf_config_parse(const char* text, sf_config** out);
SF_API void sf_config_destroy(sf_config* config);
SF_API sf_status sf_config_serialize(const sf_config* config, char* buf, size_t len, size_t* needed);
SF_API sf_status sf_config_set_seed(sf_config* config, uint64_t seed);
SF_API sf_status sf_config_set_threads(sf_config* config, unsigned threads);
SF_API sf_status sf_config_set_shift_mode(sf_config* config, sf_shift_mode mode);
SF_API sf_status sf_config_order_count(const sf_config* config, size_t* out);
SF_API sf_status sf_config_order(const sf_config* config, size_t index, int* out);
SF_API sf_status sf_config_truncation_count(const sf_config* config, size_t* out);
SF_API sf_status sf_config_truncation(const sf_config* config, size_t index, size_t* out);

/* One (order, truncation) cell of a configuration. */
SF_API sf_status sf_simulate(const sf_config* config, int order, size_t truncation, sf_error_report* out);
SF_API sf_status sf_validate(const sf_config* config, int order, size_t truncation, double step, sf_discrepancy* out);
/* CSV of t, u, g, x, x* reconstructed on grid_points equally spaced times. */
SF_API sf_status sf_emit_signals(const sf_config* config, int order, size_t truncation, size_t grid_points,
                                 const char* path);

/* Whole tables. */
SF_API sf_status sf_experiment_run(const sf_config* config, sf_progress_fn progress, void* user, sf_table** out);
SF_API void sf_table_destroy(sf_table* table);
SF_API sf_status sf_table_cell_count(const sf_table* table, size_t* out);
SF_API sf_status sf_table_cell(const sf_table* table, size_t index, int* order, size_t* truncation,
                               sf_error_report* report);
SF_API sf_status sf_table_csv(const sf_table* table, char* buf, size_t len, size_t* needed);
SF_API sf_status sf_table_summary(const sf_table* table, char* buf, size_t len, size_t* needed);

/* Cutoff calibration from the configuration's calibration block. */
SF_API sf_status sf_calibrate(const sf_config* config, sf_calibration** out);
SF_API void sf_calibration_destroy(sf_calibration* calibration);
SF_API sf_status sf_calibration_point_count(const sf_calibration* calibration, size_t* out);
SF_API sf_status sf_calibration_get_point(const sf_calibration* calibration, size_t index, sf_calibration_point* out);
SF_API sf_status sf_calibration_consensus(const sf_calibration* calibration, double* cutoff, double* spread);
SF_API sf_status sf_calibration_report(const sf_calibration* calibration, char* buf, size_t len, size_t* needed);

#ifdef __cplusplus
}
#endif

#endif /* SPECFILT_H */
