/*
 * Copyright 2026 The wiretap-evt Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#ifndef WIRETAP_WIRETAP_H
#define WIRETAP_WIRETAP_H

/* C interface to the wiretap library. Every call returns a wt_status; on
 * failure wt_last_error() gives a message for the calling thread. Objects
 * returned through opaque handles are released with the matching _free. */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(WIRETAP_BUILDING)
#    define WT_API __declspec(dllexport)
#  else
#    define WT_API __declspec(dllimport)
#  endif
#else
#  define WT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum wt_status {
  WT_OK = 0,
  WT_ERR_DOMAIN = 1,
  WT_ERR_DEGENERATE = 2,
  WT_ERR_NUMERIC = 3,
  WT_ERR_RANGE = 4,
  WT_ERR_IO = 5,
  WT_ERR_USAGE = 6,
  WT_ERR_NULL_ARGUMENT = 7,
  WT_ERR_INTERNAL = 8
} wt_status;

WT_API const char* wt_last_error(void);
WT_API const char* wt_status_name(wt_status status);
WT_API const char* wt_version(void);

/* ---- special functions ---- */

WT_API wt_status wt_ln_gamma(double x, double* out);
WT_API wt_status wt_lower_incomplete_gamma(double s, double z, double* out);
WT_API wt_status wt_ln_lower_incomplete_gamma(double s, double z, double* out);
WT_API wt_status wt_regularized_gamma_q(double s, double z, double* out);
WT_API wt_status wt_inverse_regularized_gamma_q(double s, double q, double* out);
WT_API wt_status wt_claim1_bounds(double s, double z, double* lower, double* upper);

/* ---- extreme values ---- */

WT_API wt_status wt_normalizing_constants(int64_t n, int dof, double* a, double* b);
WT_API wt_status wt_gumbel_cdf(double x, double location, double scale, double* out);
WT_API wt_status wt_threshold_eve(int64_t eves, double* out);
WT_API wt_status wt_threshold_user(int64_t users, int antennas, double* out);

/* ---- outage formulas ---- */

typedef struct wt_shape {
  int64_t users;    /* K */
  int64_t eves;     /* M */
  int antennas;     /* t */
  double power;     /* P */
} wt_shape;

typedef enum wt_strategy { WT_SERIES = 0, WT_QUADRATURE = 1 } wt_strategy;

typedef enum wt_user_threshold {
  WT_USER_THRESHOLD_DEFAULT = -1,
  WT_USER_THRESHOLD_EXACT = 0,
  WT_USER_THRESHOLD_ASYMPTOTIC = 1
} wt_user_threshold;

/* n_terms is used by WT_SERIES only; converged may be NULL. */
WT_API wt_status wt_theorem1_cdf(const wt_shape* shape, double alpha, wt_strategy strategy,
                                 int n_terms, double* value, int* converged);
WT_API wt_status wt_lemma1_upper_cdf(const wt_shape* shape, double alpha,
                                     wt_user_threshold threshold, double* out);
WT_API wt_status wt_lemma2_lower_cdf(const wt_shape* shape, double alpha,
                                     wt_user_threshold threshold, double* out);
WT_API wt_status wt_lambda_factor(const wt_shape* shape, double alpha, double* out);
WT_API wt_status wt_corollary_bounds(const wt_shape* shape, double alpha, double* lower,
                                     double* upper);
WT_API wt_status wt_critical_eves(int64_t users, int antennas, double alpha, double* out);
WT_API wt_status wt_required_users(double eves, int antennas, double alpha,
                                   double target_lambda, double* out);

/* ---- Monte Carlo ---- */

typedef enum wt_conditioning {
  WT_COND_NONE = 0,
  WT_COND_EVE_ABOVE = 1,
  WT_COND_USER_ABOVE = 2
} wt_conditioning;

typedef enum wt_conditioning_impl { WT_IMPL_REJECTION = 0, WT_IMPL_POT = 1 } wt_conditioning_impl;

typedef struct wt_sim_config {
  wt_shape shape;
  int64_t trials;
  uint64_t seed;
  wt_conditioning conditioning;
  wt_conditioning_impl conditioning_impl;
  unsigned threads; /* 0: all cores */
} wt_sim_config;

WT_API void wt_sim_config_init(wt_sim_config* cfg);

typedef struct wt_ecdf wt_ecdf;

WT_API wt_status wt_simulate(const wt_sim_config* cfg, wt_ecdf** out);
WT_API wt_status wt_ecdf_at(const wt_ecdf* ecdf, double x, double* out);
/* Sorted samples, owned by the handle. */
WT_API wt_status wt_ecdf_samples(const wt_ecdf* ecdf, const double** data, size_t* n);
WT_API wt_status wt_ecdf_acceptance_rate(const wt_ecdf* ecdf, double* out);
WT_API void wt_ecdf_free(wt_ecdf* ecdf);

WT_API wt_status wt_dkw_epsilon(size_t n, double delta, double* out);
WT_API wt_status wt_exceedance_check(int64_t eves, int64_t trials, uint64_t seed,
                                     unsigned threads, double* p_exactly_one,
                                     double* p_more_than_one, double* mean_count);
WT_API wt_status wt_gumbel_convergence_ks(int64_t n, int dof, int64_t n_maxima, uint64_t seed,
                                          unsigned threads, double* out);

/* ---- experiments ---- */

typedef enum wt_experiment {
  WT_FIG1 = 0,
  WT_FIG2 = 1,
  WT_FIG3 = 2,
  WT_OUTAGE = 3,
  WT_SCALING = 4,
  WT_VALIDATE = 5
} wt_experiment;

typedef enum wt_format { WT_CSV = 0, WT_JSON = 1 } wt_format;

#define WT_MAX_ANTENNA_VALUES 16

typedef struct wt_experiment_spec {
  wt_experiment experiment;
  int64_t users;
  int64_t eves;
  int antennas[WT_MAX_ANTENNA_VALUES];
  size_t n_antennas;
  double power;
  double alpha_min;
  double alpha_max;
  int alpha_steps;
  double alpha;          /* fig3 and scaling */
  int64_t trials;
  uint64_t seed;
  int n_terms;
  wt_conditioning conditioning;
  wt_conditioning_impl conditioning_impl;
  wt_user_threshold user_threshold;
  int64_t eves_min;      /* fig3 sweep */
  int64_t eves_max;
  int64_t eves_step;
  double target_lambda;  /* scaling */
  double delta;          /* DKW level */
  char suite[16];        /* validate */
  unsigned threads;
  wt_format format;
} wt_experiment_spec;

/* Fills the defaults for the given experiment. */
WT_API void wt_experiment_spec_init(wt_experiment_spec* spec, wt_experiment experiment);

/* Rendered output of an experiment: a table, a scaling report or a
 * validation report. */
typedef struct wt_output wt_output;

WT_API wt_status wt_run(const wt_experiment_spec* spec, wt_output** out);
WT_API const char* wt_output_text(const wt_output* out);
WT_API size_t wt_output_size(const wt_output* out);
/* 1 unless a validation check failed. */
WT_API int wt_output_passed(const wt_output* out);
WT_API wt_status wt_output_write(const wt_output* out, const char* path);
WT_API void wt_output_free(wt_output* out);

/* Tabular access for fig1, fig2, fig3 and outage. */
typedef struct wt_table wt_table;

WT_API wt_status wt_run_table(const wt_experiment_spec* spec, wt_table** out);
WT_API size_t wt_table_columns(const wt_table* table);
WT_API size_t wt_table_rows(const wt_table* table);
WT_API const char* wt_table_column_name(const wt_table* table, size_t column);
/* present is set to 0 for an empty cell. */
WT_API wt_status wt_table_cell(const wt_table* table, size_t row, size_t column, double* value,
                               int* present);
WT_API wt_status wt_table_render(const wt_table* table, wt_format format, wt_output** out);
WT_API void wt_table_free(wt_table* table);

#ifdef __cplusplus
}
#endif

#endif /* WIRETAP_WIRETAP_H */
