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
#include <math.h>
#include <stdio.h>
#include <string.h>

#include "wiretap/wiretap.h"

static int failures = 0;

#define EXPECT(cond)                                              \
  do {                                                            \
    if (!(cond)) {                                                \
      fprintf(stderr, "%s:%d: failed: %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                 \
    }                                                             \
  } while (0)

static int near(double a, double b, double tol) { return fabs(a - b) <= tol * fabs(b); }

static void special_functions(void) {
  double v = 0.0, lo = 0.0, hi = 0.0;
  EXPECT(wt_lower_incomplete_gamma(0.5, 1.0, &v) == WT_OK);
  EXPECT(near(v, 1.493648265624854, 1e-14));
  EXPECT(wt_inverse_regularized_gamma_q(4.0, 0.001, &v) == WT_OK);
  EXPECT(near(v, 13.06224077918807, 1e-13));
  EXPECT(wt_claim1_bounds(0.5, 1.0, &lo, &hi) == WT_OK);
  EXPECT(lo < hi);
  EXPECT(wt_claim1_bounds(1.0, 1.0, &lo, &hi) == WT_ERR_DEGENERATE);
  EXPECT(strlen(wt_last_error()) > 0);
  EXPECT(wt_lower_incomplete_gamma(-1.0, 1.0, &v) == WT_ERR_DOMAIN);
  EXPECT(wt_lower_incomplete_gamma(1.0, 1.0, NULL) == WT_ERR_NULL_ARGUMENT);
  EXPECT(wt_ln_gamma(3.0, &v) == WT_OK);
  EXPECT(strlen(wt_last_error()) == 0);
}

static void outage(void) {
  wt_shape s = {1000, 1000, 4, 1.0};
  double v = 0.0, lo = 0.0, hi = 0.0;
  int converged = 0;
  EXPECT(wt_theorem1_cdf(&s, 2.0, WT_QUADRATURE, 0, &v, &converged) == WT_OK);
  EXPECT(near(v, 0.9435748159523323, 1e-10));
  EXPECT(converged == 1);
  EXPECT(wt_critical_eves(1000, 4, 2.0, &v) == WT_OK);
  EXPECT(near(v, 182.5392111847403, 1e-12));
  s.eves = 18;
  EXPECT(wt_corollary_bounds(&s, 2.0, &lo, &hi) == WT_OK);
  EXPECT(near(hi, 0.09860895028073146, 1e-12));
  EXPECT(wt_required_users(1e9, 1, 4.0, 1e-6, &v) == WT_ERR_RANGE);
  s.users = 1;
  EXPECT(wt_lambda_factor(&s, 2.0, &v) == WT_ERR_DOMAIN);
}

static void simulation(void) {
  wt_sim_config cfg;
  wt_ecdf* a = NULL;
  wt_ecdf* b = NULL;
  const double* xa = NULL;
  const double* xb = NULL;
  size_t na = 0, nb = 0;
  double f = 0.0;
  wt_sim_config_init(&cfg);
  cfg.shape.users = 30;
  cfg.shape.eves = 30;
  cfg.shape.antennas = 2;
  cfg.trials = 2000;
  cfg.seed = 99;
  cfg.threads = 1;
  EXPECT(wt_simulate(&cfg, &a) == WT_OK);
  cfg.threads = 3;
  EXPECT(wt_simulate(&cfg, &b) == WT_OK);
  EXPECT(wt_ecdf_samples(a, &xa, &na) == WT_OK);
  EXPECT(wt_ecdf_samples(b, &xb, &nb) == WT_OK);
  EXPECT(na == 2000 && nb == 2000);
  EXPECT(memcmp(xa, xb, na * sizeof(double)) == 0);
  EXPECT(wt_ecdf_at(a, 1e9, &f) == WT_OK && f == 1.0);
  wt_ecdf_free(a);
  wt_ecdf_free(b);
  cfg.trials = 0;
  EXPECT(wt_simulate(&cfg, &a) == WT_ERR_DOMAIN);
  EXPECT(a == NULL);
}

static void experiments(void) {
  wt_experiment_spec spec;
  wt_output* out = NULL;
  wt_table* table = NULL;
  double v = 0.0;
  int present = 0;
  wt_experiment_spec_init(&spec, WT_FIG3);
  spec.eves_min = 170;
  spec.eves_max = 190;
  EXPECT(wt_run_table(&spec, &table) == WT_OK);
  EXPECT(wt_table_rows(table) == 21);
  EXPECT(wt_table_columns(table) == 7);
  EXPECT(strcmp(wt_table_column_name(table, 6), "critical_flag") == 0);
  EXPECT(wt_table_cell(table, 13, 6, &v, &present) == WT_OK && present && v == 1.0);
  EXPECT(wt_table_cell(table, 99, 0, &v, &present) == WT_ERR_RANGE);
  EXPECT(wt_table_render(table, WT_CSV, &out) == WT_OK);
  EXPECT(strncmp(wt_output_text(out), "M,lambda,", 9) == 0);
  wt_output_free(out);
  wt_table_free(table);

  wt_experiment_spec_init(&spec, WT_SCALING);
  spec.format = WT_JSON;
  EXPECT(wt_run(&spec, &out) == WT_OK);
  EXPECT(strstr(wt_output_text(out), "\"required_K\"") != NULL);
  EXPECT(wt_output_write(out, "/nonexistent-dir/x.json") == WT_ERR_IO);
  wt_output_free(out);

  wt_experiment_spec_init(&spec, WT_FIG2);
  spec.alpha_min = 0.5;
  EXPECT(wt_run(&spec, &out) == WT_ERR_USAGE);

  wt_experiment_spec_init(&spec, WT_VALIDATE);
  strcpy(spec.suite, "evt");
  EXPECT(wt_run(&spec, &out) == WT_OK);
  EXPECT(wt_output_size(out) > 0);
  wt_output_free(out);
}

int main(void) {
  special_functions();
  outage();
  simulation();
  experiments();
  if (failures == 0) printf("capi: all checks passed\n");
  return failures == 0 ? 0 : 1;
}
