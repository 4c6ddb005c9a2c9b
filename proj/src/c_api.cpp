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
#include "wiretap/wiretap.h"

#include <cstring>
#include <exception>
#include <memory>
#include <new>
#include <string>

#include "wiretap/errors.hpp"
#include "wiretap/evt.hpp"
#include "wiretap/experiments.hpp"
#include "wiretap/montecarlo.hpp"
#include "wiretap/outage.hpp"
#include "wiretap/specfun.hpp"

struct wt_ecdf {
  wiretap::mc::EmpiricalCdf cdf;
};

struct wt_output {
  std::string text;
  bool passed = true;
};

struct wt_table {
  wiretap::exp::CurveTable table;
};

namespace {

thread_local std::string g_last_error;

wt_status fail(wt_status status, const char* what) {
  g_last_error = what;
  return status;
}

// Runs fn, translating exceptions into status codes.
template <class F>
wt_status guard(F&& fn) {
  try {
    fn();
    g_last_error.clear();
    return WT_OK;
  } catch (const wiretap::Error& e) {
    return fail(static_cast<wt_status>(static_cast<int>(e.code())), e.what());
  } catch (const std::bad_alloc&) {
    return fail(WT_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(WT_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(WT_ERR_INTERNAL, "unknown error");
  }
}

template <class... P>
bool any_null(P*... p) {
  return ((p == nullptr) || ...);
}

#define WT_REQUIRE(...) \
  if (any_null(__VA_ARGS__)) return fail(WT_ERR_NULL_ARGUMENT, "null pointer argument")

wiretap::outage::SystemShape to_shape(const wt_shape& s) {
  wiretap::outage::SystemShape out;
  out.users = s.users;
  out.eves = s.eves;
  out.antennas = s.antennas;
  out.power = s.power;
  return out;
}

wiretap::outage::UserThreshold to_threshold(wt_user_threshold t) {
  return t == WT_USER_THRESHOLD_ASYMPTOTIC ? wiretap::outage::UserThreshold::asymptotic
                                           : wiretap::outage::UserThreshold::exact;
}

wiretap::mc::Conditioning to_conditioning(wt_conditioning c) {
  switch (c) {
    case WT_COND_EVE_ABOVE: return wiretap::mc::Conditioning::eve_above;
    case WT_COND_USER_ABOVE: return wiretap::mc::Conditioning::user_above;
    default: return wiretap::mc::Conditioning::none;
  }
}

wiretap::mc::ConditioningImpl to_impl(wt_conditioning_impl c) {
  return c == WT_IMPL_POT ? wiretap::mc::ConditioningImpl::pot_model
                          : wiretap::mc::ConditioningImpl::rejection;
}

wiretap::exp::Format to_format(wt_format f) {
  return f == WT_JSON ? wiretap::exp::Format::json : wiretap::exp::Format::csv;
}

wiretap::exp::ExperimentSpec to_spec(const wt_experiment_spec& c) {
  using namespace wiretap;
  exp::ExperimentSpec s;
  switch (c.experiment) {
    case WT_FIG1: s.experiment = exp::Experiment::fig1; break;
    case WT_FIG2: s.experiment = exp::Experiment::fig2; break;
    case WT_FIG3: s.experiment = exp::Experiment::fig3; break;
    case WT_OUTAGE: s.experiment = exp::Experiment::outage; break;
    case WT_SCALING: s.experiment = exp::Experiment::scaling; break;
    case WT_VALIDATE: s.experiment = exp::Experiment::validate; break;
    default: throw UsageError("unknown experiment");
  }
  if (c.n_antennas > WT_MAX_ANTENNA_VALUES) throw UsageError("too many antenna values");
  s.users = c.users;
  s.eves = c.eves;
  s.antennas.assign(c.antennas, c.antennas + c.n_antennas);
  s.power = c.power;
  s.alpha_grid = {c.alpha_min, c.alpha_max, c.alpha_steps};
  s.alpha = c.alpha;
  s.trials = c.trials;
  s.seed = c.seed;
  s.n_terms = c.n_terms;
  s.conditioning = to_conditioning(c.conditioning);
  s.conditioning_impl = to_impl(c.conditioning_impl);
  if (c.user_threshold != WT_USER_THRESHOLD_DEFAULT) s.user_threshold = to_threshold(c.user_threshold);
  s.eves_min = c.eves_min;
  s.eves_max = c.eves_max;
  s.eves_step = c.eves_step;
  s.target_lambda = c.target_lambda;
  s.delta = c.delta;
  s.suite = std::string(c.suite, strnlen(c.suite, sizeof c.suite));
  s.threads = c.threads;
  return s;
}

}  // namespace

extern "C" {

const char* wt_last_error(void) { return g_last_error.c_str(); }

const char* wt_status_name(wt_status status) {
  switch (status) {
    case WT_OK: return "ok";
    case WT_ERR_DOMAIN: return "domain error";
    case WT_ERR_DEGENERATE: return "degenerate input";
    case WT_ERR_NUMERIC: return "numeric error";
    case WT_ERR_RANGE: return "range error";
    case WT_ERR_IO: return "I/O error";
    case WT_ERR_USAGE: return "usage error";
    case WT_ERR_NULL_ARGUMENT: return "null argument";
    case WT_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* wt_version(void) { return "1.0.0"; }

wt_status wt_ln_gamma(double x, double* out) {
  WT_REQUIRE(out);
  return guard([&] { *out = wiretap::specfun::ln_gamma(x); });
}

wt_status wt_lower_incomplete_gamma(double s, double z, double* out) {
  WT_REQUIRE(out);
  return guard([&] { *out = wiretap::specfun::lower_incomplete_gamma(s, z); });
}

wt_status wt_ln_lower_incomplete_gamma(double s, double z, double* out) {
  WT_REQUIRE(out);
  return guard([&] { *out = wiretap::specfun::ln_lower_incomplete_gamma(s, z); });
}

wt_status wt_regularized_gamma_q(double s, double z, double* out) {
  WT_REQUIRE(out);
  return guard([&] { *out = wiretap::specfun::regularized_gamma_q(s, z); });
}

wt_status wt_inverse_regularized_gamma_q(double s, double q, double* out) {
  WT_REQUIRE(out);
  return guard([&] { *out = wiretap::specfun::inverse_regularized_gamma_q(s, q); });
}

wt_status wt_claim1_bounds(double s, double z, double* lower, double* upper) {
  WT_REQUIRE(lower, upper);
  return guard([&] {
    const auto b = wiretap::specfun::claim1_bounds(s, z);
    *lower = b.lower;
    *upper = b.upper;
  });
}

wt_status wt_normalizing_constants(int64_t n, int dof, double* a, double* b) {
  WT_REQUIRE(a, b);
  return guard([&] {
    const auto c = wiretap::evt::normalizing_constants(n, dof);
    *a = c.a;
    *b = c.b;
  });
}

wt_status wt_gumbel_cdf(double x, double location, double scale, double* out) {
  WT_REQUIRE(out);
  return guard([&] { *out = wiretap::evt::gumbel_cdf(x, {location, scale}); });
}

wt_status wt_threshold_eve(int64_t eves, double* out) {
  WT_REQUIRE(out);
  return guard([&] { *out = wiretap::evt::threshold_eve(eves); });
}

wt_status wt_threshold_user(int64_t users, int antennas, double* out) {
  WT_REQUIRE(out);
  return guard([&] { *out = wiretap::evt::threshold_user(users, antennas); });
}

wt_status wt_theorem1_cdf(const wt_shape* shape, double alpha, wt_strategy strategy, int n_terms,
                          double* value, int* converged) {
  WT_REQUIRE(shape, value);
  return guard([&] {
    wiretap::outage::Theorem1Strategy st = wiretap::outage::QuadratureStrategy{};
    if (strategy == WT_SERIES) st = wiretap::outage::SeriesStrategy{n_terms};
    const auto v = wiretap::outage::theorem1_cdf(to_shape(*shape), alpha, st);
    *value = v.value;
    if (converged) *converged = v.converged ? 1 : 0;
  });
}

wt_status wt_lemma1_upper_cdf(const wt_shape* shape, double alpha, wt_user_threshold threshold,
                              double* out) {
  WT_REQUIRE(shape, out);
  return guard([&] {
    const auto c = wiretap::outage::model_constants(to_shape(*shape), to_threshold(threshold));
    *out = wiretap::outage::lemma1_upper_cdf(c, alpha).value;
  });
}

wt_status wt_lemma2_lower_cdf(const wt_shape* shape, double alpha, wt_user_threshold threshold,
                              double* out) {
  WT_REQUIRE(shape, out);
  return guard([&] {
    const auto c = wiretap::outage::model_constants(to_shape(*shape), to_threshold(threshold));
    *out = wiretap::outage::lemma2_lower_cdf(c, alpha).value;
  });
}

wt_status wt_lambda_factor(const wt_shape* shape, double alpha, double* out) {
  WT_REQUIRE(shape, out);
  return guard([&] { *out = wiretap::outage::lambda_factor(to_shape(*shape), alpha); });
}

wt_status wt_corollary_bounds(const wt_shape* shape, double alpha, double* lower, double* upper) {
  WT_REQUIRE(shape, lower, upper);
  return guard([&] {
    const auto cb = wiretap::outage::corollary_bounds(to_shape(*shape), alpha);
    *lower = cb.bounds.lower;
    *upper = cb.bounds.upper;
  });
}

wt_status wt_critical_eves(int64_t users, int antennas, double alpha, double* out) {
  WT_REQUIRE(out);
  return guard([&] { *out = wiretap::outage::critical_eves(users, antennas, alpha); });
}

wt_status wt_required_users(double eves, int antennas, double alpha, double target_lambda,
                            double* out) {
  WT_REQUIRE(out);
  return guard(
      [&] { *out = wiretap::outage::required_users(eves, antennas, alpha, target_lambda); });
}

void wt_sim_config_init(wt_sim_config* cfg) {
  if (!cfg) return;
  *cfg = {};
  cfg->shape = {2, 2, 1, 1.0};
  cfg->trials = 1000;
  cfg->conditioning = WT_COND_NONE;
  cfg->conditioning_impl = WT_IMPL_REJECTION;
}

wt_status wt_simulate(const wt_sim_config* cfg, wt_ecdf** out) {
  WT_REQUIRE(cfg, out);
  *out = nullptr;
  return guard([&] {
    wiretap::mc::SimConfig c;
    c.shape = to_shape(cfg->shape);
    c.trials = cfg->trials;
    c.master_seed = cfg->seed;
    c.conditioning = to_conditioning(cfg->conditioning);
    c.conditioning_impl = to_impl(cfg->conditioning_impl);
    c.threads = cfg->threads;
    auto h = std::make_unique<wt_ecdf>();
    h->cdf = c.conditioning == wiretap::mc::Conditioning::none
                 ? wiretap::mc::simulate_cdf(c)
                 : wiretap::mc::simulate_conditional_cdf(c);
    *out = h.release();
  });
}

wt_status wt_ecdf_at(const wt_ecdf* ecdf, double x, double* out) {
  WT_REQUIRE(ecdf, out);
  *out = ecdf->cdf.at(x);
  return WT_OK;
}

wt_status wt_ecdf_samples(const wt_ecdf* ecdf, const double** data, size_t* n) {
  WT_REQUIRE(ecdf, data, n);
  *data = ecdf->cdf.sorted_samples.data();
  *n = ecdf->cdf.sorted_samples.size();
  return WT_OK;
}

wt_status wt_ecdf_acceptance_rate(const wt_ecdf* ecdf, double* out) {
  WT_REQUIRE(ecdf, out);
  *out = ecdf->cdf.meta.acceptance_rate;
  return WT_OK;
}

void wt_ecdf_free(wt_ecdf* ecdf) { delete ecdf; }

wt_status wt_dkw_epsilon(size_t n, double delta, double* out) {
  WT_REQUIRE(out);
  return guard([&] { *out = wiretap::mc::dkw_epsilon(n, delta); });
}

wt_status wt_exceedance_check(int64_t eves, int64_t trials, uint64_t seed, unsigned threads,
                              double* p_exactly_one, double* p_more_than_one,
                              double* mean_count) {
  WT_REQUIRE(p_exactly_one, p_more_than_one, mean_count);
  return guard([&] {
    const auto e = wiretap::mc::exceedance_check(eves, trials, seed, threads);
    *p_exactly_one = e.p_exactly_one;
    *p_more_than_one = e.p_more_than_one;
    *mean_count = e.mean_count;
  });
}

wt_status wt_gumbel_convergence_ks(int64_t n, int dof, int64_t n_maxima, uint64_t seed,
                                   unsigned threads, double* out) {
  WT_REQUIRE(out);
  return guard(
      [&] { *out = wiretap::mc::gumbel_convergence_ks(n, dof, n_maxima, seed, threads); });
}

void wt_experiment_spec_init(wt_experiment_spec* spec, wt_experiment experiment) {
  if (!spec) return;
  *spec = {};
  spec->experiment = experiment;
  spec->users = 30;
  spec->eves = 30;
  spec->antennas[0] = 4;
  spec->n_antennas = 1;
  spec->power = 1.0;
  spec->alpha_min = 1.0;
  spec->alpha_max = 4.0;
  spec->alpha_steps = 200;
  spec->alpha = 2.0;
  spec->trials = 100000;
  spec->seed = 42;
  spec->n_terms = 100;
  spec->conditioning = WT_COND_NONE;
  spec->conditioning_impl = WT_IMPL_REJECTION;
  spec->user_threshold = WT_USER_THRESHOLD_DEFAULT;
  spec->eves_min = 10;
  spec->eves_max = 1000;
  spec->eves_step = 1;
  spec->target_lambda = 1.0;
  spec->delta = 0.01;
  std::strcpy(spec->suite, "all");
  spec->threads = 0;
  spec->format = WT_CSV;
  switch (experiment) {
    case WT_FIG1:
      spec->antennas[0] = 2;
      spec->antennas[1] = 4;
      spec->antennas[2] = 8;
      spec->n_antennas = 3;
      break;
    case WT_FIG2:
    case WT_FIG3:
      spec->users = 1000;
      spec->eves = 1000;
      break;
    case WT_OUTAGE: spec->trials = 0; break;
    case WT_SCALING: spec->eves = 182; break;
    case WT_VALIDATE: break;
  }
}

wt_status wt_run(const wt_experiment_spec* spec, wt_output** out) {
  WT_REQUIRE(spec, out);
  *out = nullptr;
  return guard([&] {
    auto s = to_spec(*spec);
    s.validate();
    auto h = std::make_unique<wt_output>();
    const auto format = to_format(spec->format);
    switch (s.experiment) {
      case wiretap::exp::Experiment::scaling: h->text = wiretap::exp::scaling_report(s, format); break;
      case wiretap::exp::Experiment::validate: {
        const auto report = wiretap::exp::validate(s.suite, s.seed, s.trials, s.threads);
        h->text = report.to_json();
        h->passed = report.passed();
        break;
      }
      default: h->text = wiretap::exp::render(wiretap::exp::run_experiment(s), format); break;
    }
    *out = h.release();
  });
}

const char* wt_output_text(const wt_output* out) { return out ? out->text.c_str() : ""; }

size_t wt_output_size(const wt_output* out) { return out ? out->text.size() : 0; }

int wt_output_passed(const wt_output* out) { return out && out->passed ? 1 : 0; }

wt_status wt_output_write(const wt_output* out, const char* path) {
  WT_REQUIRE(out, path);
  return guard([&] { wiretap::exp::write_file(path, out->text); });
}

void wt_output_free(wt_output* out) { delete out; }

wt_status wt_run_table(const wt_experiment_spec* spec, wt_table** out) {
  WT_REQUIRE(spec, out);
  *out = nullptr;
  return guard([&] {
    auto h = std::make_unique<wt_table>();
    h->table = wiretap::exp::run_experiment(to_spec(*spec));
    *out = h.release();
  });
}

size_t wt_table_columns(const wt_table* table) { return table ? table->table.columns.size() : 0; }

size_t wt_table_rows(const wt_table* table) { return table ? table->table.rows.size() : 0; }

const char* wt_table_column_name(const wt_table* table, size_t column) {
  if (!table || column >= table->table.columns.size()) return nullptr;
  return table->table.columns[column].name.c_str();
}

wt_status wt_table_cell(const wt_table* table, size_t row, size_t column, double* value,
                        int* present) {
  WT_REQUIRE(table, value, present);
  if (row >= table->table.rows.size() || column >= table->table.columns.size()) {
    return fail(WT_ERR_RANGE, "cell index out of range");
  }
  const auto& c = table->table.rows[row][column];
  *present = c ? 1 : 0;
  *value = c ? *c : 0.0;
  return WT_OK;
}

wt_status wt_table_render(const wt_table* table, wt_format format, wt_output** out) {
  WT_REQUIRE(table, out);
  *out = nullptr;
  return guard([&] {
    auto h = std::make_unique<wt_output>();
    h->text = wiretap::exp::render(table->table, to_format(format));
    *out = h.release();
  });
}

void wt_table_free(wt_table* table) { delete table; }

}  // extern "C"
