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
#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <sstream>

#include "quadrature.hpp"
#include "wiretap/errors.hpp"
#include "wiretap/evt.hpp"
#include "wiretap/experiments.hpp"
#include "wiretap/format.hpp"
#include "wiretap/rng.hpp"
#include "wiretap/specfun.hpp"

namespace wiretap::exp {
namespace {

constexpr std::int64_t kDraws = 10000;
constexpr double kDelta = 0.01;
// Kolmogorov critical value at level 1e-3, scaled by sqrt(n).
constexpr double kKsCritical = 1.95;
constexpr std::int64_t kDebugTrials = 20000;
// The lemma and corollary expressions coincide analytically at alpha = 1.
constexpr double kOrderRounding = 1e-14;

// Per-suite streams keep each suite's report independent of which other
// suites ran in the same invocation.
enum SuiteStream : std::uint64_t { kSpecfun = 1, kEvt = 2, kOutage = 3, kMonteCarlo = 4 };

class Recorder {
 public:
  explicit Recorder(std::vector<Check>& out) : out_(out) {}

  void at_most(const std::string& name, double measured, double max, std::string detail = {}) {
    add(name, measured, std::nullopt, max, measured <= max, std::move(detail));
  }
  void at_least(const std::string& name, double measured, double min, std::string detail = {}) {
    add(name, measured, min, std::nullopt, measured >= min, std::move(detail));
  }
  void within(const std::string& name, double measured, double min, double max,
              std::string detail = {}) {
    add(name, measured, min, max, measured >= min && measured <= max, std::move(detail));
  }
  void below(const std::string& name, double measured, double bound, std::string detail = {}) {
    add(name, measured, std::nullopt, bound, measured < bound, std::move(detail));
  }
  void zero(const std::string& name, std::int64_t count, std::string detail = {}) {
    add(name, static_cast<double>(count), 0.0, 0.0, count == 0, std::move(detail));
  }
  // Runs fn; an exception becomes a failed check instead of aborting the suite.
  template <class F>
  void guarded(const std::string& name, F&& fn) {
    try {
      fn();
    } catch (const std::exception& e) {
      add(name, std::numeric_limits<double>::quiet_NaN(), std::nullopt, std::nullopt, false,
          std::string("exception: ") + e.what());
    }
  }

 private:
  void add(const std::string& name, double measured, std::optional<double> min,
           std::optional<double> max, bool passed, std::string detail) {
    if (std::isnan(measured)) passed = false;
    out_.push_back({name, measured, min, max, passed, std::move(detail)});
  }
  std::vector<Check>& out_;
};

double uniform(rng::Xoshiro256& g, double lo, double hi) {
  return lo + (hi - lo) * (1.0 - g.uniform_open0());
}

// Open interval (lo, hi).
double uniform_open(rng::Xoshiro256& g, double lo, double hi) {
  for (;;) {
    const double v = uniform(g, lo, hi);
    if (v > lo && v < hi) return v;
  }
}

// gamma(s, z) by direct quadrature; tau = u^{1/s} removes the endpoint
// singularity for s < 1.
double gamma_by_quadrature(double s, double z) {
  std::vector<double> breaks;
  detail::QuadratureResult r;
  if (s < 1.0) {
    const double top = std::pow(z, s);
    breaks = {0.0, top};
    const double inv = 1.0 / s;
    r = detail::integrate_adaptive(
        [inv](double u) { return inv * std::exp(-std::pow(u, inv)); }, breaks, 0.0, 1e-15);
  } else {
    breaks = {0.0};
    const double mode = s - 1.0;
    if (mode > 0.0 && mode < z) breaks.push_back(mode);
    breaks.push_back(z);
    const double shift = s > 1.0 ? -specfun::ln_gamma(s) : 0.0;
    r = detail::integrate_adaptive(
        [s, shift](double tau) {
          if (tau == 0.0) return s == 1.0 ? std::exp(shift) : 0.0;
          return std::exp((s - 1.0) * std::log(tau) - tau + shift);
        },
        breaks, 0.0, 1e-15);
    return r.value / std::exp(shift);
  }
  return r.value;
}

std::string describe(std::int64_t count, std::int64_t total) {
  return std::to_string(count) + " of " + std::to_string(total);
}

void specfun_suite(Recorder& rec, std::uint64_t seed) {
  rng::Xoshiro256 g(seed, kSpecfun);

  rec.guarded("specfun.claim1_i_strict", [&] {
    std::int64_t violations = 0;
    for (std::int64_t i = 0; i < kDraws; ++i) {
      const double s = (i % 2 == 0) ? uniform_open(g, 0.0, 1.0) : uniform_open(g, 1.0, 10.0);
      const double z = uniform_open(g, 0.0, 30.0);
      const auto m = specfun::claim1_log_margins(s, z);
      if (!(m.below > 0.0 && m.above > 0.0)) ++violations;
    }
    rec.zero("specfun.claim1_i_strict", violations, describe(violations, kDraws) + " draws");
  });

  {
    std::int64_t violations = 0;
    for (std::int64_t i = 0; i < kDraws; ++i) {
      const double s = uniform_open(g, 0.0, 1.0);
      const double lg = specfun::ln_gamma(1.0 + s);
      if (!((s - 1.0) * std::numbers::ln2 < lg && lg < 0.0)) ++violations;
    }
    rec.zero("specfun.claim1_ii_strict", violations, describe(violations, kDraws) + " draws");
  }

  {
    std::int64_t violations = 0;
    for (std::int64_t i = 0; i < kDraws; ++i) {
      double s = uniform(g, 0.0, 50.0);
      if (s == 1.0 || s == 0.0) s = 0.5;
      if (!(specfun::ln_gamma(s) + specfun::ln_gamma(1.0 / s) > 0.0)) ++violations;
    }
    rec.zero("specfun.claim1_iii_strict", violations, describe(violations, kDraws) + " draws");
  }

  rec.guarded("specfun.incgamma_vs_quadrature", [&] {
    double worst = 0.0;
    for (std::int64_t i = 0; i < kDraws; ++i) {
      const double s = uniform(g, 0.0, 20.0);
      const double z = uniform(g, 0.0, 50.0);
      const double ref = gamma_by_quadrature(s, z);
      const double got = specfun::lower_incomplete_gamma(s, z);
      worst = std::max(worst, std::abs(got - ref) / std::abs(ref));
    }
    rec.at_most("specfun.incgamma_vs_quadrature", worst, 1e-12, "max relative error");
  });

  {
    double worst = 0.0;
    for (std::int64_t i = 0; i < 1000; ++i) {
      const double x = uniform(g, 0.0, 100.0);
      const double lhs = specfun::ln_gamma(x + 1.0);
      const double rhs = std::log(x) + specfun::ln_gamma(x);
      worst = std::max(worst, std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)));
    }
    rec.at_most("specfun.gamma_recurrence", worst, 1e-12, "max error of ln Gamma(x+1) - ln x");
  }

  {
    double worst = 0.0;
    for (std::int64_t i = 0; i < 1000; ++i) {
      const double s = uniform(g, 0.0, 20.0);
      const double z = specfun::kSaturationZ * std::max(1.0, s) + 1.0;
      const double v = specfun::lower_incomplete_gamma(s, z);
      worst = std::max(worst, std::abs(v / specfun::gamma_fn(s) - 1.0));
    }
    rec.at_most("specfun.incgamma_saturation", worst, 1e-10);
  }

  {
    std::int64_t violations = 0;
    for (int i = 0; i < 200; ++i) {
      const double s = uniform(g, 0.0, 20.0);
      double prev = 0.0;
      for (int k = 1; k <= 200; ++k) {
        const double v = specfun::lower_incomplete_gamma(s, 0.25 * k);
        if (v < prev) ++violations;
        prev = v;
      }
    }
    rec.zero("specfun.incgamma_monotone_in_z", violations);
  }

  rec.guarded("specfun.inverse_q_roundtrip", [&] {
    double worst = 0.0;
    for (std::int64_t i = 0; i < 1000; ++i) {
      const double s = uniform(g, 0.0, 20.0);
      const double q = uniform_open(g, 0.0, 1.0);
      double z = 0.0;
      try {
        z = specfun::inverse_regularized_gamma_q(s, q);
      } catch (const RangeError&) {
        // Root below the normal range: Q must still exceed q at the smallest normal.
        const double at_min = specfun::regularized_gamma_q(s, std::numeric_limits<double>::min());
        if (!(at_min > q)) worst = std::max(worst, 1.0);
        continue;
      }
      worst = std::max(worst, std::abs(specfun::regularized_gamma_q(s, z) - q));
    }
    rec.at_most("specfun.inverse_q_roundtrip", worst, 1e-10, "max |Q(s, z(q)) - q|");
  });
}

void evt_suite(Recorder& rec) {
  {
    double worst = 0.0;
    for (std::int64_t m : {2LL, 10LL, 30LL, 1000LL, 1000000LL}) {
      worst = std::max(worst, std::abs(m * std::exp(-evt::threshold_eve(m) / 2.0) - 1.0));
    }
    rec.at_most("evt.eve_threshold_calibration", worst, 1e-12, "max |M e^{-u_m/2} - 1|");
  }
  {
    double worst = 0.0;
    for (std::int64_t k : {10LL, 30LL, 1000LL, 1000000LL}) {
      for (int t : {1, 2, 4, 8}) {
        const double u = evt::threshold_user(k, t);
        worst = std::max(worst, std::abs(k * specfun::regularized_gamma_q(t, u / 2.0) - 1.0));
      }
    }
    rec.at_most("evt.user_threshold_calibration", worst, 1e-8, "max |K Q(t, u_k/2) - 1|");
  }
  {
    double worst = 0.0;
    for (std::int64_t k : {2LL, 30LL, 1000LL, 1000000LL}) {
      worst = std::max(worst, std::abs(evt::threshold_user(k, 1) - 2.0 * std::log(k)));
    }
    rec.at_most("evt.user_threshold_t1", worst, 1e-12, "max |u_k - 2 ln K| at t = 1");
  }
  {
    const double u = evt::threshold_user(1000, 4);
    rec.within("evt.user_threshold_K1000_t4", u, 26.0, 26.2);
  }
  {
    const double u = evt::threshold_user(1000000, 4);
    const double b = evt::normalizing_constants(1000000, 8).b;
    rec.at_most("evt.user_threshold_vs_asymptote_K1e6_t4", std::abs(u - b) / u, 0.05,
                "relative gap between exact u_k and b_K");
  }
  {
    std::int64_t violations = 0;
    for (int dof = 2; dof <= 16; dof += 2) {
      double prev = -std::numeric_limits<double>::infinity();
      for (std::int64_t n = 3; n <= 2000; ++n) {
        const double b = evt::normalizing_constants(n, dof).b;
        if (!(b > prev)) ++violations;
        prev = b;
      }
    }
    rec.zero("evt.location_increasing_in_n", violations);
  }
  {
    double worst = 0.0;
    for (int dof : {2, 4, 8}) {
      for (std::int64_t n : {10LL, 1000LL}) {
        const auto p = evt::GumbelParams::from_constants(evt::normalizing_constants(n, dof), 1.5);
        for (int i = 1; i < 100; ++i) {
          const double q = i / 100.0;
          worst = std::max(worst, std::abs(evt::gumbel_cdf(evt::gumbel_quantile(q, p), p) - q) / q);
        }
      }
    }
    rec.at_most("evt.gumbel_quantile_roundtrip", worst, 1e-12);
  }
  {
    const auto p = evt::GumbelParams::from_constants(evt::normalizing_constants(30, 2));
    const double median = p.location - p.scale * std::log(std::numbers::ln2);
    rec.at_most("evt.gumbel_median", std::abs(evt::gumbel_cdf(median, p) - 0.5), 1e-15);
  }
}

outage::SystemShape make_shape(std::int64_t k, std::int64_t m, int t) {
  outage::SystemShape s;
  s.users = k;
  s.eves = m;
  s.antennas = t;
  return s;
}

void outage_suite(Recorder& rec) {
  rec.guarded("outage.series_vs_quadrature", [&] {
    double worst = 0.0;
    std::int64_t converged = 0;
    std::int64_t total = 0;
    const auto alphas = outage::alpha_grid(1.0, 1.4, 41);
    for (std::int64_t n : {30LL, 100LL, 1000LL}) {
      for (int t : {2, 4, 8}) {
        const auto c = outage::model_constants(make_shape(n, n, t));
        for (double a : alphas) {
          ++total;
          outage::OutageValue series;
          try {
            series = outage::theorem1_series(c, a, 100);
          } catch (const NumericError&) {
            continue;
          }
          if (!series.converged) continue;
          ++converged;
          worst = std::max(worst, std::abs(series.value - outage::theorem1_quadrature(c, a).value));
        }
      }
    }
    rec.at_most("outage.series_vs_quadrature", worst, 1e-6,
                describe(converged, total) + " points converged");
    rec.at_least("outage.series_converged_points", static_cast<double>(converged), 1.0);
  });

  for (std::int64_t n : {2LL, 30LL, 1000LL}) {
    const double v = outage::theorem1_cdf(make_shape(n, n, 1), 1.0).value;
    rec.at_most("outage.symmetry_point_K" + std::to_string(n), std::abs(v - 0.5), 1e-9,
                "|F(1) - 1/2| at t = 1, K = M");
  }

  rec.guarded("outage.bound_sandwich", [&] {
    const auto shape = make_shape(1000, 1000, 4);
    const auto exact = outage::model_constants(shape, outage::UserThreshold::exact);
    const auto asym = outage::model_constants(shape, outage::UserThreshold::asymptotic);
    const double top = 0.95 * (1.0 + asym.b_users) / (1.0 + asym.b_eves);
    const auto alphas = outage::alpha_grid(1.0, top, 200);
    std::int64_t order_violations = 0;
    double slack_exact = -1.0;
    double slack_asym = -1.0;
    for (double a : alphas) {
      const auto cb = outage::corollary_bounds(shape, a);
      const double l1 = outage::lemma1_upper_cdf(asym, a).value;
      const double l2 = outage::lemma2_lower_cdf(asym, a).value;
      const double l2x = outage::lemma2_lower_cdf(exact, a).value;
      const double q = outage::theorem1_quadrature(exact, a).value;
      const double qa = outage::theorem1_quadrature(asym, a).value;
      if (!(cb.bounds.lower <= l2 + kOrderRounding)) ++order_violations;
      if (!(l1 <= cb.bounds.upper + kOrderRounding)) ++order_violations;
      if (!(l2 <= l1 + kOrderRounding)) ++order_violations;
      slack_asym = std::max({slack_asym, l2 - qa, qa - l1});
      slack_exact = std::max({slack_exact, l2x - q, q - outage::lemma1_upper_cdf(exact, a).value});
    }
    rec.zero("outage.lemma_corollary_order", order_violations,
             "cor2 <= lemma2 <= lemma1 <= cor1 on " + std::to_string(alphas.size()) + " alphas");
    rec.at_most("outage.quadrature_sandwich_asymptotic", slack_asym, 0.02,
                "max excursion of the quadrature outside [lemma2, lemma1]");
    rec.at_most("outage.quadrature_sandwich_exact", slack_exact, 0.02,
                "max excursion with the exact user threshold");
  });

  {
    std::int64_t violations = 0;
    for (int t : {1, 2, 4, 8}) {
      const auto c = outage::model_constants(make_shape(100, 100, t));
      double prev = -1.0;
      for (double a : outage::alpha_grid(1.0, 4.0, 100)) {
        const double v = outage::theorem1_quadrature(c, a).value;
        if (v < prev - 1e-12) ++violations;
        prev = v;
      }
    }
    rec.zero("outage.quadrature_monotone_in_alpha", violations);
  }
  {
    std::int64_t violations = 0;
    double prev = 0.0;
    for (std::int64_t m = 2; m <= 2000; ++m) {
      const double v = outage::ln_lambda_factor(make_shape(1000, m, 4), 2.0);
      if (m > 2 && !(v > prev)) ++violations;
      prev = v;
    }
    rec.zero("outage.lambda_increasing_in_M", violations);
  }

  const double critical = outage::critical_eves(1000, 4, 2.0);
  rec.within("outage.critical_M", critical, 182.0, 183.0);
  rec.at_most("outage.critical_M_lambda", std::abs(std::log(outage::lambda_factor(
                                              make_shape(1000, 182, 4), 2.0)) -
                                          2.0 * std::log(182.0 / critical)),
              1e-10, "ln Lambda(M=182) against 2 ln(182 / critical_M)");
  rec.within("outage.cor1_upper_M18",
             outage::corollary_bounds(make_shape(1000, 18, 4), 2.0).bounds.upper, 0.096, 0.102);
  rec.within("outage.cor2_lower_M1825",
             outage::corollary_bounds(make_shape(1000, 1825, 4), 2.0).bounds.lower, 0.975, 0.985);

  rec.guarded("outage.required_users", [&] {
    const double k1 = outage::required_users(100.0, 1, 1.0, 0.1);
    rec.at_most("outage.required_users_t1", std::abs(k1 / 1000.0 - 1.0), 1e-9,
                "M=100, t=1, alpha=1, target 0.1");
    const double k2 = outage::required_users(182.0, 4, 2.0, 1.0);
    rec.within("outage.required_users_M182", k2, 990.0, 1000.0, "M=182, t=4, alpha=2");
    const auto r = outage::scaling(182.0, 4, 2.0, 1.0);
    rec.at_most("outage.scaling_roundtrip", std::abs(r.critical_M - 182.0), 1e-6,
                "critical_M(required_K) against M");
  });
}

std::vector<double> sorted_copy(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v;
}

void montecarlo_suite(Recorder& rec, std::uint64_t seed, std::int64_t trials, unsigned threads) {
  const std::int64_t n = std::max<std::int64_t>(trials, 1000);
  const std::int64_t n_debug = std::min(n, kDebugTrials);
  auto stream = [&](std::uint64_t k) { return rng::derive_seed(seed, kMonteCarlo * 1000 + k); };

  rec.guarded("montecarlo.exceedance", [&] {
    const auto e = mc::exceedance_check(1000, n, stream(1), threads);
    rec.within("montecarlo.exceedance_exactly_one_M1000", e.p_exactly_one, 0.363, 0.373);
    rec.within("montecarlo.exceedance_more_than_one_M1000", e.p_more_than_one, 0.259, 0.270);
    rec.within("montecarlo.exceedance_mean_M1000", e.mean_count, 0.99, 1.01);
    const auto e30 = mc::exceedance_check(30, n, stream(2), threads);
    const double p = std::pow(29.0 / 30.0, 29.0);
    const double sigma = std::sqrt(p * (1.0 - p) / static_cast<double>(n));
    rec.within("montecarlo.exceedance_exactly_one_M30", e30.p_exactly_one, p - 3 * sigma,
               p + 3 * sigma);
  });

  rec.guarded("montecarlo.gumbel_convergence", [&] {
    for (int dof : {2, 8}) {
      const double ks1000 = mc::gumbel_convergence_ks(1000, dof, n, stream(10 + dof), threads);
      const double ks10 = mc::gumbel_convergence_ks(10, dof, n, stream(20 + dof), threads);
      const std::string tag = "_dof" + std::to_string(dof);
      rec.at_most("montecarlo.gumbel_ks_n1000" + tag, ks1000, dof == 2 ? 0.02 : 0.06);
      rec.below("montecarlo.gumbel_ks_decreasing" + tag, ks1000 - ks10, 0.0,
                "KS(n=1000) - KS(n=10)");
    }
  });

  rec.guarded("montecarlo.theory_match", [&] {
    const auto alphas = outage::alpha_grid(1.0, 4.0, 200);
    for (int t : {2, 4, 8}) {
      mc::SimConfig cfg;
      cfg.shape = make_shape(30, 30, t);
      cfg.trials = n;
      cfg.master_seed = stream(30 + t);
      cfg.threads = threads;
      const auto cdf = mc::simulate_cdf(cfg);
      const auto quad = outage::evaluate_curve(cfg.shape, alphas,
                                               outage::CurveKind::theorem1_quadrature);
      double sup = 0.0;
      for (std::size_t i = 0; i < alphas.size(); ++i) {
        sup = std::max(sup, std::abs(cdf.at(alphas[i]) - quad.values[i]));
      }
      rec.at_most("montecarlo.theory_match_K30_t" + std::to_string(t), sup, 0.05,
                  "sup |F_N - F| over alpha in [1, 4]");
    }
  });

  rec.guarded("montecarlo.dkw_band_K1000_t4", [&] {
    const auto alphas = outage::alpha_grid(1.0, 4.0, 200);
    mc::SimConfig cfg;
    cfg.shape = make_shape(1000, 1000, 4);
    cfg.trials = n;
    cfg.master_seed = stream(40);
    cfg.threads = threads;
    const auto cdf = mc::simulate_cdf(cfg);
    const auto quad =
        outage::evaluate_curve(cfg.shape, alphas, outage::CurveKind::theorem1_quadrature);
    double sup = 0.0;
    for (std::size_t i = 0; i < alphas.size(); ++i) {
      sup = std::max(sup, std::abs(cdf.at(alphas[i]) - quad.values[i]));
    }
    const double eps = mc::dkw_epsilon(cdf.n, kDelta);
    rec.at_most("montecarlo.dkw_band_K1000_t4", sup, eps + 0.02,
                "DKW epsilon " + format_real(eps) + " plus 0.02");
  });

  rec.guarded("montecarlo.debug_trials", [&] {
    mc::SimConfig cfg;
    cfg.shape = make_shape(30, 1, 4);
    cfg.trials = n_debug;
    cfg.master_seed = stream(50);
    std::vector<double> selected(static_cast<std::size_t>(n_debug));
    std::int64_t mismatches = 0;
    for (std::int64_t i = 0; i < n_debug; ++i) {
      const auto d = mc::sample_trial_debug(cfg, i);
      const auto ui = std::max_element(d.user_gains.begin(), d.user_gains.end()) -
                      d.user_gains.begin();
      const auto ei = std::max_element(d.projections.begin(), d.projections.end()) -
                      d.projections.begin();
      if (ui != d.record.best_user || ei != d.record.best_eve) ++mismatches;
      selected[static_cast<std::size_t>(i)] = d.projections.front();
    }
    rec.zero("montecarlo.selection_correctness", mismatches,
             describe(mismatches, n_debug) + " trials");
    const auto sorted = sorted_copy(std::move(selected));
    const double crit = kKsCritical / std::sqrt(static_cast<double>(n_debug));
    rec.at_most("montecarlo.rotation_invariance_selected_beam",
                mc::ks_statistic(sorted, [](double x) { return -std::expm1(-x / 2.0); }), crit,
                "KS against Exp(mean 2)");

    // A fixed, non-axis-aligned beam.
    rng::Xoshiro256 g(stream(51));
    const double beam_norm = std::sqrt(1.0 + 4.0 + 9.0 + 16.0);
    const std::complex<double> beam[4] = {{1.0 / beam_norm, 0.0},
                                          {0.0, 2.0 / beam_norm},
                                          {-3.0 / beam_norm, 0.0},
                                          {0.0, -4.0 / beam_norm}};
    std::vector<double> fixed(static_cast<std::size_t>(n_debug));
    for (auto& v : fixed) {
      std::complex<double> inner{0.0, 0.0};
      for (const auto& b : beam) {
        const auto c = rng::complex_normal(g);
        inner += std::conj(b) * std::complex<double>(c.re, c.im);
      }
      v = std::norm(inner);
    }
    const auto sorted_fixed = sorted_copy(std::move(fixed));
    rec.at_most("montecarlo.rotation_invariance_fixed_beam",
                mc::ks_statistic(sorted_fixed, [](double x) { return -std::expm1(-x / 2.0); }),
                crit, "KS against Exp(mean 2)");
  });

  rec.guarded("montecarlo.moments", [&] {
    mc::SimConfig cfg;
    cfg.shape = make_shape(1, 1, 4);
    cfg.trials = n_debug;
    cfg.master_seed = stream(60);
    double gain = 0.0;
    for (std::int64_t i = 0; i < n_debug; ++i) gain += mc::sample_trial(cfg, i).max_gain;
    gain /= static_cast<double>(n_debug);
    const double sd = 4.0 / std::sqrt(static_cast<double>(n_debug));
    rec.within("montecarlo.single_user_gain_mean_t4", gain, 8.0 - 4 * sd, 8.0 + 4 * sd,
               "chi^2(8) mean 8");

    cfg.shape = make_shape(30, 30, 4);
    cfg.conditioning = mc::Conditioning::eve_above;
    cfg.conditioning_impl = mc::ConditioningImpl::pot_model;
    const double u = evt::threshold_eve(30);
    double excess = 0.0;
    for (std::int64_t i = 0; i < n_debug; ++i) excess += mc::sample_trial(cfg, i).max_projection - u;
    excess /= static_cast<double>(n_debug);
    const double se = 2.0 / std::sqrt(static_cast<double>(n_debug));
    rec.within("montecarlo.pot_excess_mean", excess, 2.0 - 4 * se, 2.0 + 4 * se,
               "Exp(mean 2) excess over u_m");
  });

  rec.guarded("montecarlo.rejection_acceptance", [&] {
    mc::SimConfig cfg;
    cfg.shape = make_shape(30, 30, 2);
    cfg.trials = n_debug;
    cfg.master_seed = stream(70);
    cfg.threads = threads;
    cfg.conditioning = mc::Conditioning::eve_above;
    const auto cdf = mc::simulate_conditional_cdf(cfg);
    const double p = mc::rejection_acceptance(cfg);
    const double sd = std::sqrt(p * (1.0 - p) / static_cast<double>(cdf.meta.attempts));
    rec.within("montecarlo.rejection_acceptance_M30", cdf.meta.acceptance_rate, p - 4 * sd,
               p + 4 * sd, "expected " + format_real(p));
  });

  rec.guarded("montecarlo.thread_independence", [&] {
    mc::SimConfig cfg;
    cfg.shape = make_shape(30, 30, 2);
    cfg.trials = 2000;
    cfg.master_seed = stream(80);
    cfg.threads = 1;
    const auto one = mc::simulate_cdf(cfg);
    cfg.threads = 4;
    const auto four = mc::simulate_cdf(cfg);
    std::int64_t diff = 0;
    for (std::size_t i = 0; i < one.n; ++i) {
      if (one.sorted_samples[i] != four.sorted_samples[i]) ++diff;
    }
    rec.zero("montecarlo.thread_independence", diff, "samples differing between 1 and 4 threads");
  });
}

}  // namespace

ValidationReport validate(const std::string& suite, std::uint64_t seed, std::int64_t trials,
                          unsigned threads) {
  const bool all = suite == "all";
  if (!all && suite != "specfun" && suite != "evt" && suite != "outage" && suite != "montecarlo") {
    throw UsageError("unknown suite '" + suite + "'");
  }
  if (trials < 0) throw UsageError("trials must be >= 0");
  ValidationReport report;
  report.suite = suite;
  report.seed = seed;
  report.trials = trials;
  Recorder rec(report.checks);
  if (all || suite == "specfun") specfun_suite(rec, seed);
  if (all || suite == "evt") evt_suite(rec);
  if (all || suite == "outage") outage_suite(rec);
  if (all || suite == "montecarlo") montecarlo_suite(rec, seed, trials, threads);
  return report;
}

}  // namespace wiretap::exp
