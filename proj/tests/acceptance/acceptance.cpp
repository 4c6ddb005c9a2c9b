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
// Acceptance criteria runner. `acceptance C3` runs one criterion, no argument
// runs all of them. Each prints a single PASS/FAIL line; the exit status is
// nonzero when any selected criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "gamma_oracle.hpp"
#include "wiretap/errors.hpp"
#include "wiretap/evt.hpp"
#include "wiretap/experiments.hpp"
#include "wiretap/format.hpp"
#include "wiretap/montecarlo.hpp"
#include "wiretap/outage.hpp"
#include "wiretap/rng.hpp"
#include "wiretap/specfun.hpp"

using namespace wiretap;
using big = boost::multiprecision::cpp_bin_float_50;

namespace {

struct Outcome {
  bool passed = false;
  std::string summary;
};

struct Criterion {
  std::string id;
  std::string title;
  double time_limit_s;
  std::function<Outcome()> run;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

double uniform(rng::Xoshiro256& g, double lo, double hi) {
  return lo + (hi - lo) * (1.0 - g.uniform_open0());
}

double open_uniform(rng::Xoshiro256& g, double lo, double hi) {
  for (;;) {
    const double v = uniform(g, lo, hi);
    if (v > lo && v < hi) return v;
  }
}

outage::SystemShape shape(std::int64_t k, std::int64_t m, int t) {
  outage::SystemShape s;
  s.users = k;
  s.eves = m;
  s.antennas = t;
  return s;
}

Outcome c1_special_functions() {
  rng::Xoshiro256 g(101);
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const double s = open_uniform(g, 0.0, 20.0);
    const double z = open_uniform(g, 0.0, 50.0);
    const double ref = static_cast<double>(testing::gamma_oracle(s, z));
    worst = std::max(worst, std::abs(specfun::lower_incomplete_gamma(s, z) - ref) / ref);
  }
  int violations = 0;
  for (int i = 0; i < 10000; ++i) {
    const double s = (i % 2 == 0) ? open_uniform(g, 0.0, 1.0) : open_uniform(g, 1.0, 10.0);
    const double z = open_uniform(g, 0.0, 30.0);
    const auto m = specfun::claim1_log_margins(s, z);
    if (!(m.below > 0.0 && m.above > 0.0)) ++violations;
    const double r = open_uniform(g, 0.0, 1.0);
    const double lg = specfun::ln_gamma(1.0 + r);
    if (!((r - 1.0) * std::log(2.0) < lg && lg < 0.0)) ++violations;
    double q = open_uniform(g, 0.0, 50.0);
    if (q == 1.0) q = 2.0;
    if (!(specfun::ln_gamma(q) + specfun::ln_gamma(1.0 / q) > 0.0)) ++violations;
  }
  return {worst <= 1e-12 && violations == 0,
          "max rel err " + fmt(worst) + " (tol 1e-12), Claim 1 violations " +
              std::to_string(violations) + " of 30000"};
}

Outcome c2_series_vs_quadrature() {
  double worst = 0.0;
  int converged = 0;
  int total = 0;
  for (std::int64_t n : {30, 100, 1000}) {
    for (int t : {2, 4, 8}) {
      const auto c = outage::model_constants(shape(n, n, t));
      for (double a : outage::alpha_grid(1.0, 1.4, 81)) {
        ++total;
        outage::OutageValue v;
        try {
          v = outage::theorem1_series(c, a, 100);
        } catch (const NumericError&) {
          continue;
        }
        if (!v.converged) continue;
        ++converged;
        worst = std::max(worst, std::abs(v.value - outage::theorem1_quadrature(c, a).value));
      }
    }
  }
  return {worst <= 1e-6 && converged > 0,
          "max |series - quadrature| " + fmt(worst) + " (tol 1e-6) over " +
              std::to_string(converged) + "/" + std::to_string(total) + " converged points"};
}

Outcome c3_symmetry() {
  double worst = 0.0;
  for (std::int64_t n : {2, 30, 1000, 1000000}) {
    worst = std::max(worst, std::abs(outage::theorem1_cdf(shape(n, n, 1), 1.0).value - 0.5));
  }
  return {worst <= 1e-9, "max |F(1) - 0.5| " + fmt(worst) + " (tol 1e-9)"};
}

Outcome c4_sandwich() {
  const auto s = shape(1000, 1000, 4);
  const auto asym = outage::model_constants(s, outage::UserThreshold::asymptotic);
  const auto exact = outage::model_constants(s, outage::UserThreshold::exact);
  const double top = 0.95 * (1.0 + asym.b_users) / (1.0 + asym.b_eves);
  int order = 0;
  double excursion = -1.0;
  const auto alphas = outage::alpha_grid(1.0, top, 400);
  for (double a : alphas) {
    const auto cb = outage::corollary_bounds(s, a);
    const double l1 = outage::lemma1_upper_cdf(asym, a).value;
    const double l2 = outage::lemma2_lower_cdf(asym, a).value;
    const double l2x = outage::lemma2_lower_cdf(exact, a).value;
    const double q = outage::theorem1_quadrature(exact, a).value;
    // Exact up to rounding: the pairs coincide analytically at alpha = 1.
    if (!(cb.bounds.lower <= l2 + 1e-14)) ++order;
    if (!(l1 <= cb.bounds.upper + 1e-14)) ++order;
    excursion = std::max({excursion, l2 - q, l2x - q, q - l1});
  }
  return {order == 0 && excursion <= 0.02,
          "alpha in [1, " + fmt(top) + "]: lemma/corollary order violations " +
              std::to_string(order) + ", max quadrature excursion " + fmt(excursion) +
              " (slack 0.02)"};
}

Outcome c5_monte_carlo() {
  const auto alphas = outage::alpha_grid(1.0, 4.0, 200);
  std::string parts;
  double worst = 0.0;
  for (int t : {2, 4, 8}) {
    mc::SimConfig cfg;
    cfg.shape = shape(30, 30, t);
    cfg.trials = 100000;
    cfg.master_seed = 42;
    const auto cdf = mc::simulate_cdf(cfg);
    double sup = 0.0;
    for (double a : alphas) {
      sup = std::max(sup, std::abs(cdf.at(a) - outage::theorem1_cdf(cfg.shape, a).value));
    }
    worst = std::max(worst, sup);
    parts += " t=" + std::to_string(t) + ":" + fmt(sup);
  }
  return {worst <= 0.05, "sup |F_N - F_theorem1|" + parts + " (tol 0.05, DKW eps " +
                             fmt(mc::dkw_epsilon(100000, 0.01)) + ")"};
}

Outcome c6_critical_point() {
  using boost::multiprecision::exp;
  using boost::multiprecision::log;
  using boost::multiprecision::pow;
  const double crit = outage::critical_eves(1000, 4, 2.0);
  const double cor1 = outage::corollary_bounds(shape(1000, 18, 4), 2.0).bounds.upper;
  const double cor2 = outage::corollary_bounds(shape(1000, 1825, 4), 2.0).bounds.lower;
  const big e = exp(big(1));
  const big mass = sqrt(e) * big(1000) * pow(log(big(1000)), 3) / big(6);
  const big crit_ref = sqrt(mass) / sqrt(e);
  auto lambda = [&](big m) { return pow(sqrt(e) * m, 2) / mass; };
  const big l18 = lambda(18);
  const big cor1_ref = sqrt(l18 * (1 - exp(-2 / l18)));
  const big l1825 = lambda(1825);
  const big cor2_ref = 1 - 2 / l1825 * pow(1 - exp(-sqrt(l1825)), 2);
  const double dev = std::max({std::abs(crit / static_cast<double>(crit_ref) - 1.0),
                               std::abs(cor1 / static_cast<double>(cor1_ref) - 1.0),
                               std::abs(cor2 / static_cast<double>(cor2_ref) - 1.0)});
  const bool ok = std::abs(crit - 182.5) <= 0.5 && std::abs(cor1 - 0.099) <= 0.003 &&
                  std::abs(cor2 - 0.980) <= 0.005 && dev <= 1e-12;
  return {ok, "critical_M " + fmt(crit) + ", cor1(M=18) " + fmt(cor1) + ", cor2(M=1825) " +
                  fmt(cor2) + ", max rel dev from 50-digit recomputation " + fmt(dev)};
}

Outcome c7_exceedance() {
  const auto e = mc::exceedance_check(1000, 100000, 7);
  const bool ok = e.p_exactly_one >= 0.363 && e.p_exactly_one <= 0.373 &&
                  e.p_more_than_one >= 0.259 && e.p_more_than_one <= 0.270 &&
                  std::abs(e.mean_count - 1.0) <= 0.01;
  return {ok, "exactly one " + fmt(e.p_exactly_one) + " in [0.363,0.373], more than one " +
                  fmt(e.p_more_than_one) + " in [0.259,0.270], mean " + fmt(e.mean_count) +
                  " (1 +- 0.01)"};
}

Outcome c8_gumbel() {
  const double ks2 = mc::gumbel_convergence_ks(1000, 2, 100000, 8);
  const double ks8 = mc::gumbel_convergence_ks(1000, 8, 100000, 9);
  const double ks2_10 = mc::gumbel_convergence_ks(10, 2, 100000, 10);
  const double ks8_10 = mc::gumbel_convergence_ks(10, 8, 100000, 11);
  const bool ok = ks2 <= 0.02 && ks8 <= 0.06 && ks2 < ks2_10 && ks8 < ks8_10;
  return {ok, "KS(1000,dof2) " + fmt(ks2) + " (tol 0.02), KS(1000,dof8) " + fmt(ks8) +
                  " (tol 0.06), KS(10,dof2) " + fmt(ks2_10) + ", KS(10,dof8) " + fmt(ks8_10)};
}

Outcome c9_determinism() {
  std::vector<std::string> mismatched;
  const auto a = exp::validate("all", 42, 100000, 1).to_json();
  const auto b = exp::validate("all", 42, 100000, 1).to_json();
  const auto c = exp::validate("all", 42, 100000, 2).to_json();
  if (a != b || a != c) mismatched.push_back("validate");
  for (auto e : {exp::Experiment::fig1, exp::Experiment::fig2, exp::Experiment::fig3}) {
    exp::ExperimentSpec s;
    s.experiment = e;
    if (e == exp::Experiment::fig1) {
      s.antennas = {2, 4, 8};
    } else {
      s.users = 1000;
      s.eves = 1000;
    }
    s.threads = 1;
    const auto x = exp::run_experiment(s).to_csv();
    const auto y = exp::run_experiment(s).to_csv();
    s.threads = 2;
    const auto z = exp::run_experiment(s);
    if (x != y || x != z.to_csv()) mismatched.push_back(exp::to_string(e));
    if (exp::run_experiment(s).to_json() != z.to_json()) mismatched.push_back(exp::to_string(e));
  }
  std::string list;
  for (const auto& m : mismatched) list += " " + m;
  return {mismatched.empty(), mismatched.empty()
                                  ? "validate all, fig1, fig2, fig3 byte-identical across runs "
                                    "and thread counts"
                                  : "differing outputs:" + list};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria{
      {"C1", "special functions", 30, c1_special_functions},
      {"C2", "theorem 1 series vs quadrature", 60, c2_series_vs_quadrature},
      {"C3", "symmetry point", 1e9, c3_symmetry},
      {"C4", "bound sandwich", 60, c4_sandwich},
      {"C5", "Monte Carlo vs theory", 300, c5_monte_carlo},
      {"C6", "critical point", 1, c6_critical_point},
      {"C7", "exceedance limits", 60, c7_exceedance},
      {"C8", "Gumbel convergence", 120, c8_gumbel},
      {"C9", "determinism", 1e9, c9_determinism},
  };
  std::vector<std::string> selected(argv + 1, argv + argc);
  int failures = 0;
  int ran = 0;
  for (const auto& c : criteria) {
    if (!selected.empty() && std::find(selected.begin(), selected.end(), c.id) == selected.end() &&
        std::find(selected.begin(), selected.end(), "all") == selected.end()) {
      continue;
    }
    ++ran;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs <= c.time_limit_s;
    const bool passed = o.passed && in_time;
    if (!passed) ++failures;
    std::printf("%s %s [%s] %s; %.2fs%s\n", passed ? "PASS" : "FAIL", c.id.c_str(),
                c.title.c_str(), o.summary.c_str(), secs,
                in_time ? "" : (" exceeds limit " + fmt(c.time_limit_s) + "s").c_str());
    std::fflush(stdout);
  }
  if (ran == 0) {
    std::fprintf(stderr, "unknown criterion; use C1..C9 or all\n");
    return 2;
  }
  return failures == 0 ? 0 : 1;
}
