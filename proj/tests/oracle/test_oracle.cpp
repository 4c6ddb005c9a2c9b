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
// Cross-checks against independent implementations: Boost.Math quadrature and
// special functions, and 50-digit Boost.Multiprecision arithmetic.

#include <algorithm>
#include <cmath>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "doctest.h"
#include "gamma_oracle.hpp"
#include "wiretap/evt.hpp"
#include "wiretap/montecarlo.hpp"
#include "wiretap/outage.hpp"
#include "wiretap/rng.hpp"
#include "wiretap/specfun.hpp"

using namespace wiretap;
using big = boost::multiprecision::cpp_bin_float_50;

namespace {

double uniform(rng::Xoshiro256& g, double lo, double hi) {
  return lo + (hi - lo) * (1.0 - g.uniform_open0());
}

outage::SystemShape shape(std::int64_t k, std::int64_t m, int t) {
  outage::SystemShape s;
  s.users = k;
  s.eves = m;
  s.antennas = t;
  return s;
}

// Exact finite-K, finite-M outage CDF of the simulated system at P = 1:
// Pr((1 + X) <= alpha (1 + Y)) with X the max of K chi^2(2t) and Y the max of
// M chi^2(2) (projections onto the beam are chi^2(2) independent of it).
double exact_outage_cdf(std::int64_t k, std::int64_t m, int t, double alpha) {
  const boost::math::chi_squared_distribution<double> chi(2.0 * t);
  const double kd = static_cast<double>(k);
  const double md = static_cast<double>(m);
  auto integrand = [&](double x) {
    const double cdf = boost::math::cdf(chi, x);
    const double density = kd * std::pow(cdf, kd - 1.0) * boost::math::pdf(chi, x);
    const double y = (1.0 + x) / alpha - 1.0;
    const double fy = y <= 0.0 ? 0.0 : std::pow(-std::expm1(-y / 2.0), md);
    return density * (1.0 - fy);
  };
  using boost::math::quadrature::gauss_kronrod;
  const double mode = 2.0 * std::log(kd) + 4.0 * t;
  return gauss_kronrod<double, 61>::integrate(integrand, 0.0, mode, 15, 1e-12) +
         gauss_kronrod<double, 61>::integrate(integrand, mode, mode + 400.0, 15, 1e-12);
}

}  // namespace

TEST_SUITE("oracle") {

TEST_CASE("incomplete gamma against Gauss-Kronrod and Boost.Math") {
  rng::Xoshiro256 g(2024);
  double worst_quad = 0.0;
  double worst_boost = 0.0;
  for (int i = 0; i < 10000; ++i) {
    double s = uniform(g, 0.0, 20.0);
    double z = uniform(g, 0.0, 50.0);
    if (s == 0.0) s = 1.0;
    if (z == 0.0) z = 1.0;
    const double got = specfun::lower_incomplete_gamma(s, z);
    const auto ref = static_cast<double>(testing::gamma_oracle(s, z));
    worst_quad = std::max(worst_quad, std::abs(got - ref) / ref);
    const double b = boost::math::tgamma_lower(s, z);
    worst_boost = std::max(worst_boost, std::abs(got - b) / b);
  }
  MESSAGE("max relative error vs quadrature " << worst_quad << ", vs Boost " << worst_boost);
  CHECK(worst_quad <= 1e-12);
  CHECK(worst_boost <= 1e-12);
}

TEST_CASE("inverse Q against Boost.Math") {
  rng::Xoshiro256 g(2025);
  for (int i = 0; i < 2000; ++i) {
    const double s = uniform(g, 0.05, 30.0);
    const double q = std::exp(-uniform(g, 0.01, 25.0));
    const double ref = boost::math::gamma_q_inv(s, q);
    CHECK(specfun::inverse_regularized_gamma_q(s, q) == doctest::Approx(ref).epsilon(1e-11));
  }
}

TEST_CASE("theorem 1 quadrature against exp-sinh") {
  boost::math::quadrature::exp_sinh<double> integrator;
  for (std::int64_t n : {30, 100, 1000}) {
    for (int t : {1, 2, 4, 8}) {
      const auto c = outage::model_constants(shape(n, n, t));
      for (double a : outage::alpha_grid(1.0, 4.0, 31)) {
        const double ln_c = (1.0 + c.b_users - a * (1.0 + c.b_eves)) / c.a_users;
        const double p = a * c.a_eves / c.a_users;
        // CDF = 1 - int e^-z (1 - exp(-c z^p)) dz; the complement form stays
        // accurate when the CDF is close to 0.
        auto complement = [&](double z) {
          if (z <= 0.0) return 0.0;
          return std::exp(-z) * -std::expm1(-std::exp(ln_c + p * std::log(z)));
        };
        const double ref = 1.0 - integrator.integrate(complement, 1e-15);
        const double got = outage::theorem1_quadrature(c, a).value;
        CHECK(std::abs(got - ref) < 1e-9);
      }
    }
  }
}

TEST_CASE("theorem 1 series in 50-digit arithmetic") {
  for (int t : {2, 4}) {
    const auto c = outage::model_constants(shape(30, 30, t));
    for (double a : {1.0, 1.1, 1.2, 1.3}) {
      const big x = (big(1) + big(c.b_users) - big(a) * (1 + big(c.b_eves))) /
                    (big(a) * big(c.a_eves));
      const big r = big(c.a_users) / (big(a) * big(c.a_eves));
      big sum = 0;
      for (int k = 0; k < 200; ++k) {
        const big term = exp(-(k + 1) * x) * tgamma(1 + (k + 1) * r) / tgamma(big(k + 2));
        sum += (k % 2 == 0) ? term : big(-term);
      }
      const double ref = static_cast<double>(sum);
      const double got = outage::theorem1_quadrature(c, a).value;
      CHECK(std::abs(got - ref) < 1e-10);
    }
  }
}

TEST_CASE("critical point quantities in 50-digit arithmetic") {
  using boost::multiprecision::exp;
  using boost::multiprecision::log;
  using boost::multiprecision::pow;
  const big e = exp(big(1));
  const big k = 1000;
  const big gamma4 = 6;
  const big alpha = 2;
  const big mass = sqrt(e) * k * pow(log(k), 3) / gamma4;
  const big critical = pow(mass, 1 / alpha) / sqrt(e);
  CHECK(outage::critical_eves(1000, 4, 2.0) ==
        doctest::Approx(static_cast<double>(critical)).epsilon(1e-13));

  auto lambda = [&](big m) { return pow(sqrt(e) * m, alpha) / mass; };
  const big l18 = lambda(18);
  const big cor1 = pow(l18 * (1 - exp(-pow(big(2), alpha - 1) / l18)), 1 / alpha);
  CHECK(outage::corollary_bounds(shape(1000, 18, 4), 2.0).bounds.upper ==
        doctest::Approx(static_cast<double>(cor1)).epsilon(1e-13));
  const big l1825 = lambda(1825);
  const big cor2 = 1 - boost::multiprecision::tgamma(1 + alpha) / l1825 *
                           pow(1 - exp(-pow(l1825, 1 / alpha)), alpha);
  CHECK(outage::corollary_bounds(shape(1000, 1825, 4), 2.0).bounds.lower ==
        doctest::Approx(static_cast<double>(cor2)).epsilon(1e-13));
}

TEST_CASE("simulator matches the exact finite-K law") {
  // The simulator reproduces the finite-K law within the DKW band; its gap
  // to the Gumbel-based formula is the asymptotic error at this K and M.
  const auto alphas = outage::alpha_grid(1.0, 4.0, 61);
  for (int t : {2, 4, 8}) {
    mc::SimConfig cfg;
    cfg.shape = shape(30, 30, t);
    cfg.trials = 100000;
    cfg.master_seed = 1234;
    const auto cdf = mc::simulate_cdf(cfg);
    const double eps = mc::dkw_epsilon(cdf.n, 1e-3);
    double sup_sim = 0.0;
    double sup_asym = 0.0;
    for (double a : alphas) {
      const double exact = exact_outage_cdf(30, 30, t, a);
      sup_sim = std::max(sup_sim, std::abs(cdf.at(a) - exact));
      sup_asym = std::max(sup_asym, std::abs(outage::theorem1_cdf(cfg.shape, a).value - exact));
    }
    MESSAGE("t=" << t << ": sup|F_N - F_exact| = " << sup_sim
                 << ", sup|F_theorem1 - F_exact| = " << sup_asym);
    CHECK(sup_sim <= eps);
  }
}

TEST_CASE("Gumbel KS distance agrees with the exact finite-n law") {
  for (int dof : {2, 8}) {
    for (std::int64_t n : {10LL, 1000LL}) {
      const auto c = evt::normalizing_constants(n, dof);
      const auto p = evt::GumbelParams::from_constants(c);
      const boost::math::chi_squared_distribution<double> chi(dof);
      double analytic = 0.0;
      for (int i = 0; i <= 20000; ++i) {
        const double x = p.location + p.scale * (-5.0 + 25.0 * i / 20000.0);
        if (x <= 0.0) continue;
        const double exact = std::pow(boost::math::cdf(chi, x), static_cast<double>(n));
        analytic = std::max(analytic, std::abs(exact - evt::gumbel_cdf(x, p)));
      }
      const double empirical = mc::gumbel_convergence_ks(n, dof, 100000, 77);
      MESSAGE("dof=" << dof << " n=" << n << ": analytic KS " << analytic << ", empirical "
                     << empirical);
      CHECK(std::abs(empirical - analytic) < 0.01);
    }
  }
}

}  // TEST_SUITE
