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
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "wiretap/errors.hpp"
#include "wiretap/evt.hpp"
#include "wiretap/specfun.hpp"

using namespace wiretap;
using namespace wiretap::evt;

TEST_SUITE("evt") {

TEST_CASE("normalizing constants") {
  CHECK(normalizing_constants(30, 2).b == doctest::Approx(6.802394763324311).epsilon(1e-14));
  CHECK(normalizing_constants(30, 8).b == doctest::Approx(10.56364106907745).epsilon(1e-14));
  CHECK(normalizing_constants(1000, 8).a == 2.0);
  CHECK(normalizing_constants(2, 2).b == doctest::Approx(2.0 * std::log(2.0)));
  CHECK_THROWS_AS(normalizing_constants(1, 2), DomainError);
  CHECK_THROWS_AS(normalizing_constants(2, 4), DomainError);  // ln ln 2 < 0
  CHECK_THROWS_AS(normalizing_constants(100, 3), DomainError);
  CHECK_THROWS_AS(normalizing_constants(100, 0), DomainError);
}

TEST_CASE("location increases with n") {
  for (int dof : {2, 4, 8, 16}) {
    double prev = normalizing_constants(3, dof).b;
    for (std::int64_t n = 4; n < 5000; n += 7) {
      const double b = normalizing_constants(n, dof).b;
      CHECK(b > prev);
      prev = b;
    }
  }
}

TEST_CASE("gumbel cdf and quantile") {
  const GumbelParams p{1.0, 2.0};
  CHECK(gumbel_cdf(1.0, p) == doctest::Approx(std::exp(-1.0)));
  CHECK(gumbel_cdf(1.0 - 2.0 * std::log(std::numbers::ln2), p) == doctest::Approx(0.5));
  for (double q : {1e-6, 0.1, 0.5, 0.9, 1 - 1e-9}) {
    CHECK(gumbel_cdf(gumbel_quantile(q, p), p) == doctest::Approx(q).epsilon(1e-12));
  }
  CHECK_THROWS_AS(gumbel_quantile(0.0, p), DomainError);
  CHECK_THROWS_AS(gumbel_quantile(1.0, p), DomainError);
  CHECK_THROWS_AS(gumbel_cdf(0.0, GumbelParams{0.0, -1.0}), DomainError);
}

TEST_CASE("power scaling multiplies both constants") {
  const auto c = normalizing_constants(100, 4);
  const auto p = GumbelParams::from_constants(c, 3.0);
  CHECK(p.location == doctest::Approx(3.0 * c.b));
  CHECK(p.scale == doctest::Approx(6.0));
  CHECK_THROWS_AS(GumbelParams::from_constants(c, 0.0), DomainError);
}

TEST_CASE("thresholds") {
  for (std::int64_t m : {2, 30, 1000, 1000000}) {
    CHECK(static_cast<double>(m) * std::exp(-threshold_eve(m) / 2.0) ==
          doctest::Approx(1.0).epsilon(1e-14));
    CHECK(threshold_user(m, 1) == doctest::Approx(2.0 * std::log(static_cast<double>(m))));
  }
  CHECK(threshold_user(1000, 4) == doctest::Approx(26.12448155837614).epsilon(1e-13));
  CHECK(threshold_user(1000000, 4) == doctest::Approx(42.70091392654427).epsilon(1e-13));
  CHECK(threshold_user_asymptotic(1000000, 4) ==
        doctest::Approx(39.80225366432850).epsilon(1e-13));
  for (std::int64_t k : {10, 1000, 100000}) {
    for (int t : {2, 4, 8}) {
      const double u = threshold_user(k, t);
      CHECK(static_cast<double>(k) * specfun::regularized_gamma_q(t, u / 2.0) ==
            doctest::Approx(1.0).epsilon(1e-10));
    }
  }
  CHECK_THROWS_AS(threshold_eve(1), DomainError);
  CHECK_THROWS_AS(threshold_user(1, 4), DomainError);
  CHECK_THROWS_AS(threshold_user(100, 0), DomainError);
}

TEST_CASE("exact threshold approaches the asymptote slowly") {
  // Relative gap shrinks with K but is still about 7% at K = 1e6, t = 4.
  double prev = 1.0;
  for (std::int64_t k : {1000LL, 100000LL, 1000000LL, 1000000000LL}) {
    const double u = threshold_user(k, 4);
    const double gap = std::abs(u - threshold_user_asymptotic(k, 4)) / u;
    CHECK(gap < prev);
    prev = gap;
  }
  const double u = threshold_user(1000000, 4);
  CHECK(std::abs(u - threshold_user_asymptotic(1000000, 4)) / u ==
        doctest::Approx(0.06788286234814916).epsilon(1e-9));
}

}  // TEST_SUITE
