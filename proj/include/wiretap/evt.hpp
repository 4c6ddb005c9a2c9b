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
#ifndef WIRETAP_EVT_HPP
#define WIRETAP_EVT_HPP

#include <cstdint>

namespace wiretap::evt {

/// Gumbel normalizing constants for the maximum of n iid chi^2(dof) draws:
/// Pr(max <= a x + b) -> exp(-e^-x).
struct NormalizingConstants {
  double a = 2.0;    // scale
  double b = 0.0;    // location
  std::int64_t n = 2;
  int dof = 2;
};

/// a = 2, b = 2 (ln n + (dof/2 - 1) ln ln n - ln Gamma(dof/2)), natural logs.
/// Requires even dof >= 2, n >= 2, and n >= 3 when dof > 2.
NormalizingConstants normalizing_constants(std::int64_t n, int dof);

struct GumbelParams {
  double location = 0.0;
  double scale = 1.0;

  /// G(P a, P b): the law of P times a maximum with the given constants.
  static GumbelParams from_constants(const NormalizingConstants& c, double power = 1.0);
};

double gumbel_cdf(double x, const GumbelParams& p);
double gumbel_quantile(double q, const GumbelParams& p);

/// u_m = 2 ln M: the level a chi^2(2) draw exceeds with probability 1/M.
double threshold_eve(std::int64_t eves);

/// u_k with Pr(chi^2(2t) > u_k) = 1/K, i.e. Q(t, u_k / 2) = 1/K.
double threshold_user(std::int64_t users, int antennas);

/// The large-K asymptote of threshold_user: b_K with dof = 2t.
double threshold_user_asymptotic(std::int64_t users, int antennas);

}  // namespace wiretap::evt

#endif  // WIRETAP_EVT_HPP
