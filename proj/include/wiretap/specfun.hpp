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
#ifndef WIRETAP_SPECFUN_HPP
#define WIRETAP_SPECFUN_HPP

// Gamma-family special functions. The lower incomplete gamma function uses
// the standard kernel
//
//   gamma(s, z) = int_0^z tau^(s-1) e^(-tau) dtau,
//
// evaluated by its power series for z < s + 1 and by the continued fraction
// of the upper function otherwise. Every value is also available in log form
// so callers can work with arguments that would overflow exp().

namespace wiretap::specfun {

/// Arguments of the incomplete gamma function above this value saturate:
/// gamma(s, z) is returned as Gamma(s) (provided z > 2s).
inline constexpr double kSaturationZ = 700.0;

struct BoundPair {
  double lower;
  double upper;
};

double ln_gamma(double x);

/// Gamma(x) for 0 < x <= 171.
double gamma_fn(double x);

double lower_incomplete_gamma(double s, double z);
double ln_lower_incomplete_gamma(double s, double z);

/// ln gamma(s, exp(ln_z)). Accepts ln_z = -inf (z = 0, returns -inf) and
/// values of ln_z for which exp() would overflow.
double ln_lower_incomplete_gamma_at_log(double s, double ln_z);

/// ln P(s, z) and ln Q(s, z) of the regularized functions, each computed
/// without cancellation against the other.
struct RegularizedLogs {
  double ln_p;
  double ln_q;
};
RegularizedLogs regularized_gamma_logs(double s, double z);

double regularized_gamma_p(double s, double z);
double regularized_gamma_q(double s, double z);

/// z with Q(s, z) = q. Safeguarded Newton on ln Q in ln z.
/// Throws RangeError when the root is below the smallest normal double.
double inverse_regularized_gamma_q(double s, double q);

/// Two closed-form sides bracketing gamma(s, z):
///   Gamma(s) (1 - e^-z)^s   and   Gamma(s) (1 - e^{-z Gamma(1+s)^{-1/s}})^s.
/// For 0 < s < 1 the first is the lower side; for s > 1 they swap.
/// Throws DegenerateError at s == 1, where both equal gamma(1, z).
BoundPair claim1_bounds(double s, double z);

/// Log-space margins of the bracket: below = ln gamma - ln lower,
/// above = ln upper - ln gamma. Both are positive whenever the bracket
/// holds, and are computed from log1p/expm1 terms so they stay resolvable
/// when the three values agree to machine precision.
struct BracketMargins {
  double below;
  double above;
};
BracketMargins claim1_log_margins(double s, double z);

}  // namespace wiretap::specfun

#endif  // WIRETAP_SPECFUN_HPP
