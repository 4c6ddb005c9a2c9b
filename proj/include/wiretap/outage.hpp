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
#ifndef WIRETAP_OUTAGE_HPP
#define WIRETAP_OUTAGE_HPP

// Secrecy-outage CDF Pr((1 + P|h*|^2) / (1 + P|<h^, g*>|^2) <= alpha) for a
// transmitter that beamforms to the strongest of K users while M eavesdroppers
// listen, in the limit where both maxima are Gumbel distributed.
//
// Every formula is written against ModelConstants (a_K, b_K, a_M, b_M and the
// two peaks-over-threshold levels) so that power scaling and alternative
// normalizations flow through unchanged.

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "wiretap/specfun.hpp"

namespace wiretap::outage {

struct SystemShape {
  std::int64_t users = 2;   // K
  std::int64_t eves = 2;    // M
  int antennas = 1;         // t
  double power = 1.0;       // P

  /// Throws DomainError unless K, M >= 2, t >= 1, P > 0.
  void validate() const;
};

/// alpha = 2^rate_bits.
struct OutageQuery {
  double alpha = 1.0;
  double rate_bits = 0.0;

  static OutageQuery from_alpha(double alpha);
  static OutageQuery from_rate(double rate_bits);
};

enum class UserThreshold {
  exact,       // inverse regularized gamma: K Q(t, u_k / 2) = 1
  asymptotic,  // b_K, the large-K limit of the exact level
};

struct ModelConstants {
  double a_users = 2.0;
  double b_users = 0.0;
  double a_eves = 2.0;
  double b_eves = 0.0;
  double eve_threshold = 0.0;   // u_m
  double user_threshold = 0.0;  // u_k
};

/// Constants for a shape with every scale and location multiplied by P.
ModelConstants model_constants(const SystemShape& shape,
                               UserThreshold threshold = UserThreshold::exact);

struct SeriesStrategy {
  int n_terms = 100;
};
struct QuadratureStrategy {};
using Theorem1Strategy = std::variant<SeriesStrategy, QuadratureStrategy>;

/// A probability after clamping to [0,1], with the unclamped value kept.
struct OutageValue {
  double value = 0.0;
  double raw = 0.0;
  bool converged = true;
};

OutageValue theorem1_cdf(const SystemShape& shape, double alpha,
                         Theorem1Strategy strategy = QuadratureStrategy{});

/// Alternating series sum_k (-1)^k e^{-(k+1)x} Gamma(1 + (k+1)r) / (k+1)!,
/// x = (1 + b_K - alpha (1 + b_M)) / (alpha a_M), r = a_K / (alpha a_M).
/// Stops once the next term is below 1e-12 and shrinking. Throws
/// NumericError when term magnitudes are too large for the sum to survive
/// cancellation; use the quadrature strategy there.
OutageValue theorem1_series(const ModelConstants& c, double alpha, int n_terms = 100);

/// int_0^inf e^-z exp(-e^{(1 + b_K - alpha (1 + b_M)) / a_K} z^{alpha a_M / a_K}) dz
OutageValue theorem1_quadrature(const ModelConstants& c, double alpha);

/// Upper bound from modelling the strongest eavesdropper as u_m plus an
/// exponential excess.
OutageValue lemma1_upper_cdf(const SystemShape& shape, double alpha);
OutageValue lemma1_upper_cdf(const ModelConstants& c, double alpha);

/// Lower bound from modelling the strongest user as u_k plus an exponential
/// excess.
OutageValue lemma2_lower_cdf(const SystemShape& shape, double alpha,
                             UserThreshold threshold = UserThreshold::exact);
OutageValue lemma2_lower_cdf(const ModelConstants& c, double alpha);

/// Lambda(alpha) = (sqrt(e) M)^alpha Gamma(t) / (sqrt(e) K (ln K)^{t-1}).
/// For P != 1 the same quantity is formed from the scaled constants,
/// exp(-(1 + P b_K - alpha (1 + P u_m)) / (P a_K)).
double lambda_factor(const SystemShape& shape, double alpha);
double ln_lambda_factor(const SystemShape& shape, double alpha);

struct CorollaryBounds {
  specfun::BoundPair bounds;  // clamped to [0,1]
  double raw_lower = 0.0;
  double raw_upper = 0.0;
  double lambda = 0.0;
};

/// upper = [L (1 - exp(-2^{alpha-1} / L))]^{1/alpha},
/// lower = 1 - Gamma(1 + alpha) / L (1 - exp(-L^{1/alpha}))^alpha.
CorollaryBounds corollary_bounds(const SystemShape& shape, double alpha);
CorollaryBounds corollary_bounds_from_log_lambda(double ln_lambda, double alpha);

/// Real M with Lambda(alpha) = 1.
double critical_eves(std::int64_t users, int antennas, double alpha);

/// Smallest real K >= 3 with Lambda(alpha) <= target at the given M.
/// Throws RangeError when no K <= 1e12 suffices.
double required_users(double eves, int antennas, double alpha, double target_lambda);

struct ScalingResult {
  double lambda = 0.0;        // Lambda at (required_K, M)
  double critical_M = 0.0;    // critical_eves(round-tripped K)
  double required_K = 0.0;
  double eves = 0.0;
  int antennas = 1;
  double alpha = 1.0;
  double target_lambda = 1.0;
  double cor1_upper = 0.0;
  double cor2_lower = 0.0;
};

ScalingResult scaling(double eves, int antennas, double alpha, double target_lambda);

enum class CurveKind {
  theorem1_series,
  theorem1_quadrature,
  lemma1_upper,
  lemma2_lower,
  cor1_upper,
  cor2_lower,
  empirical,
};

std::string to_string(CurveKind kind);

struct BoundCurve {
  std::vector<double> alphas;
  std::vector<double> values;
  std::vector<double> raw_values;
  std::vector<bool> converged;
  CurveKind kind = CurveKind::theorem1_quadrature;
};

struct CurveOptions {
  int n_terms = 100;
  UserThreshold user_threshold = UserThreshold::exact;
};

/// Evaluates one analytic curve over an alpha grid. Series points that
/// raise NumericError are reported as NaN with converged = false.
BoundCurve evaluate_curve(const SystemShape& shape, const std::vector<double>& alphas,
                          CurveKind kind, const CurveOptions& options = {});

/// min + i (max - min) / (steps - 1), i = 0..steps-1; requires min >= 1, steps >= 2.
std::vector<double> alpha_grid(double min, double max, int steps);

}  // namespace wiretap::outage

#endif  // WIRETAP_OUTAGE_HPP
