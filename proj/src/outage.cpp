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
#include "wiretap/outage.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "quadrature.hpp"
#include "wiretap/errors.hpp"
#include "wiretap/evt.hpp"
#include "wiretap/specfun.hpp"

namespace wiretap::outage {
namespace {

constexpr double kSeriesStop = 1e-12;
// Sum of |terms| above which double-precision terms (each carrying ~1e-14
// relative error from exp(log)) can no longer resolve 1e-7 in the total.
constexpr double kSeriesCancellationLimit = 1e7;
constexpr double kQuadAbsTol = 1e-13;
constexpr double kQuadRelTol = 1e-12;
constexpr double kQuadConvergedTol = 1e-9;
constexpr double kMaxRequiredUsers = 1e12;

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

void require_alpha(double alpha, const char* fn) {
  if (!(alpha >= 1.0) || !std::isfinite(alpha)) {
    std::ostringstream os;
    os << fn << ": alpha must be finite and >= 1, got " << alpha;
    throw DomainError(os.str());
  }
}

void require_lambda_users(double users, int antennas, const char* fn) {
  if (antennas < 1) {
    std::ostringstream os;
    os << fn << ": need t >= 1, got " << antennas;
    throw DomainError(os.str());
  }
  if (!(users >= 3.0) && !(antennas == 1 && users >= 2.0)) {
    std::ostringstream os;
    os << fn << ": need K >= 3 (so that ln K > 1), got " << users;
    throw DomainError(os.str());
  }
}

// ln of K (ln K)^{t-1} / Gamma(t): the users' side of Lambda.
double ln_user_mass(double users, int antennas) {
  const double ln_k = std::log(users);
  double v = ln_k - specfun::ln_gamma(antennas);
  if (antennas > 1) v += (antennas - 1) * std::log(ln_k);
  return v;
}

double ln_lambda_closed(double users, double eves, int antennas, double alpha) {
  return alpha * (0.5 + std::log(eves)) - 0.5 - ln_user_mass(users, antennas);
}

// s e^{-y s} gamma(s, e^y) = int_0^1 s u^{s-1} exp(-e^y u) du, always in (0, 1].
double excess_kernel(double s, double y) {
  return std::exp(std::log(s) - y * s + specfun::ln_lower_incomplete_gamma_at_log(s, y));
}

OutageValue make_value(double raw, bool converged = true) {
  return {clamp01(raw), raw, converged};
}

}  // namespace

void SystemShape::validate() const {
  if (users < 2 || eves < 2 || antennas < 1 || !(power > 0.0) || !std::isfinite(power)) {
    std::ostringstream os;
    os << "SystemShape: need K >= 2, M >= 2, t >= 1, P > 0 (got K=" << users << ", M=" << eves
       << ", t=" << antennas << ", P=" << power << ")";
    throw DomainError(os.str());
  }
}

OutageQuery OutageQuery::from_alpha(double alpha) {
  require_alpha(alpha, "OutageQuery");
  return {alpha, std::log2(alpha)};
}

OutageQuery OutageQuery::from_rate(double rate_bits) {
  if (!(rate_bits >= 0.0) || !std::isfinite(rate_bits)) {
    throw DomainError("OutageQuery: rate must be finite and >= 0");
  }
  return {std::exp2(rate_bits), rate_bits};
}

ModelConstants model_constants(const SystemShape& shape, UserThreshold threshold) {
  shape.validate();
  const auto users = evt::normalizing_constants(shape.users, 2 * shape.antennas);
  const auto eves = evt::normalizing_constants(shape.eves, 2);
  const double p = shape.power;
  const double u_k = threshold == UserThreshold::exact
                         ? evt::threshold_user(shape.users, shape.antennas)
                         : users.b;
  return {p * users.a, p * users.b, p * eves.a, p * eves.b,
          p * evt::threshold_eve(shape.eves), p * u_k};
}

OutageValue theorem1_series(const ModelConstants& c, double alpha, int n_terms) {
  require_alpha(alpha, "theorem1_series");
  if (n_terms < 1) throw DomainError("theorem1_series: need at least one term");
  const double gap = 1.0 + c.b_users - alpha * (1.0 + c.b_eves);
  const double x = gap / (alpha * c.a_eves);
  const double r = c.a_users / (alpha * c.a_eves);
  auto ln_term = [&](int k) {
    const double n = k + 1.0;
    return -n * x + specfun::ln_gamma(1.0 + n * r) - specfun::ln_gamma(n + 1.0);
  };

  // Neumaier summation.
  double sum = 0.0;
  double carry = 0.0;
  double magnitude = 0.0;
  bool stopped = false;
  double current = ln_term(0);
  for (int k = 0; k < n_terms; ++k) {
    if (current > 700.0) {
      std::ostringstream os;
      os << "theorem1_series: term " << k << " overflows (ln|term| = " << current
         << ", x = " << x << "); use the quadrature strategy";
      throw NumericError(os.str());
    }
    const double term = (k % 2 == 0 ? 1.0 : -1.0) * std::exp(current);
    const double t = sum + term;
    carry += std::fabs(sum) >= std::fabs(term) ? (sum - t) + term : (term - t) + sum;
    sum = t;
    magnitude += std::fabs(term);
    const double next = ln_term(k + 1);
    if (std::exp(next) < kSeriesStop && next < current) {
      stopped = true;
      break;
    }
    current = next;
  }
  if (magnitude > kSeriesCancellationLimit) {
    std::ostringstream os;
    os << "theorem1_series: cancellation across terms of total magnitude " << magnitude
       << " (x = " << x << ", alpha = " << alpha << "); use the quadrature strategy";
    throw NumericError(os.str());
  }
  const bool geometric_ok = r < 1.0 || gap > 0.0;
  return make_value(sum + carry, stopped && geometric_ok);
}

OutageValue theorem1_quadrature(const ModelConstants& c, double alpha) {
  require_alpha(alpha, "theorem1_quadrature");
  const double ln_c = (1.0 + c.b_users - alpha * (1.0 + c.b_eves)) / c.a_users;
  const double p = alpha * c.a_eves / c.a_users;
  // exp(-z) < 1e-20 beyond this point.
  constexpr double kTail = 46.0;
  const double knee = std::exp(-ln_c / p);  // where c z^p = 1

  auto power_term = [&](double z) { return std::exp(ln_c + p * std::log(z)); };
  detail::QuadratureResult result;
  double raw = 0.0;
  if (ln_c > 0.0) {
    // CDF directly; the integrand is cut off near the knee.
    const double upper = std::min(kTail, knee * std::pow(kTail, 1.0 / p));
    std::array<double, 3> breaks{0.0, std::min(knee, upper), upper};
    result = detail::integrate_adaptive(
        [&](double z) { return std::exp(-z - power_term(z)); }, breaks, kQuadAbsTol, kQuadRelTol);
    raw = result.value;
  } else {
    // Complement, which is the small side when c <= 1.
    std::array<double, 3> breaks{0.0, std::min(knee, kTail), kTail};
    result = detail::integrate_adaptive(
        [&](double z) { return -std::exp(-z) * std::expm1(-power_term(z)); }, breaks,
        kQuadAbsTol, kQuadRelTol);
    raw = 1.0 - result.value;
  }
  return make_value(raw, result.error <= kQuadConvergedTol);
}

OutageValue theorem1_cdf(const SystemShape& shape, double alpha, Theorem1Strategy strategy) {
  const ModelConstants c = model_constants(shape);
  if (const auto* s = std::get_if<SeriesStrategy>(&strategy)) {
    return theorem1_series(c, alpha, s->n_terms);
  }
  return theorem1_quadrature(c, alpha);
}

OutageValue lemma1_upper_cdf(const ModelConstants& c, double alpha) {
  require_alpha(alpha, "lemma1_upper_cdf");
  const double s = c.a_users / (alpha * c.a_eves);
  const double y = (1.0 + c.b_users - alpha * (1.0 + c.eve_threshold)) / c.a_users;
  return make_value(excess_kernel(s, y));
}

OutageValue lemma1_upper_cdf(const SystemShape& shape, double alpha) {
  return lemma1_upper_cdf(model_constants(shape), alpha);
}

OutageValue lemma2_lower_cdf(const ModelConstants& c, double alpha) {
  require_alpha(alpha, "lemma2_lower_cdf");
  const double s = alpha * c.a_eves / c.a_users;
  const double y = -(1.0 + c.user_threshold - alpha * (1.0 + c.b_eves)) / (alpha * c.a_eves);
  return make_value(1.0 - excess_kernel(s, y));
}

OutageValue lemma2_lower_cdf(const SystemShape& shape, double alpha, UserThreshold threshold) {
  return lemma2_lower_cdf(model_constants(shape, threshold), alpha);
}

double ln_lambda_factor(const SystemShape& shape, double alpha) {
  shape.validate();
  require_alpha(alpha, "lambda_factor");
  require_lambda_users(static_cast<double>(shape.users), shape.antennas, "lambda_factor");
  if (shape.power == 1.0) {
    return ln_lambda_closed(static_cast<double>(shape.users), static_cast<double>(shape.eves),
                            shape.antennas, alpha);
  }
  const ModelConstants c = model_constants(shape);
  return -(1.0 + c.b_users - alpha * (1.0 + c.eve_threshold)) / c.a_users;
}

double lambda_factor(const SystemShape& shape, double alpha) {
  return std::exp(ln_lambda_factor(shape, alpha));
}

CorollaryBounds corollary_bounds_from_log_lambda(double ln_lambda, double alpha) {
  require_alpha(alpha, "corollary_bounds");
  if (std::isnan(ln_lambda)) throw DomainError("corollary_bounds: NaN Lambda");
  auto log1mexp = [](double x) {
    return x < std::numbers::ln2 ? std::log(-std::expm1(-x)) : std::log1p(-std::exp(-x));
  };
  const double upper_arg = std::exp((alpha - 1.0) * std::numbers::ln2 - ln_lambda);
  const double raw_upper = std::exp((ln_lambda + log1mexp(upper_arg)) / alpha);
  const double lower_arg = std::exp(ln_lambda / alpha);
  const double raw_lower = 1.0 - std::exp(specfun::ln_gamma(1.0 + alpha) - ln_lambda +
                                          alpha * log1mexp(lower_arg));
  CorollaryBounds out;
  out.raw_lower = raw_lower;
  out.raw_upper = raw_upper;
  out.bounds = {clamp01(raw_lower), clamp01(raw_upper)};
  out.lambda = std::exp(ln_lambda);
  return out;
}

CorollaryBounds corollary_bounds(const SystemShape& shape, double alpha) {
  return corollary_bounds_from_log_lambda(ln_lambda_factor(shape, alpha), alpha);
}

double critical_eves(std::int64_t users, int antennas, double alpha) {
  require_alpha(alpha, "critical_eves");
  require_lambda_users(static_cast<double>(users), antennas, "critical_eves");
  return std::exp(-0.5 + (0.5 + ln_user_mass(static_cast<double>(users), antennas)) / alpha);
}

double required_users(double eves, int antennas, double alpha, double target_lambda) {
  require_alpha(alpha, "required_users");
  if (!(target_lambda > 0.0) || !std::isfinite(target_lambda)) {
    throw DomainError("required_users: target Lambda must be finite and > 0");
  }
  if (!(eves > 0.0) || !std::isfinite(eves)) throw DomainError("required_users: need M > 0");
  if (antennas < 1) throw DomainError("required_users: need t >= 1");
  // Lambda <= target  <=>  ln K + (t-1) ln ln K - ln Gamma(t) >= needed.
  const double needed = alpha * (0.5 + std::log(eves)) - 0.5 - std::log(target_lambda);
  auto mass_at = [&](double ln_k) {
    return ln_user_mass(std::exp(ln_k), antennas);
  };
  double lo = std::log(3.0);
  double hi = std::log(kMaxRequiredUsers);
  if (mass_at(lo) >= needed) return 3.0;
  if (mass_at(hi) < needed) {
    std::ostringstream os;
    os << "required_users: no K <= 1e12 reaches Lambda <= " << target_lambda << " (M=" << eves
       << ", t=" << antennas << ", alpha=" << alpha << ")";
    throw RangeError(os.str());
  }
  while (hi - lo > 1e-13) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (mass_at(mid) >= needed ? hi : lo) = mid;
  }
  return std::exp(hi);
}

ScalingResult scaling(double eves, int antennas, double alpha, double target_lambda) {
  ScalingResult out;
  out.eves = eves;
  out.antennas = antennas;
  out.alpha = alpha;
  out.target_lambda = target_lambda;
  out.required_K = required_users(eves, antennas, alpha, target_lambda);
  const double ln_lambda = ln_lambda_closed(out.required_K, eves, antennas, alpha);
  out.lambda = std::exp(ln_lambda);
  out.critical_M =
      std::exp(-0.5 + (0.5 + ln_user_mass(out.required_K, antennas)) / alpha);
  const CorollaryBounds cb = corollary_bounds_from_log_lambda(ln_lambda, alpha);
  out.cor1_upper = cb.bounds.upper;
  out.cor2_lower = cb.bounds.lower;
  return out;
}

std::string to_string(CurveKind kind) {
  switch (kind) {
    case CurveKind::theorem1_series: return "theorem1_series";
    case CurveKind::theorem1_quadrature: return "theorem1_quadrature";
    case CurveKind::lemma1_upper: return "lemma1_upper";
    case CurveKind::lemma2_lower: return "lemma2_lower";
    case CurveKind::cor1_upper: return "cor1_upper";
    case CurveKind::cor2_lower: return "cor2_lower";
    case CurveKind::empirical: return "empirical";
  }
  return "unknown";
}

BoundCurve evaluate_curve(const SystemShape& shape, const std::vector<double>& alphas,
                          CurveKind kind, const CurveOptions& options) {
  if (kind == CurveKind::empirical) {
    throw DomainError("evaluate_curve: empirical curves come from the simulator");
  }
  const ModelConstants c = model_constants(shape, options.user_threshold);
  BoundCurve curve;
  curve.kind = kind;
  curve.alphas = alphas;
  curve.values.reserve(alphas.size());
  curve.raw_values.reserve(alphas.size());
  curve.converged.reserve(alphas.size());
  for (double alpha : alphas) {
    OutageValue v;
    switch (kind) {
      case CurveKind::theorem1_series:
        try {
          v = theorem1_series(c, alpha, options.n_terms);
        } catch (const NumericError&) {
          const double nan = std::numeric_limits<double>::quiet_NaN();
          v = {nan, nan, false};
        }
        break;
      case CurveKind::theorem1_quadrature: v = theorem1_quadrature(c, alpha); break;
      case CurveKind::lemma1_upper: v = lemma1_upper_cdf(c, alpha); break;
      case CurveKind::lemma2_lower: v = lemma2_lower_cdf(c, alpha); break;
      case CurveKind::cor1_upper:
      case CurveKind::cor2_lower: {
        const CorollaryBounds cb = corollary_bounds(shape, alpha);
        v = kind == CurveKind::cor1_upper ? OutageValue{cb.bounds.upper, cb.raw_upper, true}
                                          : OutageValue{cb.bounds.lower, cb.raw_lower, true};
        break;
      }
      case CurveKind::empirical: break;
    }
    curve.values.push_back(v.value);
    curve.raw_values.push_back(v.raw);
    curve.converged.push_back(v.converged);
  }
  return curve;
}

std::vector<double> alpha_grid(double min, double max, int steps) {
  if (!(min >= 1.0) || !(max >= min) || !std::isfinite(max) || steps < 2) {
    std::ostringstream os;
    os << "alpha grid: need 1 <= min <= max and steps >= 2 (got min=" << min << ", max=" << max
       << ", steps=" << steps << ")";
    throw DomainError(os.str());
  }
  std::vector<double> grid(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i) {
    grid[static_cast<std::size_t>(i)] = min + (max - min) * i / (steps - 1);
  }
  grid.back() = max;
  return grid;
}

}  // namespace wiretap::outage
