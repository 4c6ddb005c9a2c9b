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
#include "wiretap/specfun.hpp"

#include <cmath>
#include <algorithm>
#include <limits>
#include <numbers>
#include <sstream>

#include "wiretap/errors.hpp"

namespace wiretap::specfun {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = 1e-300;
constexpr int kMaxSeriesTerms = 100000;
constexpr int kMaxFractionTerms = 100000;
constexpr double kInf = std::numeric_limits<double>::infinity();

void require_shape(double s, const char* fn) {
  if (!(s > 0.0) || !std::isfinite(s)) {
    std::ostringstream os;
    os << fn << ": shape must be finite and > 0, got " << s;
    throw DomainError(os.str());
  }
}

void require_argument(double z, const char* fn) {
  if (!(z >= 0.0)) {
    std::ostringstream os;
    os << fn << ": argument must be >= 0, got " << z;
    throw DomainError(os.str());
  }
}

// ln(1 - e^-x) for x > 0.
double log1mexp(double x) {
  return x < std::numbers::ln2 ? std::log(-std::expm1(-x)) : std::log1p(-std::exp(-x));
}

double raw_ln_gamma(double x) {
  int sign = 0;
  return ::lgamma_r(x, &sign);
}

// ln P(s, z) from sum_n z^n / ((s+1)...(s+n)).
double ln_p_series(double s, double z, double ln_z) {
  double sum = 1.0;
  double term = 1.0;
  double denom = s;
  for (int n = 1; n < kMaxSeriesTerms; ++n) {
    denom += 1.0;
    term *= z / denom;
    sum += term;
    if (term < sum * kEps * 0.25) {
      return s * ln_z - z - raw_ln_gamma(s + 1.0) + std::log(sum);
    }
  }
  std::ostringstream os;
  os << "incomplete gamma series did not converge (s=" << s << ", z=" << z << ")";
  throw NumericError(os.str());
}

// ln Q(s, z) from the Legendre continued fraction (modified Lentz).
double ln_q_fraction(double s, double z, double ln_z) {
  double b = z + 1.0 - s;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < kMaxFractionTerms; ++i) {
    const double an = -i * (i - s);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) {
      return s * ln_z - z - raw_ln_gamma(s) + std::log(h);
    }
  }
  std::ostringstream os;
  os << "incomplete gamma continued fraction did not converge (s=" << s
     << ", z=" << z << ")";
  throw NumericError(os.str());
}

RegularizedLogs logs_at(double s, double z, double ln_z) {
  if (z == 0.0 && ln_z == -kInf) return {-kInf, 0.0};
  if (z == kInf) return {0.0, -kInf};
  if (z < s + 1.0) {
    const double ln_p = ln_p_series(s, z, ln_z);
    return {ln_p, log1mexp(-ln_p)};
  }
  const double ln_q = ln_q_fraction(s, z, ln_z);
  return {log1mexp(-ln_q), ln_q};
}

bool saturates(double s, double z) { return z > kSaturationZ && z > 2.0 * s; }

}  // namespace

double ln_gamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    std::ostringstream os;
    os << "ln_gamma: argument must be finite and > 0, got " << x;
    throw DomainError(os.str());
  }
  return raw_ln_gamma(x);
}

double gamma_fn(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    std::ostringstream os;
    os << "gamma_fn: argument must be finite and > 0, got " << x;
    throw DomainError(os.str());
  }
  return std::tgamma(x);
}

RegularizedLogs regularized_gamma_logs(double s, double z) {
  require_shape(s, "regularized_gamma_logs");
  require_argument(z, "regularized_gamma_logs");
  return logs_at(s, z, z > 0.0 ? std::log(z) : -kInf);
}

double regularized_gamma_p(double s, double z) {
  return std::exp(regularized_gamma_logs(s, z).ln_p);
}

double regularized_gamma_q(double s, double z) {
  return std::exp(regularized_gamma_logs(s, z).ln_q);
}

double ln_lower_incomplete_gamma(double s, double z) {
  require_shape(s, "ln_lower_incomplete_gamma");
  require_argument(z, "ln_lower_incomplete_gamma");
  if (saturates(s, z)) return raw_ln_gamma(s);
  return raw_ln_gamma(s) + logs_at(s, z, z > 0.0 ? std::log(z) : -kInf).ln_p;
}

double ln_lower_incomplete_gamma_at_log(double s, double ln_z) {
  require_shape(s, "ln_lower_incomplete_gamma_at_log");
  if (std::isnan(ln_z)) throw DomainError("ln_lower_incomplete_gamma_at_log: NaN argument");
  if (ln_z == -kInf) return -kInf;
  const double z = std::exp(ln_z);
  if (saturates(s, z)) return raw_ln_gamma(s);
  return raw_ln_gamma(s) + logs_at(s, z, ln_z).ln_p;
}

double lower_incomplete_gamma(double s, double z) {
  return std::exp(ln_lower_incomplete_gamma(s, z));
}

double inverse_regularized_gamma_q(double s, double q) {
  require_shape(s, "inverse_regularized_gamma_q");
  if (!(q > 0.0 && q < 1.0)) {
    std::ostringstream os;
    os << "inverse_regularized_gamma_q: probability must lie in (0,1), got " << q;
    throw DomainError(os.str());
  }
  const double target = std::log(q);
  const double ln_gamma_s = raw_ln_gamma(s);
  // Work in w = ln z: for small s the root can sit hundreds of decades below 1.
  auto excess = [&](double w) { return regularized_gamma_logs(s, std::exp(w)).ln_q - target; };

  // ln Q decreases in w; bracket the sign change.
  double hi = std::log(std::max(1.0, s));
  while (excess(hi) > 0.0) {
    hi += std::numbers::ln2;
    if (hi > 690.0) throw NumericError("inverse_regularized_gamma_q: bracket overflow");
  }
  constexpr double kMinLogZ = -708.0;  // ln of the smallest normal double
  double lo = hi - 1.0;
  for (double step = 1.0; excess(lo) <= 0.0; step *= 2.0) {
    hi = lo;
    lo = std::max(kMinLogZ, lo - step);
    if (lo == kMinLogZ && excess(lo) <= 0.0) {
      std::ostringstream os;
      os << "inverse_regularized_gamma_q: root below the smallest normal double (s=" << s
         << ", q=" << q << ")";
      throw RangeError(os.str());
    }
  }

  double w = 0.5 * (lo + hi);
  constexpr int kMaxIter = 400;
  for (int it = 0; it < kMaxIter; ++it) {
    const double z = std::exp(w);
    const RegularizedLogs logs = regularized_gamma_logs(s, z);
    const double f = logs.ln_q - target;
    if (f == 0.0) return z;
    if (f > 0.0) lo = w; else hi = w;
    // d ln Q / d ln z = -z^s e^-z / (Gamma(s) Q)
    const double slope = -std::exp(s * w - z - ln_gamma_s - logs.ln_q);
    double next = w - f / slope;
    if (!(next > lo && next < hi) || !std::isfinite(next)) next = 0.5 * (lo + hi);
    const double tol = 4.0 * kEps * std::max(1.0, std::fabs(w));
    if (std::fabs(next - w) <= tol || hi - lo <= tol) {
      const double root = std::exp(next);
      const double achieved = std::exp(regularized_gamma_logs(s, root).ln_q);
      if (std::fabs(achieved - q) > 1e-10) {
        std::ostringstream os;
        os << "inverse_regularized_gamma_q: stalled at z=" << root << " with Q=" << achieved
           << " (target " << q << ", s=" << s << ")";
        throw NumericError(os.str());
      }
      return root;
    }
    w = next;
  }
  std::ostringstream os;
  os << "inverse_regularized_gamma_q: no convergence after " << kMaxIter
     << " iterations (s=" << s << ", q=" << q << ", bracket=[" << std::exp(lo) << ", "
     << std::exp(hi) << "])";
  throw NumericError(os.str());
}

BoundPair claim1_bounds(double s, double z) {
  require_shape(s, "claim1_bounds");
  if (!(z > 0.0)) {
    std::ostringstream os;
    os << "claim1_bounds: argument must be > 0, got " << z;
    throw DomainError(os.str());
  }
  if (s == 1.0) {
    throw DegenerateError("claim1_bounds: s = 1 makes both sides equal gamma(1, z) = 1 - e^-z");
  }
  const double ln_gamma_s = raw_ln_gamma(s);
  const double scale = std::exp(-raw_ln_gamma(1.0 + s) / s);
  const double plain = std::exp(ln_gamma_s + s * log1mexp(z));
  const double scaled = std::exp(ln_gamma_s + s * log1mexp(z * scale));
  return s < 1.0 ? BoundPair{plain, scaled} : BoundPair{scaled, plain};
}

BracketMargins claim1_log_margins(double s, double z) {
  (void)claim1_bounds(s, z);  // argument checks
  const double scale = std::exp(-raw_ln_gamma(1.0 + s) / s);
  const double ln_p = regularized_gamma_logs(s, z).ln_p;
  const double plain = s * log1mexp(z);
  const double scaled = s * log1mexp(z * scale);
  if (s < 1.0) return {ln_p - plain, scaled - ln_p};
  return {ln_p - scaled, plain - ln_p};
}

}  // namespace wiretap::specfun
