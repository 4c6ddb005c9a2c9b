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
#include "wiretap/evt.hpp"

#include <cmath>
#include <sstream>

#include "wiretap/errors.hpp"
#include "wiretap/specfun.hpp"

namespace wiretap::evt {
namespace {

void validate(const GumbelParams& p) {
  if (!(p.scale > 0.0) || !std::isfinite(p.scale) || !std::isfinite(p.location)) {
    std::ostringstream os;
    os << "gumbel: invalid parameters (location=" << p.location << ", scale=" << p.scale << ")";
    throw DomainError(os.str());
  }
}

}  // namespace

NormalizingConstants normalizing_constants(std::int64_t n, int dof) {
  if (dof < 2 || dof % 2 != 0) {
    std::ostringstream os;
    os << "normalizing_constants: dof must be an even integer >= 2, got " << dof;
    throw DomainError(os.str());
  }
  if (n < 2 || (dof > 2 && n < 3)) {
    std::ostringstream os;
    os << "normalizing_constants: n=" << n << " too small for dof=" << dof
       << " (need n >= 2, and n >= 3 so that ln ln n > 0 when dof > 2)";
    throw DomainError(os.str());
  }
  const double ln_n = std::log(static_cast<double>(n));
  const double half = 0.5 * dof;
  double b = ln_n;
  if (dof > 2) b += (half - 1.0) * std::log(ln_n) - specfun::ln_gamma(half);
  return {2.0, 2.0 * b, n, dof};
}

GumbelParams GumbelParams::from_constants(const NormalizingConstants& c, double power) {
  if (!(power > 0.0) || !std::isfinite(power)) {
    std::ostringstream os;
    os << "GumbelParams: power must be finite and > 0, got " << power;
    throw DomainError(os.str());
  }
  return {power * c.b, power * c.a};
}

double gumbel_cdf(double x, const GumbelParams& p) {
  validate(p);
  return std::exp(-std::exp(-(x - p.location) / p.scale));
}

double gumbel_quantile(double q, const GumbelParams& p) {
  validate(p);
  if (!(q > 0.0 && q < 1.0)) {
    std::ostringstream os;
    os << "gumbel_quantile: probability must lie in (0,1), got " << q;
    throw DomainError(os.str());
  }
  return p.location - p.scale * std::log(-std::log(q));
}

double threshold_eve(std::int64_t eves) {
  if (eves < 2) throw DomainError("threshold_eve: need M >= 2");
  return 2.0 * std::log(static_cast<double>(eves));
}

double threshold_user(std::int64_t users, int antennas) {
  if (users < 2) throw DomainError("threshold_user: need K >= 2");
  if (antennas < 1) throw DomainError("threshold_user: need t >= 1");
  if (antennas == 1) return 2.0 * std::log(static_cast<double>(users));
  return 2.0 * specfun::inverse_regularized_gamma_q(antennas, 1.0 / static_cast<double>(users));
}

double threshold_user_asymptotic(std::int64_t users, int antennas) {
  if (antennas < 1) throw DomainError("threshold_user_asymptotic: need t >= 1");
  return normalizing_constants(users, 2 * antennas).b;
}

}  // namespace wiretap::evt
