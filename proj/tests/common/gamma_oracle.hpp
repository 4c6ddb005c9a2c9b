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
#pragma once

#include <algorithm>
#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace wiretap::testing {

// gamma(s, z) by adaptive Gauss-Kronrod in long double. With k = ceil(s) and
// tau = u^{k/s} the integrand becomes (k/s) u^{k-1} exp(-u^{k/s}), which has
// no low-order singularity at the origin. Split at the mode when inside.
long double gamma_oracle(long double s, long double z) {
  using boost::math::quadrature::gauss_kronrod;
  constexpr long double tol = 1e-15L;
  const long double k = std::max(1.0L, std::ceil(s));
  const long double m = k / s;
  auto f = [k, m](long double u) {
    if (u == 0) return k == 1 ? m : 0.0L;
    return m * std::exp((k - 1) * std::log(u) - std::pow(u, m));
  };
  const long double top = std::pow(z, 1 / m);
  const long double mode = s > 1 ? std::pow(s - 1, 1 / m) : 0.0L;
  if (mode > 0 && mode < top) {
    return gauss_kronrod<long double, 61>::integrate(f, 0.0L, mode, 15, tol) +
           gauss_kronrod<long double, 61>::integrate(f, mode, top, 15, tol);
  }
  return gauss_kronrod<long double, 61>::integrate(f, 0.0L, top, 15, tol);
}

}  // namespace wiretap::testing
