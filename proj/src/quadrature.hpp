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
#ifndef WIRETAP_SRC_QUADRATURE_HPP
#define WIRETAP_SRC_QUADRATURE_HPP

// Globally adaptive Gauss-Kronrod (7/15) integration on a finite interval.
// The subinterval with the largest error estimate is bisected until the
// summed estimate meets max(abs_tol, rel_tol * |value|).

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <span>
#include <tuple>
#include <utility>
#include <vector>

namespace wiretap::detail {

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  int intervals = 0;
  bool converged = false;
};

namespace gk15 {
inline constexpr std::array<double, 8> kNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kKronrod = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kGauss = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};
}  // namespace gk15

struct Segment {
  double lo;
  double hi;
  double value;
  double error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

template <class F>
Segment gk15_segment(F& f, double lo, double hi) {
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  const double fc = f(center);
  double kronrod = fc * gk15::kKronrod[7];
  double gauss = fc * gk15::kGauss[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * gk15::kNodes[j];
    const double sum = f(center - dx) + f(center + dx);
    kronrod += gk15::kKronrod[j] * sum;
    if (j % 2 == 1) gauss += gk15::kGauss[j / 2] * sum;
  }
  return {lo, hi, kronrod * half, std::fabs((kronrod - gauss) * half)};
}

/// Integrates f over [breaks.front(), breaks.back()], seeding the adaptive
/// partition with the given (sorted) breakpoints.
template <class F>
QuadratureResult integrate_adaptive(F f, std::span<const double> breaks, double abs_tol,
                                    double rel_tol, int max_intervals = 4000) {
  std::priority_queue<Segment> heap;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    if (breaks[i + 1] > breaks[i]) heap.push(gk15_segment(f, breaks[i], breaks[i + 1]));
  }
  auto totals = [&heap]() {
    // Recomputed from scratch to avoid drift from repeated add/subtract.
    auto copy = heap;
    double v = 0.0, e = 0.0;
    while (!copy.empty()) {
      v += copy.top().value;
      e += copy.top().error;
      copy.pop();
    }
    return std::pair{v, e};
  };
  auto [value, error] = totals();
  int intervals = static_cast<int>(heap.size());
  while (error > std::max(abs_tol, rel_tol * std::fabs(value)) && intervals < max_intervals) {
    const Segment worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (!(mid > worst.lo && mid < worst.hi)) {
      heap.push(worst);
      break;
    }
    const Segment left = gk15_segment(f, worst.lo, mid);
    const Segment right = gk15_segment(f, mid, worst.hi);
    heap.push(left);
    heap.push(right);
    ++intervals;
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    if (intervals % 64 == 0) std::tie(value, error) = totals();
  }
  std::tie(value, error) = totals();
  return {value, error, intervals, error <= std::max(abs_tol, rel_tol * std::fabs(value))};
}

}  // namespace wiretap::detail

#endif  // WIRETAP_SRC_QUADRATURE_HPP
