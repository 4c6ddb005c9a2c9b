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
#ifndef WIRETAP_MONTECARLO_HPP
#define WIRETAP_MONTECARLO_HPP

// Seeded Monte Carlo simulator of the K-user, M-eavesdropper MISO link.
//
// A trial draws K user channels h_i and M eavesdropper channels g_j in C^t
// (unit variance per real component), serves i* = argmax |h_i|^2 with the
// beam h^ = h_i* / |h_i*|, and records the strongest projection
// |<h^, g_j*>|^2 together with the ratio (1 + P|h_i*|^2) / (1 + P|<h^, g_j*>|^2).
//
// Trial i draws only from stream (master_seed, i), so results do not depend on
// the number of worker threads.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "wiretap/outage.hpp"

namespace wiretap::mc {

enum class Conditioning { none, eve_above, user_above };
enum class ConditioningImpl { rejection, pot_model };

std::string to_string(Conditioning c);
std::string to_string(ConditioningImpl c);

struct SimConfig {
  outage::SystemShape shape;
  std::int64_t trials = 1;
  std::uint64_t master_seed = 0;
  Conditioning conditioning = Conditioning::none;
  ConditioningImpl conditioning_impl = ConditioningImpl::rejection;
  unsigned threads = 0;  // 0: hardware concurrency

  /// K, M, t >= 1 and P > 0 (conditioning on a side needs that side >= 2),
  /// trials >= 1.
  void validate() const;
};

struct TrialRecord {
  std::int64_t best_user = -1;  // i*; -1 when the gain comes from the POT model
  double max_gain = 0.0;        // |h_i*|^2
  std::int64_t best_eve = -1;   // j*; -1 when the projection comes from the POT model
  double max_projection = 0.0;  // |<h^_i*, g_j*>|^2
  double ratio = 1.0;
  double rate_bits = 0.0;
  std::int64_t attempts = 1;    // block draws used, > 1 only under rejection
};

/// A trial plus every per-user gain and per-eavesdropper projection of the
/// accepted draw.
struct TrialDraws {
  TrialRecord record;
  std::vector<double> user_gains;
  std::vector<double> projections;
};

TrialRecord sample_trial(const SimConfig& cfg, std::int64_t trial_index);
TrialDraws sample_trial_debug(const SimConfig& cfg, std::int64_t trial_index);

struct SimMetadata {
  Conditioning conditioning = Conditioning::none;
  ConditioningImpl conditioning_impl = ConditioningImpl::rejection;
  std::int64_t trials = 0;
  std::int64_t attempts = 0;
  double acceptance_rate = 1.0;
  double threshold = 0.0;  // u_m or u_k for conditional runs
};

struct EmpiricalCdf {
  std::vector<double> sorted_samples;
  std::size_t n = 0;
  SimMetadata meta;

  /// Fraction of samples <= x.
  double at(double x) const;
};

/// Unconditional ratio samples; cfg.conditioning must be none.
EmpiricalCdf simulate_cdf(const SimConfig& cfg);

/// Ratio samples with the strongest eavesdropper (or user) forced above its
/// threshold, by rejection or by the peaks-over-threshold surrogate.
EmpiricalCdf simulate_conditional_cdf(const SimConfig& cfg);

/// Probability that one rejection attempt is accepted.
double rejection_acceptance(const SimConfig& cfg);

/// sqrt(ln(2 / delta) / (2 n)).
double dkw_epsilon(std::size_t n, double delta);

struct EmpiricalCurve {
  outage::BoundCurve curve;
  std::vector<double> band_lower;
  std::vector<double> band_upper;
  double epsilon = 0.0;
};

EmpiricalCurve empirical_cdf_at(const EmpiricalCdf& cdf, const std::vector<double>& alphas,
                                double delta);

/// One ratio per line, shortest round-trip decimal form.
void write_samples(const EmpiricalCdf& cdf, std::ostream& out);

struct ExceedanceStats {
  double p_exactly_one = 0.0;
  double p_more_than_one = 0.0;
  double mean_count = 0.0;
  std::int64_t trials = 0;
  double threshold = 0.0;
};

/// Counts how many of M chi^2(2) draws exceed u_m = 2 ln M, over `trials`
/// repetitions.
ExceedanceStats exceedance_check(std::int64_t eves, std::int64_t trials, std::uint64_t seed,
                                 unsigned threads = 0);

/// Kolmogorov-Smirnov distance between n_maxima simulated maxima of n
/// chi^2(dof) draws and the Gumbel law with normalizing_constants(n, dof).
double gumbel_convergence_ks(std::int64_t n, int dof, std::int64_t n_maxima, std::uint64_t seed,
                             unsigned threads = 0);

/// sup |F_n - F| for sorted samples.
double ks_statistic(std::span<const double> sorted, const std::function<double(double)>& cdf);

namespace detail {
/// Runs body(begin, end) over contiguous chunks of [0, count).
void parallel_for(std::int64_t count, unsigned threads,
                  const std::function<void(std::int64_t, std::int64_t)>& body);
}  // namespace detail

}  // namespace wiretap::mc

#endif  // WIRETAP_MONTECARLO_HPP
