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
#include "wiretap/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <ostream>
#include <sstream>
#include <thread>

#include "wiretap/errors.hpp"
#include "wiretap/evt.hpp"
#include "wiretap/format.hpp"
#include "wiretap/rng.hpp"

namespace wiretap::mc {
namespace {

using cplx = std::complex<double>;

constexpr double kMinAcceptance = 1e-6;
constexpr std::int64_t kMaxAttempts = 100'000'000;
// Mean of the exponential excess over a threshold: the Gumbel scale a = 2.
constexpr double kExcessMean = 2.0;

unsigned resolve_threads(unsigned requested, std::int64_t count) {
  unsigned n = requested != 0 ? requested : std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::clamp<std::int64_t>(count, 1, n));
}

double norm2(std::span<const cplx> v) {
  double s = 0.0;
  for (const cplx& z : v) s += std::norm(z);
  return s;
}

void fill_channel(rng::Xoshiro256& g, std::span<cplx> v) {
  for (cplx& z : v) {
    const auto c = rng::complex_normal(g);
    z = {c.re, c.im};
  }
}

struct UserSide {
  std::int64_t index = -1;
  double gain = 0.0;
};

struct EveSide {
  std::int64_t index = -1;
  double projection = 0.0;
};

// Draws K users; leaves the unit beam of the strongest in `beam`.
UserSide draw_users(rng::Xoshiro256& g, std::int64_t users, std::span<cplx> scratch,
                    std::span<cplx> beam, std::vector<double>* gains) {
  UserSide best;
  for (std::int64_t i = 0; i < users; ++i) {
    fill_channel(g, scratch);
    const double gain = norm2(scratch);
    if (gains) gains->push_back(gain);
    if (gain > best.gain || best.index < 0) {
      best = {i, gain};
      std::copy(scratch.begin(), scratch.end(), beam.begin());
    }
  }
  const double inv = 1.0 / std::sqrt(best.gain);
  for (cplx& z : beam) z *= inv;
  return best;
}

EveSide draw_eves(rng::Xoshiro256& g, std::int64_t eves, std::span<const cplx> beam,
                  std::span<cplx> scratch, std::vector<double>* projections) {
  EveSide best;
  for (std::int64_t j = 0; j < eves; ++j) {
    fill_channel(g, scratch);
    cplx inner{0.0, 0.0};
    for (std::size_t k = 0; k < beam.size(); ++k) inner += std::conj(beam[k]) * scratch[k];
    const double proj = std::norm(inner);
    if (projections) projections->push_back(proj);
    if (proj > best.projection || best.index < 0) best = {j, proj};
  }
  return best;
}

double conditioning_threshold(const SimConfig& cfg) {
  switch (cfg.conditioning) {
    case Conditioning::none: return 0.0;
    case Conditioning::eve_above: return evt::threshold_eve(cfg.shape.eves);
    case Conditioning::user_above:
      return evt::threshold_user(cfg.shape.users, cfg.shape.antennas);
  }
  return 0.0;
}

TrialDraws run_trial(const SimConfig& cfg, std::int64_t trial_index, double threshold,
                     bool keep_draws) {
  const auto t = static_cast<std::size_t>(cfg.shape.antennas);
  std::vector<cplx> buffer(3 * t);
  std::span<cplx> scratch(buffer.data(), t);
  std::span<cplx> beam(buffer.data() + t, t);
  std::span<cplx> spare(buffer.data() + 2 * t, t);

  rng::Xoshiro256 g(cfg.master_seed, static_cast<std::uint64_t>(trial_index));
  TrialDraws out;
  auto* gains = keep_draws ? &out.user_gains : nullptr;
  auto* projections = keep_draws ? &out.projections : nullptr;
  const bool rejection = cfg.conditioning_impl == ConditioningImpl::rejection;
  std::int64_t attempts = 1;

  UserSide user;
  if (cfg.conditioning == Conditioning::user_above && !rejection) {
    // Gain replaced by u_k + Exp(mean a_K); the beam direction is isotropic.
    fill_channel(g, beam);
    const double inv = 1.0 / std::sqrt(norm2(beam));
    for (cplx& z : beam) z *= inv;
    user = {-1, threshold + g.exponential(kExcessMean)};
  } else {
    user = draw_users(g, cfg.shape.users, scratch, beam, gains);
    while (cfg.conditioning == Conditioning::user_above && user.gain <= threshold) {
      if (++attempts > kMaxAttempts) throw NumericError("user rejection exceeded attempt cap");
      if (gains) gains->clear();
      user = draw_users(g, cfg.shape.users, scratch, beam, gains);
    }
  }

  EveSide eve;
  if (cfg.conditioning == Conditioning::eve_above && !rejection) {
    eve = {-1, threshold + g.exponential(kExcessMean)};
  } else {
    eve = draw_eves(g, cfg.shape.eves, beam, spare, projections);
    while (cfg.conditioning == Conditioning::eve_above && eve.projection <= threshold) {
      if (++attempts > kMaxAttempts) throw NumericError("eavesdropper rejection exceeded attempt cap");
      if (projections) projections->clear();
      eve = draw_eves(g, cfg.shape.eves, beam, spare, projections);
    }
  }

  TrialRecord& r = out.record;
  r.best_user = user.index;
  r.max_gain = user.gain;
  r.best_eve = eve.index;
  r.max_projection = eve.projection;
  r.ratio = (1.0 + cfg.shape.power * user.gain) / (1.0 + cfg.shape.power * eve.projection);
  r.rate_bits = std::log2(r.ratio);
  r.attempts = attempts;
  return out;
}

EmpiricalCdf run_simulation(const SimConfig& cfg) {
  const double threshold = conditioning_threshold(cfg);
  if (cfg.conditioning != Conditioning::none &&
      cfg.conditioning_impl == ConditioningImpl::rejection) {
    const double acceptance = rejection_acceptance(cfg);
    if (acceptance < kMinAcceptance) {
      std::ostringstream os;
      os << "rejection acceptance probability " << acceptance
         << " is below 1e-6; use the pot_model conditioning";
      throw NumericError(os.str());
    }
  }
  const auto n = static_cast<std::size_t>(cfg.trials);
  std::vector<double> samples(n);
  std::vector<std::int64_t> attempts(n);
  detail::parallel_for(cfg.trials, cfg.threads, [&](std::int64_t begin, std::int64_t end) {
    for (std::int64_t i = begin; i < end; ++i) {
      const TrialDraws d = run_trial(cfg, i, threshold, false);
      samples[static_cast<std::size_t>(i)] = d.record.ratio;
      attempts[static_cast<std::size_t>(i)] = d.record.attempts;
    }
  });
  std::sort(samples.begin(), samples.end());

  EmpiricalCdf out;
  out.sorted_samples = std::move(samples);
  out.n = n;
  out.meta.conditioning = cfg.conditioning;
  out.meta.conditioning_impl = cfg.conditioning_impl;
  out.meta.trials = cfg.trials;
  out.meta.attempts = std::accumulate(attempts.begin(), attempts.end(), std::int64_t{0});
  out.meta.acceptance_rate =
      static_cast<double>(cfg.trials) / static_cast<double>(out.meta.attempts);
  out.meta.threshold = threshold;
  return out;
}

}  // namespace

std::string to_string(Conditioning c) {
  switch (c) {
    case Conditioning::none: return "none";
    case Conditioning::eve_above: return "eve_above";
    case Conditioning::user_above: return "user_above";
  }
  return "unknown";
}

std::string to_string(ConditioningImpl c) {
  return c == ConditioningImpl::rejection ? "rejection" : "pot_model";
}

void SimConfig::validate() const {
  const auto& s = shape;
  if (s.users < 1 || s.eves < 1 || s.antennas < 1 || !(s.power > 0.0) || !std::isfinite(s.power)) {
    std::ostringstream os;
    os << "SimConfig: need K, M, t >= 1 and P > 0 (got K=" << s.users << ", M=" << s.eves
       << ", t=" << s.antennas << ", P=" << s.power << ")";
    throw DomainError(os.str());
  }
  if (trials < 1) throw DomainError("SimConfig: trials must be >= 1");
  if (conditioning == Conditioning::eve_above && s.eves < 2) {
    throw DomainError("SimConfig: eavesdropper conditioning needs M >= 2");
  }
  if (conditioning == Conditioning::user_above && s.users < 2) {
    throw DomainError("SimConfig: user conditioning needs K >= 2");
  }
}

double rejection_acceptance(const SimConfig& cfg) {
  cfg.validate();
  // Each side's threshold is exceeded by one draw with probability 1/n.
  switch (cfg.conditioning) {
    case Conditioning::none: return 1.0;
    case Conditioning::eve_above:
      return -std::expm1(cfg.shape.eves * std::log1p(-1.0 / cfg.shape.eves));
    case Conditioning::user_above:
      return -std::expm1(cfg.shape.users * std::log1p(-1.0 / cfg.shape.users));
  }
  return 1.0;
}

TrialRecord sample_trial(const SimConfig& cfg, std::int64_t trial_index) {
  cfg.validate();
  if (trial_index < 0 || trial_index >= cfg.trials) {
    throw DomainError("sample_trial: trial index out of range");
  }
  return run_trial(cfg, trial_index, conditioning_threshold(cfg), false).record;
}

TrialDraws sample_trial_debug(const SimConfig& cfg, std::int64_t trial_index) {
  cfg.validate();
  if (trial_index < 0 || trial_index >= cfg.trials) {
    throw DomainError("sample_trial_debug: trial index out of range");
  }
  return run_trial(cfg, trial_index, conditioning_threshold(cfg), true);
}

double EmpiricalCdf::at(double x) const {
  if (sorted_samples.empty()) throw DomainError("EmpiricalCdf: no samples");
  const auto it = std::upper_bound(sorted_samples.begin(), sorted_samples.end(), x);
  return static_cast<double>(it - sorted_samples.begin()) /
         static_cast<double>(sorted_samples.size());
}

EmpiricalCdf simulate_cdf(const SimConfig& cfg) {
  cfg.validate();
  if (cfg.conditioning != Conditioning::none) {
    throw DomainError("simulate_cdf: conditioning must be none; use simulate_conditional_cdf");
  }
  return run_simulation(cfg);
}

EmpiricalCdf simulate_conditional_cdf(const SimConfig& cfg) {
  cfg.validate();
  if (cfg.conditioning == Conditioning::none) {
    throw DomainError("simulate_conditional_cdf: conditioning must not be none");
  }
  return run_simulation(cfg);
}

double dkw_epsilon(std::size_t n, double delta) {
  if (n == 0) throw DomainError("dkw_epsilon: empty sample");
  if (!(delta > 0.0 && delta < 1.0)) throw DomainError("dkw_epsilon: delta must lie in (0,1)");
  return std::sqrt(std::log(2.0 / delta) / (2.0 * static_cast<double>(n)));
}

EmpiricalCurve empirical_cdf_at(const EmpiricalCdf& cdf, const std::vector<double>& alphas,
                                double delta) {
  if (cdf.sorted_samples.empty()) throw DomainError("empirical_cdf_at: empty cdf");
  EmpiricalCurve out;
  out.epsilon = dkw_epsilon(cdf.sorted_samples.size(), delta);
  out.curve.kind = outage::CurveKind::empirical;
  out.curve.alphas = alphas;
  for (double a : alphas) {
    const double v = cdf.at(a);
    out.curve.values.push_back(v);
    out.curve.raw_values.push_back(v);
    out.curve.converged.push_back(true);
    out.band_lower.push_back(std::max(0.0, v - out.epsilon));
    out.band_upper.push_back(std::min(1.0, v + out.epsilon));
  }
  return out;
}

void write_samples(const EmpiricalCdf& cdf, std::ostream& out) {
  for (double v : cdf.sorted_samples) out << format_real(v) << '\n';
}

ExceedanceStats exceedance_check(std::int64_t eves, std::int64_t trials, std::uint64_t seed,
                                 unsigned threads) {
  if (eves < 2) throw DomainError("exceedance_check: need M >= 2");
  if (trials < 1) throw DomainError("exceedance_check: trials must be >= 1");
  const double u = evt::threshold_eve(eves);
  std::vector<std::int64_t> counts(static_cast<std::size_t>(trials));
  detail::parallel_for(trials, threads, [&](std::int64_t begin, std::int64_t end) {
    for (std::int64_t i = begin; i < end; ++i) {
      rng::Xoshiro256 g(seed, static_cast<std::uint64_t>(i));
      std::int64_t above = 0;
      for (std::int64_t j = 0; j < eves; ++j) {
        if (g.exponential(2.0) > u) ++above;
      }
      counts[static_cast<std::size_t>(i)] = above;
    }
  });
  std::int64_t one = 0, more = 0, total = 0;
  for (std::int64_t c : counts) {
    one += c == 1;
    more += c > 1;
    total += c;
  }
  const auto n = static_cast<double>(trials);
  return {static_cast<double>(one) / n, static_cast<double>(more) / n,
          static_cast<double>(total) / n, trials, u};
}

double ks_statistic(std::span<const double> sorted, const std::function<double(double)>& cdf) {
  if (sorted.empty()) throw DomainError("ks_statistic: empty sample");
  const auto n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = cdf(sorted[i]);
    d = std::max({d, (static_cast<double>(i) + 1.0) / n - f, f - static_cast<double>(i) / n});
  }
  return d;
}

double gumbel_convergence_ks(std::int64_t n, int dof, std::int64_t n_maxima, std::uint64_t seed,
                             unsigned threads) {
  if (n_maxima < 1000) throw DomainError("gumbel_convergence_ks: need at least 1000 maxima");
  const auto constants = evt::normalizing_constants(n, dof);
  const auto params = evt::GumbelParams::from_constants(constants);
  const int halves = dof / 2;
  std::vector<double> maxima(static_cast<std::size_t>(n_maxima));
  detail::parallel_for(n_maxima, threads, [&](std::int64_t begin, std::int64_t end) {
    for (std::int64_t i = begin; i < end; ++i) {
      rng::Xoshiro256 g(seed, static_cast<std::uint64_t>(i));
      double best = 0.0;
      for (std::int64_t j = 0; j < n; ++j) {
        // chi^2(dof) as a sum of dof/2 exponentials of mean 2.
        double product = 1.0;
        for (int h = 0; h < halves; ++h) product *= g.uniform_open0();
        best = std::max(best, -2.0 * std::log(product));
      }
      maxima[static_cast<std::size_t>(i)] = best;
    }
  });
  std::sort(maxima.begin(), maxima.end());
  return ks_statistic(maxima, [&](double x) { return evt::gumbel_cdf(x, params); });
}

namespace detail {

void parallel_for(std::int64_t count, unsigned threads,
                  const std::function<void(std::int64_t, std::int64_t)>& body) {
  if (count <= 0) return;
  const unsigned workers = resolve_threads(threads, count);
  if (workers == 1) {
    body(0, count);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  const std::int64_t chunk = (count + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    const std::int64_t begin = static_cast<std::int64_t>(w) * chunk;
    const std::int64_t end = std::min(count, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&, w, begin, end] {
      try {
        body(begin, end);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace detail
}  // namespace wiretap::mc
