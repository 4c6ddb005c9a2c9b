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
#include "wiretap/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "json.hpp"

#include "wiretap/errors.hpp"
#include "wiretap/format.hpp"
#include "wiretap/rng.hpp"

namespace wiretap::exp {
namespace {

using nlohmann::ordered_json;
using Cell = std::optional<double>;

// Stream offsets keep the three fig1 simulations of one t independent.
constexpr std::uint64_t kStreamUnconditional = 0;
constexpr std::uint64_t kStreamEveAbove = 1;
constexpr std::uint64_t kStreamUserAbove = 2;

Cell cell(double v) {
  if (std::isnan(v)) return std::nullopt;
  return v;
}

Cell flag(bool b) { return b ? 1.0 : 0.0; }

std::uint64_t block_seed(std::uint64_t seed, int antennas, std::uint64_t stream) {
  return rng::derive_seed(seed, static_cast<std::uint64_t>(antennas) * 16 + stream);
}

outage::UserThreshold threshold_for(const ExperimentSpec& spec) {
  if (spec.user_threshold) return *spec.user_threshold;
  switch (spec.experiment) {
    case Experiment::fig2:
    case Experiment::fig3: return outage::UserThreshold::asymptotic;
    default: return outage::UserThreshold::exact;
  }
}

std::string threshold_name(outage::UserThreshold t) {
  return t == outage::UserThreshold::exact ? "exact" : "asymptotic";
}

std::vector<double> grid_of(const ExperimentSpec& spec) {
  if (spec.alpha_grid.steps == 1) return {spec.alpha_grid.min};
  return outage::alpha_grid(spec.alpha_grid.min, spec.alpha_grid.max, spec.alpha_grid.steps);
}

outage::SystemShape shape_of(const ExperimentSpec& spec, int antennas) {
  outage::SystemShape s;
  s.users = spec.users;
  s.eves = spec.eves;
  s.antennas = antennas;
  s.power = spec.power;
  return s;
}

mc::EmpiricalCdf simulate(const ExperimentSpec& spec, const outage::SystemShape& shape,
                          mc::Conditioning conditioning, std::uint64_t seed) {
  mc::SimConfig cfg;
  cfg.shape = shape;
  cfg.trials = spec.trials;
  cfg.master_seed = seed;
  cfg.conditioning = conditioning;
  cfg.conditioning_impl = spec.conditioning_impl;
  cfg.threads = spec.threads;
  return conditioning == mc::Conditioning::none ? mc::simulate_cdf(cfg)
                                                : mc::simulate_conditional_cdf(cfg);
}

std::string tagged(const std::string& prefix, int antennas, const std::string& key) {
  return prefix + std::to_string(antennas) + "." + key;
}

void add_sim_metadata(CurveTable& table, int antennas, const std::string& label,
                      const mc::EmpiricalCdf& cdf) {
  table.metadata.emplace_back(tagged("t", antennas, label + ".conditioning"),
                              mc::to_string(cdf.meta.conditioning));
  if (cdf.meta.conditioning != mc::Conditioning::none) {
    table.metadata.emplace_back(tagged("t", antennas, label + ".impl"),
                                mc::to_string(cdf.meta.conditioning_impl));
    table.metadata.emplace_back(tagged("t", antennas, label + ".threshold"),
                                format_real(cdf.meta.threshold));
    table.metadata.emplace_back(tagged("t", antennas, label + ".acceptance_rate"),
                                format_real(cdf.meta.acceptance_rate));
  }
}

void add_common_metadata(CurveTable& table, const ExperimentSpec& spec) {
  table.metadata.emplace_back("users", std::to_string(spec.users));
  table.metadata.emplace_back("power", format_real(spec.power));
  table.metadata.emplace_back("user_threshold", threshold_name(threshold_for(spec)));
}

CurveTable run_fig1(const ExperimentSpec& spec, bool with_bounds_only) {
  const auto alphas = grid_of(spec);
  const auto threshold = threshold_for(spec);
  CurveTable table;
  table.experiment = to_string(spec.experiment);
  add_common_metadata(table, spec);
  table.metadata.emplace_back("eves", std::to_string(spec.eves));
  table.metadata.emplace_back("n_terms", std::to_string(spec.n_terms));

  const bool simulate_runs = spec.trials > 0;
  table.columns = {{"t", ColumnType::integer}, {"alpha", ColumnType::real}};
  if (!with_bounds_only) {
    table.columns.insert(table.columns.end(), {{"empirical", ColumnType::probability},
                                               {"dkw_lo", ColumnType::probability},
                                               {"dkw_hi", ColumnType::probability},
                                               {"empirical_eve_above", ColumnType::probability},
                                               {"empirical_user_above", ColumnType::probability}});
  } else if (simulate_runs) {
    table.columns.insert(table.columns.end(), {{"empirical", ColumnType::probability},
                                               {"dkw_lo", ColumnType::probability},
                                               {"dkw_hi", ColumnType::probability}});
  }
  table.columns.insert(table.columns.end(), {{"theorem1_series", ColumnType::probability},
                                             {"theorem1_quadrature", ColumnType::probability},
                                             {"lemma1_upper", ColumnType::probability},
                                             {"lemma2_lower", ColumnType::probability}});
  if (with_bounds_only) {
    table.columns.insert(table.columns.end(), {{"cor1_upper", ColumnType::probability},
                                               {"cor2_lower", ColumnType::probability}});
  }
  table.columns.push_back({"converged", ColumnType::flag});
  if (simulate_runs || !with_bounds_only) {
    table.metadata.emplace_back("trials", std::to_string(spec.trials));
    table.metadata.emplace_back("seed", std::to_string(spec.seed));
    table.metadata.emplace_back("delta", format_real(spec.delta));
  }

  for (int t : spec.antennas) {
    const auto shape = shape_of(spec, t);
    outage::CurveOptions opts{spec.n_terms, threshold};
    const auto series = outage::evaluate_curve(shape, alphas, outage::CurveKind::theorem1_series, opts);
    const auto quad =
        outage::evaluate_curve(shape, alphas, outage::CurveKind::theorem1_quadrature, opts);
    const auto l1 = outage::evaluate_curve(shape, alphas, outage::CurveKind::lemma1_upper, opts);
    const auto l2 = outage::evaluate_curve(shape, alphas, outage::CurveKind::lemma2_lower, opts);

    std::optional<mc::EmpiricalCurve> emp;
    std::optional<mc::EmpiricalCdf> eve_above;
    std::optional<mc::EmpiricalCdf> user_above;
    if (!with_bounds_only) {
      const auto base = simulate(spec, shape, mc::Conditioning::none,
                                 block_seed(spec.seed, t, kStreamUnconditional));
      emp = mc::empirical_cdf_at(base, alphas, spec.delta);
      eve_above = simulate(spec, shape, mc::Conditioning::eve_above,
                           block_seed(spec.seed, t, kStreamEveAbove));
      user_above = simulate(spec, shape, mc::Conditioning::user_above,
                            block_seed(spec.seed, t, kStreamUserAbove));
      table.metadata.emplace_back(tagged("t", t, "dkw_epsilon"), format_real(emp->epsilon));
      add_sim_metadata(table, t, "eve_above", *eve_above);
      add_sim_metadata(table, t, "user_above", *user_above);
    } else if (simulate_runs) {
      const auto base = simulate(spec, shape, spec.conditioning,
                                 block_seed(spec.seed, t, kStreamUnconditional));
      emp = mc::empirical_cdf_at(base, alphas, spec.delta);
      table.metadata.emplace_back(tagged("t", t, "dkw_epsilon"), format_real(emp->epsilon));
      add_sim_metadata(table, t, "empirical", base);
    }

    for (std::size_t i = 0; i < alphas.size(); ++i) {
      const double a = alphas[i];
      std::vector<Cell> row{static_cast<double>(t), a};
      if (emp) {
        row.push_back(emp->curve.values[i]);
        row.push_back(emp->band_lower[i]);
        row.push_back(emp->band_upper[i]);
      }
      if (eve_above) row.push_back(eve_above->at(a));
      if (user_above) row.push_back(user_above->at(a));
      row.push_back(cell(series.values[i]));
      row.push_back(cell(quad.values[i]));
      row.push_back(cell(l1.values[i]));
      row.push_back(cell(l2.values[i]));
      if (with_bounds_only) {
        const auto cb = outage::corollary_bounds(shape, a);
        row.push_back(cb.bounds.upper);
        row.push_back(cb.bounds.lower);
      }
      row.push_back(flag(series.converged[i] && quad.converged[i]));
      table.rows.push_back(std::move(row));
    }
  }
  return table;
}

CurveTable run_fig2(const ExperimentSpec& spec) {
  const auto alphas = grid_of(spec);
  const auto shape = shape_of(spec, spec.antennas.front());
  const auto c = outage::model_constants(shape, threshold_for(spec));
  CurveTable table;
  table.experiment = "fig2";
  add_common_metadata(table, spec);
  table.metadata.emplace_back("eves", std::to_string(spec.eves));
  table.metadata.emplace_back("t", std::to_string(shape.antennas));
  table.columns = {{"alpha", ColumnType::real},
                   {"cor1_upper", ColumnType::probability},
                   {"lemma1_upper", ColumnType::probability},
                   {"lemma2_lower", ColumnType::probability},
                   {"cor2_lower", ColumnType::probability}};
  for (double a : alphas) {
    const auto cb = outage::corollary_bounds(shape, a);
    table.rows.push_back({a, cb.bounds.upper, outage::lemma1_upper_cdf(c, a).value,
                          outage::lemma2_lower_cdf(c, a).value, cb.bounds.lower});
  }
  return table;
}

CurveTable run_fig3(const ExperimentSpec& spec) {
  const int t = spec.antennas.front();
  const double critical = outage::critical_eves(spec.users, t, spec.alpha);
  std::int64_t nearest = spec.eves_min;
  for (std::int64_t m = spec.eves_min; m <= spec.eves_max; m += spec.eves_step) {
    if (std::abs(static_cast<double>(m) - critical) <
        std::abs(static_cast<double>(nearest) - critical)) {
      nearest = m;
    }
  }
  CurveTable table;
  table.experiment = "fig3";
  add_common_metadata(table, spec);
  table.metadata.emplace_back("t", std::to_string(t));
  table.metadata.emplace_back("alpha", format_real(spec.alpha));
  table.metadata.emplace_back("critical_M", format_real(critical));
  table.columns = {{"M", ColumnType::integer},
                   {"lambda", ColumnType::real},
                   {"cor1_upper", ColumnType::probability},
                   {"cor2_lower", ColumnType::probability},
                   {"lemma1_upper", ColumnType::probability},
                   {"lemma2_lower", ColumnType::probability},
                   {"critical_flag", ColumnType::flag}};
  for (std::int64_t m = spec.eves_min; m <= spec.eves_max; m += spec.eves_step) {
    outage::SystemShape shape = shape_of(spec, t);
    shape.eves = m;
    const auto cb = outage::corollary_bounds(shape, spec.alpha);
    const auto c = outage::model_constants(shape, threshold_for(spec));
    table.rows.push_back({static_cast<double>(m), cell(cb.lambda), cb.bounds.upper,
                          cb.bounds.lower, outage::lemma1_upper_cdf(c, spec.alpha).value,
                          outage::lemma2_lower_cdf(c, spec.alpha).value, flag(m == nearest)});
  }
  return table;
}

void usage_if(bool bad, const std::string& msg) {
  if (bad) throw UsageError(msg);
}

ordered_json cell_json(const Cell& c, ColumnType type) {
  if (!c) return nullptr;
  if (type == ColumnType::integer || type == ColumnType::flag) {
    return static_cast<std::int64_t>(std::llround(*c));
  }
  return *c;
}

std::string cell_text(const Cell& c, ColumnType type) {
  if (!c) return "";
  if (type == ColumnType::integer || type == ColumnType::flag) {
    return std::to_string(std::llround(*c));
  }
  return format_real(*c);
}

}  // namespace

Experiment parse_experiment(const std::string& name) {
  if (name == "fig1") return Experiment::fig1;
  if (name == "fig2") return Experiment::fig2;
  if (name == "fig3") return Experiment::fig3;
  if (name == "outage") return Experiment::outage;
  if (name == "scaling") return Experiment::scaling;
  if (name == "validate") return Experiment::validate;
  throw UsageError("unknown experiment '" + name + "'");
}

std::string to_string(Experiment e) {
  switch (e) {
    case Experiment::fig1: return "fig1";
    case Experiment::fig2: return "fig2";
    case Experiment::fig3: return "fig3";
    case Experiment::outage: return "outage";
    case Experiment::scaling: return "scaling";
    case Experiment::validate: return "validate";
  }
  return "unknown";
}

void ExperimentSpec::validate() const {
  usage_if(!(power > 0.0) || !std::isfinite(power), "--power must be finite and > 0");
  usage_if(antennas.empty(), "--t needs at least one value");
  for (int t : antennas) usage_if(t < 1, "--t values must be >= 1");
  usage_if(!(delta > 0.0 && delta < 1.0), "delta must lie in (0, 1)");
  usage_if(n_terms < 1, "--terms must be >= 1");
  switch (experiment) {
    case Experiment::fig1:
    case Experiment::fig2:
    case Experiment::outage:
      usage_if(!(alpha_grid.min >= 1.0), "alpha grid minimum must be >= 1");
      if (alpha_grid.steps == 1) {
        // A single point, as set by --alpha.
        usage_if(alpha_grid.max != alpha_grid.min, "a one-point alpha grid needs min == max");
      } else {
        usage_if(!(alpha_grid.max > alpha_grid.min) || !std::isfinite(alpha_grid.max),
                 "alpha grid maximum must exceed the minimum");
        usage_if(alpha_grid.steps < 2, "alpha grid needs at least 2 steps");
      }
      usage_if(users < 2 || eves < 2, "--users and --eves must be >= 2");
      break;
    case Experiment::fig3:
      usage_if(!(alpha >= 1.0) || !std::isfinite(alpha), "--alpha must be >= 1");
      usage_if(users < 3, "--users must be >= 3");
      usage_if(eves_min < 2 || eves_max < eves_min || eves_step < 1,
               "--eves range must be LO:HI or LO:HI:STEP with 2 <= LO <= HI");
      break;
    case Experiment::scaling:
      usage_if(!(alpha >= 1.0) || !std::isfinite(alpha), "--alpha must be >= 1");
      usage_if(eves < 1, "--eves must be >= 1");
      usage_if(!(target_lambda > 0.0) || !std::isfinite(target_lambda),
               "--target-lambda must be finite and > 0");
      break;
    case Experiment::validate:
      usage_if(suite != "all" && suite != "specfun" && suite != "evt" && suite != "outage" &&
                   suite != "montecarlo",
               "unknown suite '" + suite + "'");
      break;
  }
  if (experiment == Experiment::fig1) usage_if(trials < 1, "--trials must be >= 1");
  if (experiment == Experiment::validate || experiment == Experiment::outage) {
    usage_if(trials < 0, "--trials must be >= 0");
  }
}

std::size_t CurveTable::column_index(const std::string& name) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i].name == name) return i;
  }
  throw UsageError("no column named '" + name + "'");
}

std::string CurveTable::to_csv() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << columns[i].name;
  os << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      os << (i ? "," : "") << cell_text(row[i], columns[i].type);
    }
    os << '\n';
  }
  return os.str();
}

std::string CurveTable::to_json() const {
  ordered_json j;
  j["experiment"] = experiment;
  ordered_json meta = ordered_json::object();
  for (const auto& [k, v] : metadata) meta[k] = v;
  j["metadata"] = meta;
  ordered_json cols = ordered_json::array();
  for (const auto& c : columns) cols.push_back(c.name);
  j["columns"] = cols;
  ordered_json rs = ordered_json::array();
  for (const auto& row : rows) {
    ordered_json r = ordered_json::array();
    for (std::size_t i = 0; i < row.size(); ++i) r.push_back(cell_json(row[i], columns[i].type));
    rs.push_back(std::move(r));
  }
  j["rows"] = rs;
  return j.dump(1) + "\n";
}

std::string render(const CurveTable& table, Format format) {
  return format == Format::csv ? table.to_csv() : table.to_json();
}

CurveTable run_experiment(const ExperimentSpec& spec) {
  spec.validate();
  switch (spec.experiment) {
    case Experiment::fig1: return run_fig1(spec, false);
    case Experiment::outage: return run_fig1(spec, true);
    case Experiment::fig2: return run_fig2(spec);
    case Experiment::fig3: return run_fig3(spec);
    default: break;
  }
  throw UsageError(to_string(spec.experiment) + " does not produce a curve table");
}

std::string scaling_report(const ExperimentSpec& spec, Format format) {
  ExperimentSpec s = spec;
  s.experiment = Experiment::scaling;
  s.validate();
  const int t = s.antennas.front();
  const auto r = outage::scaling(static_cast<double>(s.eves), t, s.alpha, s.target_lambda);
  // Lambda scales as M^alpha, so the M reaching the target at required_K is
  // critical_M * target^{1/alpha}; it should reproduce the requested M.
  const double eves_roundtrip = r.critical_M * std::pow(r.target_lambda, 1.0 / r.alpha);
  const std::vector<std::pair<std::string, double>> fields{
      {"alpha", r.alpha},
      {"target_lambda", r.target_lambda},
      {"required_K", r.required_K},
      {"lambda", r.lambda},
      {"critical_M", r.critical_M},
      {"eves_roundtrip", eves_roundtrip},
      {"cor1_upper", r.cor1_upper},
      {"cor2_lower", r.cor2_lower},
  };
  if (format == Format::csv) {
    std::ostringstream os;
    os << "key,value\n";
    os << "eves," << s.eves << "\nantennas," << t << '\n';
    for (const auto& [k, v] : fields) os << k << ',' << format_real(v) << '\n';
    return os.str();
  }
  ordered_json j;
  j["experiment"] = "scaling";
  j["eves"] = s.eves;
  j["antennas"] = t;
  for (const auto& [k, v] : fields) j[k] = v;
  return j.dump(1) + "\n";
}

bool ValidationReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

std::string ValidationReport::to_json() const {
  ordered_json j;
  j["suite"] = suite;
  j["seed"] = seed;
  j["trials"] = trials;
  j["passed"] = passed();
  ordered_json cs = ordered_json::array();
  for (const auto& c : checks) {
    ordered_json e;
    e["name"] = c.name;
    e["measured"] = std::isfinite(c.measured) ? ordered_json(c.measured) : ordered_json(nullptr);
    e["min"] = c.min ? ordered_json(*c.min) : ordered_json(nullptr);
    e["max"] = c.max ? ordered_json(*c.max) : ordered_json(nullptr);
    e["passed"] = c.passed;
    if (!c.detail.empty()) e["detail"] = c.detail;
    cs.push_back(std::move(e));
  }
  j["checks"] = cs;
  return j.dump(1) + "\n";
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << text;
  out.flush();
  if (!out) throw IoError("failed writing '" + path + "'");
}

}  // namespace wiretap::exp
