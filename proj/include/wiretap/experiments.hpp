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
#ifndef WIRETAP_EXPERIMENTS_HPP
#define WIRETAP_EXPERIMENTS_HPP

// Experiment runner behind the command-line tool: figure reproductions as
// data tables, the scaling report, and the validation suites.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wiretap/montecarlo.hpp"
#include "wiretap/outage.hpp"

namespace wiretap::exp {

enum class Experiment { fig1, fig2, fig3, outage, scaling, validate };
enum class Format { csv, json };

Experiment parse_experiment(const std::string& name);
std::string to_string(Experiment e);

struct AlphaGrid {
  double min = 1.0;
  double max = 4.0;
  int steps = 200;  // 1 with min == max evaluates a single point
};

struct ExperimentSpec {
  Experiment experiment = Experiment::outage;
  std::int64_t users = 30;
  std::int64_t eves = 30;
  std::vector<int> antennas{4};
  double power = 1.0;
  AlphaGrid alpha_grid;
  double alpha = 2.0;  // single threshold for fig3 and scaling
  std::int64_t trials = 100000;
  std::uint64_t seed = 42;
  int n_terms = 100;
  mc::Conditioning conditioning = mc::Conditioning::none;
  mc::ConditioningImpl conditioning_impl = mc::ConditioningImpl::rejection;
  // Unset: exact for fig1/outage, asymptotic (b_K) for fig2/fig3, which sit
  // next to the corollaries built from the same constants.
  std::optional<outage::UserThreshold> user_threshold;
  std::int64_t eves_min = 10;
  std::int64_t eves_max = 1000;
  std::int64_t eves_step = 1;
  double target_lambda = 1.0;
  std::string suite = "all";
  double delta = 0.01;  // DKW confidence level
  unsigned threads = 0;

  /// Throws UsageError on an inconsistent spec.
  void validate() const;
};

enum class ColumnType { real, probability, integer, flag };

struct Column {
  std::string name;
  ColumnType type = ColumnType::real;
};

/// Rows of optional cells; an empty cell marks a value that could not be
/// computed (e.g. a series point that hit cancellation).
struct CurveTable {
  std::string experiment;
  std::vector<Column> columns;
  std::vector<std::vector<std::optional<double>>> rows;
  std::vector<std::pair<std::string, std::string>> metadata;

  std::size_t column_index(const std::string& name) const;
  std::string to_csv() const;
  std::string to_json() const;
};

std::string render(const CurveTable& table, Format format);

/// fig1, fig2, fig3 and outage tables.
CurveTable run_experiment(const ExperimentSpec& spec);

std::string scaling_report(const ExperimentSpec& spec, Format format);

struct Check {
  std::string name;
  double measured = 0.0;
  std::optional<double> min;
  std::optional<double> max;
  bool passed = false;
  std::string detail;
};

struct ValidationReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::int64_t trials = 0;
  std::vector<Check> checks;

  bool passed() const;
  std::string to_json() const;
};

/// suite: specfun, evt, outage, montecarlo or all.
ValidationReport validate(const std::string& suite, std::uint64_t seed, std::int64_t trials,
                          unsigned threads = 0);

/// Writes text to path, throwing IoError on failure.
void write_file(const std::string& path, const std::string& text);

}  // namespace wiretap::exp

#endif  // WIRETAP_EXPERIMENTS_HPP
