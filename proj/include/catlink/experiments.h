// Copyright 2026 The catlink Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#ifndef CATLINK_EXPERIMENTS_H
#define CATLINK_EXPERIMENTS_H

// Sweeps behind the command-line driver: configuration, seeding, CSV tables
// and the self-check report. Everything here is deterministic given a
// RunConfig, including the Monte Carlo columns.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "catlink/coherent.h"
#include "catlink/encodings.h"

namespace catlink {

/// Inclusive grid start, start + step, ..., stop.
struct SweepSpec {
  double start = 0.0;
  double stop = 0.0;
  double step = 1.0;

  bool single() const { return start == stop; }
  std::vector<double> points() const;
  std::string to_string() const;
  /// `start:stop:step` or a single value.
  static SweepSpec parse(std::string_view text);
};

enum class ExperimentId { TeleportSweep, HadamardSweep, LossSweep, Ecc, Validate };

std::string_view experiment_name(ExperimentId id);
ExperimentId parse_experiment(std::string_view name);

/// Raw `key = value` pairs; keys use the long flag names without dashes.
using ConfigValues = std::map<std::string, std::string>;

/// Parses `key = value` lines; `#` starts a comment. Unknown or repeated
/// keys and malformed lines throw ConfigError naming the line.
ConfigValues parse_config_text(std::string_view text);
ConfigValues load_config_file(const std::string& path);

struct RunConfig {
  ExperimentId experiment = ExperimentId::TeleportSweep;
  SweepSpec alpha;
  SweepSpec length;  // km
  SweepSpec pe;
  Complex mu = 0.0;  // normalized together with nu
  Complex nu = 0.0;
  Encoding encoding = Encoding::PlusMinus;
  double lambda = 0.06;  // per km
  std::size_t n = 1;
  std::optional<std::uint64_t> seed;
  std::size_t trials = 1000;
  double fidelity_target = 0.99;
  std::string out;          // empty: standard output
  std::size_t threads = 1;  // does not affect the output

  /// Per-experiment defaults overridden by `values`, then range checks.
  static RunConfig from_values(ExperimentId experiment, const ConfigValues& values);
  /// Sorted `key=value` lines of every parameter that shapes the output.
  std::string canonical() const;
  std::uint64_t hash() const;
};

std::uint64_t fnv1a64(std::string_view data);

/// One splitmix64 output for `x`.
std::uint64_t splitmix64(std::uint64_t x);

/// Seed of trial `trial` at grid point `point`. Streams are functions of the
/// counters alone, so adding trials or points leaves earlier draws unchanged:
///   splitmix64(splitmix64(master ^ splitmix64(point)) + trial)
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t point, std::uint64_t trial);

struct CsvTable {
  std::string header;
  std::vector<std::string> rows;
};

/// `# catlink <version>`, experiment, config hash and seed, one comment line each.
std::string csv_preamble(const RunConfig& config);
std::string render_csv(const RunConfig& config, const CsvTable& table);

/// alpha,p_success_pm,p_success_zeroalpha,p_fail
CsvTable teleport_sweep(const RunConfig& config);
/// alpha,avg_fidelity,postselect_success_at_target
CsvTable hadamard_sweep(const RunConfig& config);
/// lambdaL,eta,surviving_alpha,p_success,p_e
/// p_success is the restoring teleportation's success averaged over the
/// no-error and Z branches of the transmitted qubit.
CsvTable loss_sweep(const RunConfig& config);
/// pe,n,ps_analytic,ps_montecarlo,stderr,undetected_rate
CsvTable ecc_table(const RunConfig& config);

CsvTable run_experiment(const RunConfig& config);

struct ValidationCheck {
  std::string module;
  std::string name;
  double deviation = 0.0;
  double tolerance = 0.0;
  bool pass() const { return deviation <= tolerance; }
};

/// Oracle-equivalence and invariant checks across all modules.
std::vector<ValidationCheck> run_validation();
std::string validation_report(const std::vector<ValidationCheck>& checks);

}  // namespace catlink

#endif  // CATLINK_EXPERIMENTS_H
