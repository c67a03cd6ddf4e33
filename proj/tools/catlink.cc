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


// catlink: CSV sweeps and the self-check report.
//
// Exit status: 0 success, 1 a validation check failed, 2 bad configuration.

#include <exception>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "catlink/experiments.h"

namespace {

constexpr int kOk = 0;
constexpr int kValidationFailed = 1;
constexpr int kBadConfig = 2;

struct Flag {
  const char* key;
  const char* help;
};

// Long flag names double as config-file keys.
const std::vector<Flag> kFlags = {
    {"seed", "master seed (u64), required by ecc"},
    {"trials", "Monte Carlo trials per grid point"},
    {"alpha", "amplitude, start:stop:step or a single value"},
    {"mu", "coefficient of |0>_L as re,im"},
    {"nu", "coefficient of |1>_L as re,im"},
    {"encoding", "pm|zeroalpha"},
    {"lambda", "loss per km"},
    {"length", "fiber length in km, start:stop:step"},
    {"pe", "phase-flip probability, start:stop:step"},
    {"n", "code index, block size 2n+1"},
    {"fidelity-target", "post-selection fidelity threshold in (0,1]"},
    {"threads", "worker threads; output does not depend on it"},
};

struct Subcommand {
  catlink::ExperimentId id;
  CLI::App* app = nullptr;
  std::string config_path;
  std::string out;
  catlink::ConfigValues flags;
};

int write_output(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return kOk;
  }
  std::ofstream f(path, std::ios::binary);
  if (!(f << text)) {
    std::cerr << "catlink: cannot write " << path << "\n";
    return kBadConfig;
  }
  return kOk;
}

int run(const Subcommand& s) {
  if (s.id == catlink::ExperimentId::Validate) {
    const auto checks = catlink::run_validation();
    const int rc = write_output(s.out, catlink::validation_report(checks));
    if (rc != kOk) return rc;
    for (const auto& c : checks) {
      if (!c.pass()) return kValidationFailed;
    }
    return kOk;
  }
  catlink::ConfigValues values;
  if (!s.config_path.empty()) values = catlink::load_config_file(s.config_path);
  for (const auto& [k, v] : s.flags) values[k] = v;
  if (!s.out.empty()) values["out"] = s.out;
  const auto config = catlink::RunConfig::from_values(s.id, values);
  return write_output(config.out, catlink::render_csv(config, catlink::run_experiment(config)));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cat-state qubit teleportation and phase-flip code sweeps"};
  app.set_version_flag("--version", std::string("catlink ") + CATLINK_VERSION);
  app.require_subcommand(1);

  std::vector<Subcommand> subs;
  subs.reserve(5);
  const std::vector<std::pair<catlink::ExperimentId, const char*>> defs = {
      {catlink::ExperimentId::TeleportSweep, "teleport success probability vs alpha"},
      {catlink::ExperimentId::HadamardSweep, "Hadamard fidelity and post-selected success vs alpha"},
      {catlink::ExperimentId::LossSweep, "restored teleportation success vs fiber loss"},
      {catlink::ExperimentId::Ecc, "phase-flip code success: analytic vs Monte Carlo"},
      {catlink::ExperimentId::Validate, "run the oracle-equivalence and invariant checks"},
  };
  for (const auto& [id, help] : defs) {
    Subcommand& s = subs.emplace_back();
    s.id = id;
    s.app = app.add_subcommand(std::string(catlink::experiment_name(id)), help);
    s.app->add_option("--out", s.out, "output path (default: standard output)");
    if (id == catlink::ExperimentId::Validate) continue;
    s.app->add_option("--config", s.config_path, "key = value file; flags override it")->check(CLI::ExistingFile);
    for (const auto& f : kFlags) {
      s.app->add_option_function<std::string>(
          std::string("--") + f.key, [&s, key = f.key](const std::string& v) { s.flags[key] = v; }, f.help);
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kBadConfig;
  }

  try {
    for (const auto& s : subs) {
      if (s.app->parsed()) return run(s);
    }
  } catch (const std::invalid_argument& e) {  // ConfigError and degenerate qubit inputs
    std::cerr << "catlink: " << e.what() << "\n";
    return kBadConfig;
  }
  return kBadConfig;
}
