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


#include "catlink/experiments.h"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <numbers>
#include <set>
#include <sstream>
#include <thread>

#include "catlink/errors.h"
#include "catlink/fock.h"
#include "catlink/loss_channel.h"
#include "catlink/phase_flip_code.h"
#include "catlink/protocols.h"

namespace catlink {
namespace {

const double kR = std::numbers::sqrt2 / 2.0;
constexpr std::size_t kMaxGridPoints = 100000;

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys{"seed",   "trials", "alpha", "mu", "nu",
                                          "encoding", "lambda", "length", "pe", "n",
                                          "fidelity-target", "out", "threads"};
  return keys;
}

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(std::string_view key, std::string_view text) {
  text = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v)) {
    throw ConfigError(std::string(key) + ": not a number: '" + std::string(text) + "'");
  }
  return v;
}

std::uint64_t parse_u64(std::string_view key, std::string_view text) {
  text = trim(text);
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ConfigError(std::string(key) + ": not a non-negative integer: '" + std::string(text) + "'");
  }
  return v;
}

Complex parse_complex(std::string_view key, std::string_view text) {
  const auto comma = text.find(',');
  if (comma == std::string_view::npos) return parse_double(key, text);
  return {parse_double(key, text.substr(0, comma)), parse_double(key, text.substr(comma + 1))};
}

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

// Computed quantities keep 16 digits; fmt is for grid values and parameters.
std::string fmt_value(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16g", x);
  return buf;
}

std::string fmt_complex(Complex z) { return fmt(z.real()) + "," + fmt(z.imag()); }

// Runs f(0..count-1) on up to `threads` workers; results keep index order.
template <typename T>
std::vector<T> parallel_map(std::size_t count, std::size_t threads, const std::function<T(std::size_t)>& f) {
  std::vector<T> out(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) out[i] = f(i);
  };
  const std::size_t n = std::min(threads, count);
  if (n <= 1) {
    worker();
    return out;
  }
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < n; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  return out;
}

QubitSpec spec_of(const RunConfig& c, double alpha, Encoding enc) {
  const double s = std::sqrt(std::norm(c.mu) + std::norm(c.nu));
  return {c.mu / s, c.nu / s, alpha, enc};
}

}  // namespace

// ---------------------------------------------------------------------------
// Sweeps and config

std::vector<double> SweepSpec::points() const {
  const auto count = static_cast<std::size_t>(std::floor((stop - start) / step * (1.0 + 1e-12) + 1e-9)) + 1;
  std::vector<double> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(start + static_cast<double>(i) * step);
  return out;
}

std::string SweepSpec::to_string() const {
  return single() ? fmt(start) : fmt(start) + ":" + fmt(stop) + ":" + fmt(step);
}

SweepSpec SweepSpec::parse(std::string_view text) {
  std::vector<std::string_view> parts;
  std::size_t pos = 0;
  while (true) {
    const auto colon = text.find(':', pos);
    parts.push_back(text.substr(pos, colon - pos));
    if (colon == std::string_view::npos) break;
    pos = colon + 1;
  }
  if (parts.size() == 1) {
    const double v = parse_double("sweep", parts[0]);
    return {v, v, 1.0};
  }
  if (parts.size() != 3) throw ConfigError("sweep must be start:stop:step, got '" + std::string(text) + "'");
  SweepSpec s{parse_double("sweep", parts[0]), parse_double("sweep", parts[1]), parse_double("sweep", parts[2])};
  if (!(s.step > 0.0)) throw ConfigError("sweep step must be positive");
  if (s.start > s.stop) throw ConfigError("sweep start must not exceed stop");
  if ((s.stop - s.start) / s.step > static_cast<double>(kMaxGridPoints)) throw ConfigError("sweep grid too large");
  return s;
}

std::string_view experiment_name(ExperimentId id) {
  switch (id) {
    case ExperimentId::TeleportSweep: return "teleport-sweep";
    case ExperimentId::HadamardSweep: return "hadamard-sweep";
    case ExperimentId::LossSweep: return "loss-sweep";
    case ExperimentId::Ecc: return "ecc";
    case ExperimentId::Validate: return "validate";
  }
  return "?";
}

ExperimentId parse_experiment(std::string_view name) {
  for (auto id : {ExperimentId::TeleportSweep, ExperimentId::HadamardSweep, ExperimentId::LossSweep,
                  ExperimentId::Ecc, ExperimentId::Validate}) {
    if (experiment_name(id) == name) return id;
  }
  throw ConfigError("unknown experiment '" + std::string(name) + "'");
}

ConfigValues parse_config_text(std::string_view text) {
  ConfigValues values;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string where = "line " + std::to_string(line_no) + ": ";
    if (eq == std::string_view::npos) throw ConfigError(where + "expected key = value");
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (!known_keys().count(key)) throw ConfigError(where + "unknown key '" + key + "'");
    if (value.empty()) throw ConfigError(where + "empty value for '" + key + "'");
    if (!values.emplace(key, value).second) throw ConfigError(where + "repeated key '" + key + "'");
  }
  return values;
}

ConfigValues load_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

RunConfig RunConfig::from_values(ExperimentId experiment, const ConfigValues& values) {
  RunConfig c;
  c.experiment = experiment;
  switch (experiment) {
    case ExperimentId::TeleportSweep:
      c.alpha = {0.2, 4.0, 0.1};
      c.mu = c.nu = kR;
      break;
    case ExperimentId::HadamardSweep:
      c.alpha = {0.2, 6.0, 0.1};
      c.mu = 0.0;
      c.nu = 1.0;
      c.encoding = Encoding::ZeroAlpha;
      break;
    case ExperimentId::LossSweep:
      c.alpha = {2.0, 2.0, 1.0};
      c.length = {0.0, 50.0, 1.0};
      c.mu = c.nu = kR;
      break;
    case ExperimentId::Ecc:
      c.alpha = {2.0, 2.0, 1.0};
      c.pe = {0.0, 0.5, 0.05};
      c.mu = 0.6;
      c.nu = Complex(0.0, 0.8);
      break;
    case ExperimentId::Validate:
      break;
  }
  for (const auto& [key, value] : values) {
    if (!known_keys().count(key)) throw ConfigError("unknown key '" + key + "'");
    if (key == "seed") c.seed = parse_u64(key, value);
    else if (key == "trials") c.trials = parse_u64(key, value);
    else if (key == "alpha") c.alpha = SweepSpec::parse(value);
    else if (key == "mu") c.mu = parse_complex(key, value);
    else if (key == "nu") c.nu = parse_complex(key, value);
    else if (key == "lambda") c.lambda = parse_double(key, value);
    else if (key == "length") c.length = SweepSpec::parse(value);
    else if (key == "pe") c.pe = SweepSpec::parse(value);
    else if (key == "n") c.n = parse_u64(key, value);
    else if (key == "fidelity-target") c.fidelity_target = parse_double(key, value);
    else if (key == "out") c.out = value;
    else if (key == "threads") c.threads = parse_u64(key, value);
    else if (key == "encoding") {
      try {
        c.encoding = parse_encoding(value);
      } catch (const ConfigError&) {
        throw;
      } catch (const std::exception& e) {
        throw ConfigError(e.what());
      }
    }
  }

  if (experiment == ExperimentId::Validate) return c;
  const auto alphas = c.alpha.points();
  const double alpha_cap = experiment == ExperimentId::HadamardSweep ? 12.0 : 20.0;
  for (double a : alphas) {
    if (!(a > 0.0 && a <= alpha_cap)) throw ConfigError("alpha must lie in (0, " + fmt(alpha_cap) + "]");
  }
  if ((experiment == ExperimentId::LossSweep || experiment == ExperimentId::Ecc) && !c.alpha.single()) {
    throw ConfigError(std::string(experiment_name(experiment)) + " takes a single alpha");
  }
  if (experiment == ExperimentId::HadamardSweep && c.encoding != Encoding::ZeroAlpha) {
    throw ConfigError("hadamard-sweep works in the zeroalpha encoding");
  }
  if (experiment == ExperimentId::Ecc && c.encoding != Encoding::PlusMinus) {
    throw ConfigError("ecc works in the pm encoding");
  }
  if (!(std::norm(c.mu) + std::norm(c.nu) > 0.0)) throw ConfigError("mu and nu must not both be zero");
  if (!(c.lambda >= 0.0)) throw ConfigError("lambda must be non-negative");
  if (!(c.length.start >= 0.0)) throw ConfigError("length must be non-negative");
  if (!(c.pe.start >= 0.0 && c.pe.stop <= 1.0)) throw ConfigError("pe must lie in [0, 1]");
  if (c.n < 1 || c.n > 4) throw ConfigError("n must lie in [1, 4]");
  if (c.trials < 1 || c.trials > 100000000) throw ConfigError("trials must lie in [1, 1e8]");
  if (!(c.fidelity_target >= 0.0 && c.fidelity_target <= 1.0)) {
    throw ConfigError("fidelity-target must lie in [0, 1]");
  }
  if (c.threads < 1 || c.threads > 256) throw ConfigError("threads must lie in [1, 256]");
  if (experiment == ExperimentId::Ecc && !c.seed) throw ConfigError("ecc is Monte Carlo and needs a seed");
  return c;
}

std::string RunConfig::canonical() const {
  std::map<std::string, std::string> kv{
      {"experiment", std::string(experiment_name(experiment))},
      {"alpha", alpha.to_string()},
      {"length", length.to_string()},
      {"pe", pe.to_string()},
      {"mu", fmt_complex(mu)},
      {"nu", fmt_complex(nu)},
      {"encoding", std::string(encoding_name(encoding))},
      {"lambda", fmt(lambda)},
      {"n", std::to_string(n)},
      {"seed", seed ? std::to_string(*seed) : "none"},
      {"trials", std::to_string(trials)},
      {"fidelity-target", fmt(fidelity_target)},
  };
  std::string s;
  for (const auto& [k, v] : kv) s += k + "=" + v + "\n";
  return s;
}

std::uint64_t RunConfig::hash() const { return fnv1a64(canonical()); }

std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : data) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t point, std::uint64_t trial) {
  return splitmix64(splitmix64(master ^ splitmix64(point)) + trial);
}

// ---------------------------------------------------------------------------
// Tables

std::string csv_preamble(const RunConfig& c) {
  char hash[24];
  std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(c.hash()));
  return std::string("# catlink ") + CATLINK_VERSION + "\n# experiment " +
         std::string(experiment_name(c.experiment)) + "\n# config_hash " + hash + "\n# seed " +
         (c.seed ? std::to_string(*c.seed) : "none") + "\n";
}

std::string render_csv(const RunConfig& c, const CsvTable& t) {
  std::string s = csv_preamble(c) + t.header + "\n";
  for (const auto& r : t.rows) s += r + "\n";
  return s;
}

CsvTable teleport_sweep(const RunConfig& c) {
  CsvTable t{"alpha,p_success_pm,p_success_zeroalpha,p_fail", {}};
  for (double a : c.alpha.points()) {
    const auto s = spec_of(c, a, Encoding::PlusMinus);
    const double pm = teleport_success_prob(a, s.mu, s.nu, Encoding::PlusMinus);
    const double za = teleport_success_prob(a, s.mu, s.nu, Encoding::ZeroAlpha);
    t.rows.push_back(fmt(a) + "," + fmt_value(pm) + "," + fmt_value(za) + "," + fmt_value(1.0 - pm));
  }
  return t;
}

CsvTable hadamard_sweep(const RunConfig& c) {
  CsvTable t{"alpha,avg_fidelity,postselect_success_at_target", {}};
  const auto alphas = c.alpha.points();
  t.rows = parallel_map<std::string>(alphas.size(), c.threads, [&](std::size_t i) {
    const double a = alphas[i];
    const auto rep = hadamard_postselect(a, spec_of(c, a, Encoding::ZeroAlpha), c.fidelity_target);
    return fmt(a) + "," + fmt_value(rep.average_fidelity) + "," + fmt_value(rep.accepted_probability);
  });
  return t;
}

CsvTable loss_sweep(const RunConfig& c) {
  CsvTable t{"lambdaL,eta,surviving_alpha,p_success,p_e", {}};
  const double alpha = c.alpha.start;
  const auto s = spec_of(c, alpha, Encoding::PlusMinus);
  for (double len : c.length.points()) {
    const double x = c.lambda * len;
    const double eta = std::exp(-x);
    const auto mix = channel_mixture(s, eta);
    const double b = mix.mixture.surviving_alpha;
    double p = mix.mixture.weight_no_error * restore_success_prob(b, alpha, s.mu, s.nu);
    if (mix.mixture.weight_z_error > 0.0) {
      p += mix.mixture.weight_z_error * restore_success_prob(b, alpha, s.mu, -s.nu);
    }
    t.rows.push_back(fmt(x) + "," + fmt_value(eta) + "," + fmt_value(b) + "," + fmt_value(p) + "," +
                     fmt_value(error_prob(alpha, eta)));
  }
  return t;
}

CsvTable ecc_table(const RunConfig& c) {
  if (!c.seed) throw ConfigError("ecc is Monte Carlo and needs a seed");
  CsvTable t{"pe,n,ps_analytic,ps_montecarlo,stderr,undetected_rate", {}};
  const auto pes = c.pe.points();
  const auto s = spec_of(c, c.alpha.start, Encoding::PlusMinus);
  CodeParams params;
  params.n = c.n;
  params.ideal_boost = true;
  params.restore = RestorePlacement::Off;
  t.rows = parallel_map<std::string>(pes.size(), c.threads, [&](std::size_t i) {
    const double pe = std::min(pes[i], 1.0);
    std::size_t ok = 0, undetected = 0;
    for (std::size_t k = 0; k < c.trials; ++k) {
      Rng rng(derive_seed(*c.seed, i, k));
      const auto r = end_to_end_injected(s, params, pe, rng);
      ok += r.success;
      undetected += r.undetected;
    }
    const double n = static_cast<double>(c.trials);
    const double p = static_cast<double>(ok) / n;
    return fmt(pe) + "," + std::to_string(c.n) + "," + fmt_value(general_code_success(c.n, pe)) + "," + fmt_value(p) +
           "," + fmt_value(std::sqrt(p * (1.0 - p) / n)) + "," + fmt_value(static_cast<double>(undetected) / n);
  });
  return t;
}

CsvTable run_experiment(const RunConfig& c) {
  switch (c.experiment) {
    case ExperimentId::TeleportSweep: return teleport_sweep(c);
    case ExperimentId::HadamardSweep: return hadamard_sweep(c);
    case ExperimentId::LossSweep: return loss_sweep(c);
    case ExperimentId::Ecc: return ecc_table(c);
    case ExperimentId::Validate: break;
  }
  throw ConfigError("validate produces a report, not a table");
}


}  // namespace catlink
