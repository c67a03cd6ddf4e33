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


#include "catlink/phase_flip_code.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>

#include "catlink/errors.h"
#include "measure.h"

namespace catlink {
namespace {

using detail::enumerator;
using detail::Measure;
using detail::sampler;

constexpr double kQuarterPi = std::numbers::pi / 4.0;

// Ports that should carry no light are checked against this, relative to the
// per-mode amplitude.
constexpr double kEmptyPort = 1e-9;

bool port_empty(const CoherentKet& s, std::size_t mode, double alpha) {
  return std::all_of(s.terms().begin(), s.terms().end(), [&](const CoherentTerm& t) {
    return std::abs(t.amps[mode]) <= kEmptyPort * (1.0 + alpha);
  });
}

struct DecodeBranch {
  double probability = 1.0;
  CoherentKet state;  // [unprocessed code modes..., candidate if weight > 0]
  std::size_t weight = 0;
  std::size_t next = 0;  // original index of the next unprocessed code mode
  std::size_t parity = 0;
  std::vector<std::size_t> members;  // code modes that fed the candidate
  SyndromeRecord syndrome;
};

// Counts a port expected to be empty and drops it.
std::vector<DecodeBranch> drain(DecodeBranch br, std::size_t mode, const Measure& measure) {
  std::vector<DecodeBranch> out;
  for (auto& b : measure(br.state, mode)) {
    DecodeBranch nb = br;
    nb.probability *= b.probability;
    nb.syndrome.stray_photons += b.n;
    nb.state = std::move(b.state);
    out.push_back(std::move(nb));
  }
  return out;
}

// One comparison of the next code mode (index 0) against the candidate.
std::vector<DecodeBranch> compare_step(DecodeBranch br, double alpha, const Measure& measure) {
  CoherentKet s = std::move(br.state);
  const std::size_t last = s.modes() - 1;
  const std::size_t c = br.weight;
  std::size_t unit = last;
  if (c >= 2) {
    s = beam_splitter(s.append_vacuum(), last, last + 1, std::asin(1.0 / std::sqrt(static_cast<double>(c))));
    unit = last + 1;
  }
  // Port 0 becomes the difference, port `unit` the sum.
  s = beam_splitter(s, 0, unit, kQuarterPi);
  const bool differs = !port_empty(s, 0, alpha);

  std::vector<DecodeBranch> out;
  for (auto& b : measure(s, 0)) {
    DecodeBranch nb;
    nb.probability = br.probability * b.probability;
    nb.state = std::move(b.state);
    nb.next = br.next + 1;
    nb.parity = br.parity + b.n;
    nb.syndrome = br.syndrome;
    nb.members = br.members;
    const bool missed = b.n == 0 && differs;
    nb.syndrome.comparisons.push_back({br.next, c, b.n, missed});
    nb.syndrome.anomaly |= missed;
    const std::size_t sum = unit - 1;
    if (b.n > 0) {
      if (c == 1) {
        nb.syndrome.suspects.insert(nb.syndrome.suspects.end(), nb.members.begin(), nb.members.end());
        nb.members.clear();
      }
      nb.syndrome.suspects.push_back(br.next);
      nb.weight = c - 1;
      for (auto& d : drain(std::move(nb), sum, measure)) out.push_back(std::move(d));
      continue;
    }
    nb.weight = c + 1;
    nb.members.push_back(br.next);
    if (c == 1) {
      out.push_back(std::move(nb));
      continue;
    }
    // Remainder sqrt(c-1) a at sum-1 and sum sqrt2 a at `sum` merge into `sum`.
    const double theta = std::atan(std::sqrt(static_cast<double>(c - 1) / 2.0));
    nb.state = beam_splitter(nb.state, sum - 1, sum, theta);
    for (auto& d : drain(std::move(nb), sum - 1, measure)) out.push_back(std::move(d));
  }
  return out;
}

std::vector<WeightedDecode> decode_flow(const CoherentKet& block, double alpha, const Measure& measure,
                                        double min_probability) {
  if (block.modes() < 3 || block.modes() % 2 == 0) {
    throw ContractViolation("code block needs an odd number of modes >= 3");
  }
  if (!(alpha > 0.0)) throw ContractViolation("decoder needs alpha > 0");
  std::vector<DecodeBranch> work{{1.0, block.normalized(), 0, 0, 0, {}, {}}};
  std::vector<WeightedDecode> done;
  while (!work.empty()) {
    DecodeBranch br = std::move(work.back());
    work.pop_back();
    const std::size_t pending = br.state.modes() - (br.weight > 0 ? 1 : 0);
    if (pending == 0) {
      DecodeResult r;
      r.syndrome = std::move(br.syndrome);
      r.syndrome.output_weight = br.weight;
      r.syndrome.z_correction = br.parity % 2 == 1;
      r.output_alpha = std::sqrt(static_cast<double>(br.weight)) * alpha;
      r.state = std::move(br.state);
      if (!in_logical_span(r.state, Encoding::PlusMinus, r.output_alpha, 0)) {
        r.syndrome.anomaly = true;
      } else if (r.syndrome.z_correction) {
        r.state = logical_Z_physical(r.state, Encoding::PlusMinus, r.output_alpha, 0);
      }
      done.push_back({br.probability, std::move(r)});
      continue;
    }
    if (br.weight == 0) {
      br.state = br.state.moved(0, br.state.modes() - 1);
      br.weight = 1;
      br.members = {br.next};
      ++br.next;
      work.push_back(std::move(br));
      continue;
    }
    for (auto& nb : compare_step(std::move(br), alpha, measure)) {
      if (nb.probability >= min_probability) work.push_back(std::move(nb));
    }
  }
  return done;
}

// Sign of the code amplitude on `mode`: -1 for -a, +1 for +a.
int code_sign(Complex amp, double alpha) {
  const double tol = kEmptyPort * (1.0 + alpha);
  if (std::abs(amp + alpha) <= tol) return -1;
  if (std::abs(amp - alpha) <= tol) return 1;
  throw UnsupportedStateError("mode amplitude is not +-alpha");
}

CoherentKet ideal_h_on_mode(const CoherentKet& s, std::size_t mode, double alpha) {
  const double r = std::numbers::sqrt2 / 2.0;
  std::vector<CoherentTerm> terms;
  terms.reserve(2 * s.terms().size());
  for (const auto& t : s.terms()) {
    const int sign = code_sign(t.amps[mode], alpha);
    CoherentTerm minus{t.coeff * r, t.amps};
    CoherentTerm plus{t.coeff * (sign < 0 ? r : -r), t.amps};
    minus.amps[mode] = -alpha;
    plus.amps[mode] = alpha;
    terms.push_back(std::move(minus));
    terms.push_back(std::move(plus));
  }
  return CoherentKet(s.modes(), std::move(terms));
}

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

}  // namespace

std::string_view hadamard_model_name(HadamardModel m) {
  return m == HadamardModel::Ideal ? "ideal" : "physical";
}

std::string_view restore_placement_name(RestorePlacement r) {
  switch (r) {
    case RestorePlacement::Off: return "off";
    case RestorePlacement::AfterDecode: return "after";
    case RestorePlacement::BeforeDecode: return "before";
  }
  return "?";
}

void CodeParams::validate() const {
  if (n == 0) throw ContractViolation("code needs n >= 1");
  if (!(success_fidelity >= 0.0 && success_fidelity <= 1.0)) {
    throw ContractViolation("success fidelity must lie in [0, 1]");
  }
}

double code_success_prob(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw ContractViolation("error probability must lie in [0, 1]");
  return 1.0 - 3.0 * p * p + 2.0 * p * p * p;
}

double general_code_success(std::size_t n, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw ContractViolation("error probability must lie in [0, 1]");
  const std::size_t m = 2 * n + 1;
  if (p == 0.0) return 1.0;
  if (p == 1.0) return 0.0;
  // Terms in log space so large blocks do not underflow term by term.
  const double lp = std::log(p), lq = std::log1p(-p);
  double sum = 0.0;
  for (std::size_t j = 0; j <= n; ++j) {
    const double lc = std::lgamma(m + 1.0) - std::lgamma(j + 1.0) - std::lgamma(m - j + 1.0);
    sum += std::exp(lc + j * lp + (m - j) * lq);
  }
  return std::min(sum, 1.0);
}

ProtocolResult boost_amplitude(const CoherentKet& qubit, double alpha, std::size_t block_size, Rng& rng) {
  return restore_amplitude(qubit, alpha, std::sqrt(static_cast<double>(block_size)) * alpha, rng);
}

double encoder_transmissivity(std::size_t block_size, std::size_t k) {
  if (k + 1 >= block_size) throw ContractViolation("encoder splitter index out of range");
  return 1.0 / static_cast<double>(block_size - k);
}

CoherentKet encode(const CoherentKet& qubit, std::size_t block_size) {
  if (qubit.modes() != 1) throw ContractViolation("encoder takes a one-mode qubit");
  if (block_size < 3 || block_size % 2 == 0) throw ContractViolation("block size must be odd and >= 3");
  CoherentKet s = qubit.append_vacuum(block_size - 1);
  for (std::size_t k = 0; k + 1 < block_size; ++k) {
    s = beam_splitter(s, k, k + 1, std::acos(std::sqrt(encoder_transmissivity(block_size, k))));
  }
  return s;
}

CoherentKet apply_logical_H_ideal(const CoherentKet& state, double alpha) {
  CoherentKet s = state;
  for (std::size_t k = 0; k < s.modes(); ++k) s = ideal_h_on_mode(s, k, alpha);
  return s.normalized();
}

BlockHResult apply_logical_H_blockwise(const CoherentKet& state, double alpha, HadamardModel model, Rng& rng) {
  if (model == HadamardModel::Ideal) return {apply_logical_H_ideal(state, alpha), {}};
  BlockHResult out{state, {}};
  for (std::size_t k = 0; k < state.modes(); ++k) {
    auto r = hadamard_on_mode(displace(out.state, k, alpha), k, alpha, rng);
    out.records.push_back(r.record);
    out.state = displace(*r.state, k, -alpha);
  }
  return out;
}

std::optional<std::size_t> SyndromeRecord::inferred_error_mode() const {
  if (suspects.size() == 1) return suspects.front();
  return std::nullopt;
}

std::string SyndromeRecord::token() const {
  if (comparisons.empty()) return "-";
  std::string s;
  for (const auto& c : comparisons) {
    if (!s.empty()) s += ';';
    s += std::to_string(c.count);
  }
  return s;
}

DecodeResult decode_and_correct(const CoherentKet& block, double alpha, Rng& rng) {
  return std::move(decode_flow(block, alpha, sampler(rng), 0.0).front().result);
}

std::vector<WeightedDecode> decode_outcomes(const CoherentKet& block, double alpha, double min_probability) {
  return decode_flow(block, alpha, enumerator(), min_probability);
}

std::size_t CodeTrialResult::channel_errors() const {
  return static_cast<std::size_t>(std::count(channel_z.begin(), channel_z.end(), true));
}

std::string CodeTrialResult::csv_row(std::size_t trial, double pe, double eta, double alpha,
                                     std::size_t n) const {
  return std::to_string(trial) + "," + format_double(pe) + "," + format_double(eta) + "," +
         format_double(alpha) + "," + std::to_string(n) + "," + syndrome.token() + "," +
         (success ? "1" : "0") + "," + format_double(fidelity);
}

namespace {

// Applies the channel to every code mode in place, fills channel_z and the
// trail, and returns the per-mode amplitude afterwards.
using ChannelStage = std::function<double(CoherentKet&, CodeTrialResult&)>;

CodeTrialResult run_trial(const QubitSpec& spec, const CodeParams& params, Rng& rng,
                          const ChannelStage& channel_stage) {
  params.validate();
  if (spec.encoding != Encoding::PlusMinus) throw ContractViolation("the code takes a PM qubit");
  const double alpha = spec.alpha;
  const std::size_t m = params.block_size();
  CodeTrialResult out;

  CoherentKet input;
  if (params.ideal_boost) {
    QubitSpec big = spec;
    big.alpha = std::sqrt(static_cast<double>(m)) * alpha;
    input = make_qubit(big);
  } else {
    auto boosted = boost_amplitude(make_qubit(spec), alpha, m, rng);
    out.trail.push_back(boosted.record);
    if (!boosted.record.success()) return out;
    input = std::move(*boosted.state);
  }

  auto layer = apply_logical_H_blockwise(encode(input, m), alpha, params.hadamard_model, rng);
  out.trail.insert(out.trail.end(), layer.records.begin(), layer.records.end());
  CoherentKet s = std::move(layer.state);
  double a = channel_stage(s, out);

  if (params.restore == RestorePlacement::BeforeDecode && std::abs(a - alpha) > 1e-12 * alpha) {
    for (std::size_t k = 0; k < m; ++k) {
      auto r = teleport_on_mode(s, k, BellSpec::amplitude_matched(a, alpha), Encoding::PlusMinus, rng);
      out.trail.push_back(r.record);
      if (!r.record.success()) return out;
      s = std::move(*r.state);
    }
    a = alpha;
  }

  layer = apply_logical_H_blockwise(s, a, params.hadamard_model, rng);
  out.trail.insert(out.trail.end(), layer.records.begin(), layer.records.end());
  auto decoded = decode_and_correct(layer.state, a, rng);
  OutcomeRecord syndrome;
  for (const auto& c : decoded.syndrome.comparisons) {
    syndrome.counts.push_back({"cmp" + std::to_string(c.mode), c.count});
  }
  if (decoded.syndrome.z_correction) syndrome.corrections.push_back({CorrectionKind::Z});
  out.trail.push_back(syndrome);
  out.syndrome = decoded.syndrome;
  out.undetected = std::any_of(decoded.syndrome.comparisons.begin(), decoded.syndrome.comparisons.end(),
                               [](const Comparison& c) { return c.missed; });

  CoherentKet q = std::move(decoded.state);
  double q_alpha = decoded.output_alpha;
  if (params.restore != RestorePlacement::Off && std::abs(q_alpha - alpha) > 1e-12 * alpha) {
    auto r = restore_amplitude(q, q_alpha, alpha, rng);
    out.trail.push_back(r.record);
    if (!r.record.success()) return out;
    q = std::move(*r.state);
    q_alpha = alpha;
  }

  QubitSpec target = spec;
  target.alpha = q_alpha;
  out.output_alpha = q_alpha;
  out.fidelity = qubit_fidelity(q, target);
  out.success = out.fidelity >= params.success_fidelity;
  out.state = std::move(q);
  return out;
}

}  // namespace

CodeTrialResult end_to_end(const QubitSpec& spec, const CodeParams& params, const ChannelParams& channel,
                           Rng& rng) {
  return run_trial(spec, params, rng, [&](CoherentKet& s, CodeTrialResult& out) {
    OutcomeRecord loss;
    for (std::size_t k = 0; k < s.modes(); ++k) {
      const auto t = transmit(s, k, channel);
      auto env = measure_photon_count(t.state, t.environment_mode, rng);
      loss.counts.push_back({"env" + std::to_string(k), env.count});
      out.channel_z.push_back(env.count % 2 == 1);
      s = std::move(env.state);
    }
    out.trail.push_back(loss);
    return spec.alpha * std::sqrt(channel.eta);
  });
}

CodeTrialResult end_to_end_injected(const QubitSpec& spec, const CodeParams& params, double p_error,
                                    Rng& rng) {
  if (!(p_error >= 0.0 && p_error <= 1.0)) throw ContractViolation("error probability must lie in [0, 1]");
  return run_trial(spec, params, rng, [&](CoherentKet& s, CodeTrialResult& out) {
    std::bernoulli_distribution flip(p_error);
    OutcomeRecord inject;
    for (std::size_t k = 0; k < s.modes(); ++k) {
      const bool z = flip(rng);
      out.channel_z.push_back(z);
      if (z) {
        s = logical_Z_physical(s, Encoding::PlusMinus, spec.alpha, k);
        inject.corrections.push_back({CorrectionKind::Z});
      }
    }
    out.trail.push_back(inject);
    return spec.alpha;
  });
}

}  // namespace catlink
