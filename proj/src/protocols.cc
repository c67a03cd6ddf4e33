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

#include "catlink/protocols.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>

#include "catlink/errors.h"
#include "measure.h"

namespace catlink {
namespace {

using detail::CountBranch;
using detail::enumerator;
using detail::Measure;
using detail::sampler;

constexpr double kQuarterPi = std::numbers::pi / 4.0;
constexpr double kAmplitudeMatch = 1e-12;

struct FlowBranch {
  double probability = 1.0;
  OutcomeRecord record;
  std::optional<CoherentKet> state;
  bool z_parity = false;  // uncorrected Z when corrections skip Z
};

ProtocolResult to_result(FlowBranch b) { return {std::move(b.record), std::move(b.state)}; }

std::vector<WeightedOutcome> to_weighted(std::vector<FlowBranch> branches) {
  std::vector<WeightedOutcome> out;
  out.reserve(branches.size());
  for (auto& b : branches) out.push_back({b.probability, std::move(b.record), std::move(b.state)});
  return out;
}

CoherentKet apply_pauli(const CoherentKet& s, std::size_t mode, CorrectionKind kind, Encoding enc,
                        double alpha) {
  return kind == CorrectionKind::X ? logical_X(s, enc, alpha, mode)
                                   : logical_Z_physical(s, enc, alpha, mode);
}

// Moves `mode` behind all other modes, then appends `extra`.
CoherentKet canonical_order(const CoherentKet& state, std::size_t mode, const CoherentKet& extra) {
  std::vector<std::size_t> order;
  for (std::size_t m = 0; m < state.modes(); ++m) {
    if (m != mode) order.push_back(m);
  }
  order.push_back(mode);
  return state.permuted(order).tensor(extra);
}

// ---------------------------------------------------------------------------
// Teleportation core on modes [spectators (K), q, b, o]; output lands at K.

struct TeleportOptions {
  Encoding encoding = Encoding::PlusMinus;
  double out_alpha = 1.0;
  bool swap_xz = false;   // corrections conjugated by H
  bool apply_z = true;
  bool amplitude_mismatch = false;
};

std::vector<FlowBranch> teleport_core(const CoherentKet& s0, const TeleportOptions& opt,
                                      const Measure& measure) {
  const std::size_t k = s0.modes() - 3;
  const CoherentKet s = beam_splitter(s0, k + 1, k, kQuarterPi);
  const CorrectionKind x_kind = opt.swap_xz ? CorrectionKind::Z : CorrectionKind::X;
  const CorrectionKind z_kind = opt.swap_xz ? CorrectionKind::X : CorrectionKind::Z;

  auto finish = [&](FlowBranch br, const CoherentKet& out, std::size_t n1, std::size_t n2,
                    bool apply_x, std::size_t z_count) {
    br.record.counts.push_back({"n1", n1});
    br.record.counts.push_back({"n2", n2});
    br.record.amplitude_mismatch = opt.amplitude_mismatch;
    if (n1 == 0 && n2 == 0) {
      br.record.status = OutcomeStatus::Failure;
      br.record.reason = FailureReason::BothZero;
      return br;
    }
    CoherentKet st = out;
    if (apply_x) {
      st = apply_pauli(st, k, x_kind, opt.encoding, opt.out_alpha);
      br.record.corrections.push_back({x_kind});
    }
    br.z_parity = z_count % 2 == 1;
    if (br.z_parity && opt.apply_z) {
      st = apply_pauli(st, k, z_kind, opt.encoding, opt.out_alpha);
      br.record.corrections.push_back({z_kind});
    }
    br.state = std::move(st);
    return br;
  };

  std::vector<FlowBranch> out;
  if (opt.encoding == Encoding::PlusMinus) {
    for (auto& b1 : measure(s, k)) {
      for (auto& b2 : measure(b1.state, k)) {
        FlowBranch br;
        br.probability = b1.probability * b2.probability;
        const bool x = b1.n == 0 && b2.n > 0;
        out.push_back(finish(std::move(br), b2.state, b1.n, b2.n, x, b1.n > 0 ? b1.n : b2.n));
      }
    }
    return out;
  }
  const Complex shift = -std::numbers::sqrt2 * opt.out_alpha;
  for (auto& b2 : measure(s, k + 1)) {
    const CoherentKet rest = b2.n > 0 ? b2.state : displace(b2.state, k, shift);
    for (auto& b1 : measure(rest, k)) {
      FlowBranch br;
      br.probability = b2.probability * b1.probability;
      if (b2.n == 0) br.record.corrections.push_back({CorrectionKind::Displace, shift});
      const std::size_t z = b2.n > 0 ? b2.n : b1.n;
      out.push_back(finish(std::move(br), b1.state, b1.n, b2.n, b2.n > 0, z));
    }
  }
  return out;
}

void check_bell_encoding(const BellSpec& bell, Encoding enc) {
  const bool za = bell.kind == BellSpec::Kind::ZeroAlpha;
  if (za != (enc == Encoding::ZeroAlpha)) {
    throw ContractViolation("ZeroAlpha teleportation needs the ZeroAlpha Bell resource and vice versa");
  }
}

std::vector<FlowBranch> teleport_flow(const CoherentKet& state, std::size_t mode, const BellSpec& bell,
                                      Encoding enc, const Measure& measure, bool apply_z) {
  if (mode >= state.modes()) throw ContractViolation("mode index out of range");
  check_bell_encoding(bell, enc);
  TeleportOptions opt;
  opt.encoding = enc;
  opt.out_alpha = bell.alpha;
  opt.apply_z = apply_z;
  opt.amplitude_mismatch = !in_logical_span(state, enc, bell.beta, mode);
  const CoherentKet s = canonical_order(state, mode, make_bell(bell));
  auto branches = teleport_core(s, opt, measure);
  const std::size_t k = state.modes() - 1;
  for (auto& b : branches) {
    if (b.state) b.state = b.state->moved(k, mode);
  }
  return branches;
}

// ---------------------------------------------------------------------------
// Hadamard core on modes [spectators (K), target, b, c]; output lands at K.

struct GadgetBranch {
  double probability = 1.0;
  std::size_t n_a = 0;
  std::size_t n_b = 0;
  CoherentKet state;  // uncorrected
};

std::vector<GadgetBranch> gadget_core(const CoherentKet& s0, double alpha, const Measure& measure) {
  const std::size_t k = s0.modes() - 3;
  CoherentKet s = ibeam_splitter(s0, k, k + 1, hadamard_theta(alpha));
  s = displace(displace(s, k, -alpha), k + 1, -alpha);
  std::vector<GadgetBranch> out;
  for (auto& ba : measure(s, k)) {
    for (auto& bb : measure(ba.state, k)) {
      out.push_back({ba.probability * bb.probability, ba.n, bb.n, std::move(bb.state)});
    }
  }
  return out;
}

CoherentKet apply_table(const CoherentKet& s, std::size_t mode, const PauliCorrection& c, double alpha,
                        OutcomeRecord* record) {
  CoherentKet out = s;
  if (c.z) {
    out = logical_Z_physical(out, Encoding::ZeroAlpha, alpha, mode);
    if (record) record->corrections.push_back({CorrectionKind::Z});
  }
  if (c.x) {
    out = logical_X(out, Encoding::ZeroAlpha, alpha, mode);
    if (record) record->corrections.push_back({CorrectionKind::X});
  }
  return out;
}

std::vector<FlowBranch> hadamard_flow(const CoherentKet& state, std::size_t mode, double alpha,
                                      const HadamardTable& table, const Measure& measure) {
  if (mode >= state.modes()) throw ContractViolation("mode index out of range");
  if (!(alpha > 0.0)) throw ContractViolation("Hadamard gadget needs alpha > 0");
  const CoherentKet s = canonical_order(state, mode, make_bell(BellSpec::zero_alpha(alpha)));
  const std::size_t k = state.modes() - 1;
  std::vector<FlowBranch> out;
  for (auto& g : gadget_core(s, alpha, measure)) {
    FlowBranch br;
    br.probability = g.probability;
    br.record.counts = {{"n_a", g.n_a}, {"n_b", g.n_b}};
    br.record.amplitude_mismatch = !in_logical_span(state, Encoding::ZeroAlpha, alpha, mode);
    br.state = apply_table(g.state, k, table.at(g.n_a, g.n_b), alpha, &br.record).moved(k, mode);
    out.push_back(std::move(br));
  }
  return out;
}

// Probability that every listed mode counts zero, from overlaps alone.
double vacuum_probability(const CoherentKet& s, std::span<const std::size_t> modes) {
  std::vector<CoherentTerm> terms;
  for (const auto& t : s.terms()) {
    Complex c = t.coeff;
    Amplitudes rest;
    for (std::size_t m = 0; m < t.amps.size(); ++m) {
      if (std::find(modes.begin(), modes.end(), m) != modes.end()) {
        c *= std::exp(-0.5 * std::norm(t.amps[m]));
      } else {
        rest.push_back(t.amps[m]);
      }
    }
    terms.push_back({c, std::move(rest)});
  }
  const CoherentKet r(s.modes() - modes.size(), std::move(terms));
  return r.empty() ? 0.0 : r.norm_squared();
}

double failure_prob_of(const CoherentKet& qubit, const CoherentKet& bell, Encoding enc, double out_alpha) {
  CoherentKet s = beam_splitter(qubit.tensor(bell), 1, 0, kQuarterPi);
  if (enc == Encoding::ZeroAlpha) s = displace(s, 0, -std::numbers::sqrt2 * out_alpha);
  const std::array<std::size_t, 2> measured{0, 1};
  return vacuum_probability(s, measured);
}

}  // namespace

// ---------------------------------------------------------------------------
// Records

std::string_view failure_reason_name(FailureReason r) {
  switch (r) {
    case FailureReason::None: return "None";
    case FailureReason::BothZero: return "BothZero";
    case FailureReason::Rejected: return "Rejected";
    case FailureReason::MaxAttempts: return "MaxAttempts";
  }
  return "Unknown";
}

std::optional<std::size_t> OutcomeRecord::count(std::string_view label) const {
  for (const auto& c : counts) {
    if (c.label == label) return c.value;
  }
  return std::nullopt;
}

std::string OutcomeRecord::corrections_token() const {
  std::string out;
  char buf[64];
  for (const auto& c : corrections) {
    switch (c.kind) {
      case CorrectionKind::X: out += 'X'; break;
      case CorrectionKind::Z: out += 'Z'; break;
      case CorrectionKind::Displace:
        if (c.gamma.imag() == 0.0) {
          std::snprintf(buf, sizeof buf, "D(%.3g)", c.gamma.real());
        } else {
          std::snprintf(buf, sizeof buf, "D(%.3g%+.3gi)", c.gamma.real(), c.gamma.imag());
        }
        out += buf;
        break;
    }
  }
  return out;
}

std::string OutcomeRecord::csv_row() const {
  std::ostringstream s;
  if (success()) {
    s << "Success";
  } else {
    s << "Failure(" << failure_reason_name(reason) << ")";
  }
  s << ',';
  if (!counts.empty()) s << counts[0].value;
  s << ',';
  if (counts.size() > 1) s << counts[1].value;
  s << ',' << corrections_token();
  return s.str();
}

// ---------------------------------------------------------------------------
// Resources

CoherentKet make_cat(Complex a, CatSign sign) {
  const double s = sign == CatSign::Plus ? 1.0 : -1.0;
  const CoherentKet cat(1, {{1.0, {-a}}, {s, {a}}});
  if (cat.empty() || cat.norm_squared() <= 1e-14) throw DegenerateQubitError("cat state vanishes");
  return cat.normalized();
}

double BellSpec::transmissivity() const {
  if (!(alpha > 0.0) || !(beta > 0.0)) throw ContractViolation("Bell amplitudes must be positive");
  return 1.0 / (1.0 + (alpha * alpha) / (beta * beta));
}

CoherentKet make_bell_direct(double beta, double alpha) {
  return CoherentKet(2, {{1.0, {Complex(-beta), Complex(-alpha)}}, {1.0, {Complex(beta), Complex(alpha)}}})
      .normalized();
}

CoherentKet make_bell(const BellSpec& spec) {
  switch (spec.kind) {
    case BellSpec::Kind::Symmetric:
      return make_bell_direct(spec.alpha, spec.alpha);
    case BellSpec::Kind::ZeroAlpha:
      return displace(displace(make_bell_direct(spec.alpha, spec.alpha), 0, spec.alpha), 1, spec.alpha);
    case BellSpec::Kind::AmplitudeMatched: {
      const double t = spec.transmissivity();
      const double theta = std::acos(std::sqrt(t));
      const CoherentKet cat = make_cat(spec.beta / std::cos(theta), CatSign::Plus);
      return beam_splitter(cat.append_vacuum(1), 0, 1, theta);
    }
  }
  throw ContractViolation("unknown Bell kind");
}

// ---------------------------------------------------------------------------
// Teleportation

ProtocolResult teleport(const CoherentKet& qubit, const BellSpec& bell, Encoding encoding, Rng& rng) {
  if (qubit.modes() != 1) throw ContractViolation("teleport expects a one-mode qubit");
  return teleport_on_mode(qubit, 0, bell, encoding, rng);
}

ProtocolResult teleport_on_mode(const CoherentKet& state, std::size_t mode, const BellSpec& bell,
                                Encoding encoding, Rng& rng) {
  auto branches = teleport_flow(state, mode, bell, encoding, sampler(rng), true);
  return to_result(std::move(branches.front()));
}

std::vector<WeightedOutcome> teleport_outcomes(const CoherentKet& qubit, const BellSpec& bell,
                                               Encoding encoding) {
  if (qubit.modes() != 1) throw ContractViolation("teleport expects a one-mode qubit");
  return to_weighted(teleport_flow(qubit, 0, bell, encoding, enumerator(), true));
}

double teleport_success_prob(const CoherentKet& qubit, const BellSpec& bell, Encoding encoding) {
  if (qubit.modes() != 1) throw ContractViolation("teleport expects a one-mode qubit");
  check_bell_encoding(bell, encoding);
  return 1.0 - failure_prob_of(qubit.normalized(), make_bell(bell), encoding, bell.alpha);
}

double teleport_success_prob(double alpha, Complex mu, Complex nu, Encoding encoding) {
  const BellSpec bell =
      encoding == Encoding::ZeroAlpha ? BellSpec::zero_alpha(alpha) : BellSpec::symmetric(alpha);
  return teleport_success_prob(make_qubit({mu, nu, alpha, encoding}), bell, encoding);
}

double teleport_success_prob_unnormalized(double alpha, Complex mu, Complex nu, Encoding encoding) {
  const Complex z = logical_zero_amplitude(encoding, alpha);
  const Complex o = logical_one_amplitude(encoding, alpha);
  const CoherentKet qubit(1, {{mu, {z}}, {nu, {o}}});
  const CoherentKet bell(2, {{1.0, {z, z}}, {1.0, {o, o}}});
  // Unit-weight Bell terms: the unnormalized pair carries norm^2 = 2 N.
  return 1.0 - 0.5 * failure_prob_of(qubit, bell, encoding, alpha);
}

ProtocolResult restore_amplitude(const CoherentKet& qubit, double beta, double alpha, Rng& rng) {
  return teleport(qubit, BellSpec::amplitude_matched(beta, alpha), Encoding::PlusMinus, rng);
}

double restore_success_prob(double beta, double alpha, Complex mu, Complex nu) {
  return teleport_success_prob(make_qubit({mu, nu, beta, Encoding::PlusMinus}),
                               BellSpec::amplitude_matched(beta, alpha), Encoding::PlusMinus);
}

ProtocolResult apply_Z_by_reteleport(const CoherentKet& qubit, const BellSpec& bell, Encoding encoding,
                                     Rng& rng, std::size_t max_attempts, bool want_z) {
  ProtocolResult result;
  result.record.attempts = 0;
  if (!want_z) {
    result.state = qubit;
    return result;
  }
  CoherentKet current = qubit;
  bool pending = true;
  const Measure measure = sampler(rng);
  while (pending && result.record.attempts < max_attempts) {
    ++result.record.attempts;
    auto branch = std::move(teleport_flow(current, 0, bell, encoding, measure, false).front());
    auto& rec = branch.record;
    result.record.counts.insert(result.record.counts.end(), rec.counts.begin(), rec.counts.end());
    result.record.corrections.insert(result.record.corrections.end(), rec.corrections.begin(),
                                     rec.corrections.end());
    result.record.amplitude_mismatch |= rec.amplitude_mismatch;
    if (!rec.success()) {
      result.record.status = OutcomeStatus::Failure;
      result.record.reason = rec.reason;
      return result;
    }
    current = std::move(*branch.state);
    if (branch.z_parity) pending = false;
  }
  if (pending) {
    result.record.status = OutcomeStatus::Failure;
    result.record.reason = FailureReason::MaxAttempts;
    return result;
  }
  result.state = std::move(current);
  return result;
}

// ---------------------------------------------------------------------------
// Hadamard

double hadamard_theta(double alpha) {
  if (!(alpha > 0.0)) throw ContractViolation("Hadamard gadget needs alpha > 0");
  return std::numbers::pi / (8.0 * alpha * alpha);
}

HadamardTable default_hadamard_table() {
  HadamardTable t;
  t.entry[0][0] = {false, false};
  t.entry[0][1] = {false, true};
  t.entry[1][0] = {true, false};
  t.entry[1][1] = {true, true};
  return t;
}

HadamardTable derive_hadamard_correction_table(double alpha) {
  const double r = std::numbers::sqrt2 / 2.0;
  const std::array<std::pair<Complex, Complex>, 6> inputs{{{1.0, 0.0},
                                                           {0.0, 1.0},
                                                           {r, r},
                                                           {r, -r},
                                                           {r, Complex(0.0, r)},
                                                           {r, Complex(0.0, -r)}}};
  const std::array<PauliCorrection, 4> paulis{{{false, false}, {false, true}, {true, false}, {true, true}}};
  double score[2][2][4] = {};
  const HadamardTable identity{};
  for (const auto& [mu, nu] : inputs) {
    const QubitSpec spec{mu, nu, alpha, Encoding::ZeroAlpha};
    const QubitSpec target = hadamard_spec(spec);
    for (const auto& b : hadamard_flow(make_qubit(spec), 0, alpha, identity, enumerator())) {
      const std::size_t na = *b.record.count("n_a") % 2;
      const std::size_t nb = *b.record.count("n_b") % 2;
      for (std::size_t p = 0; p < paulis.size(); ++p) {
        const CoherentKet out = apply_table(*b.state, 0, paulis[p], alpha, nullptr);
        score[na][nb][p] += b.probability * qubit_fidelity(out, target);
      }
    }
  }
  HadamardTable t;
  for (std::size_t a = 0; a < 2; ++a) {
    for (std::size_t b = 0; b < 2; ++b) {
      const auto best = std::max_element(std::begin(score[a][b]), std::end(score[a][b]));
      t.entry[a][b] = paulis[static_cast<std::size_t>(best - std::begin(score[a][b]))];
    }
  }
  return t;
}

ProtocolResult hadamard(const CoherentKet& qubit, double alpha, Rng& rng, const HadamardTable& table) {
  if (qubit.modes() != 1) throw ContractViolation("hadamard expects a one-mode qubit");
  return hadamard_on_mode(qubit, 0, alpha, rng, table);
}

ProtocolResult hadamard_on_mode(const CoherentKet& state, std::size_t mode, double alpha, Rng& rng,
                                const HadamardTable& table) {
  return to_result(std::move(hadamard_flow(state, mode, alpha, table, sampler(rng)).front()));
}

std::vector<WeightedOutcome> hadamard_outcomes(const CoherentKet& qubit, double alpha,
                                               const HadamardTable& table) {
  if (qubit.modes() != 1) throw ContractViolation("hadamard expects a one-mode qubit");
  return to_weighted(hadamard_flow(qubit, 0, alpha, table, enumerator()));
}

HadamardReport hadamard_report(double alpha, const QubitSpec& spec, OutcomeGrouping grouping) {
  if (spec.encoding != Encoding::ZeroAlpha) {
    throw ContractViolation("the Hadamard gadget acts on ZeroAlpha qubits");
  }
  if (std::abs(spec.alpha - alpha) > kAmplitudeMatch) {
    throw ContractViolation("qubit amplitude must match the gadget amplitude");
  }
  HadamardReport rep;
  rep.alpha = alpha;
  rep.input = spec;
  rep.grouping = grouping;
  const QubitSpec target = hadamard_spec(spec);
  std::map<std::pair<std::size_t, std::size_t>, HadamardOutcome> classes;
  for (const auto& b : hadamard_outcomes(make_qubit(spec), alpha)) {
    HadamardOutcome o{*b.record.count("n_a"), *b.record.count("n_b"), b.probability,
                      qubit_fidelity(*b.state, target)};
    rep.total_probability += o.probability;
    rep.average_fidelity += o.probability * o.fidelity;
    if (grouping == OutcomeGrouping::Counts) {
      rep.outcomes.push_back(o);
      continue;
    }
    auto& c = classes[{o.n_a % 2, o.n_b % 2}];
    c.n_a = o.n_a % 2;
    c.n_b = o.n_b % 2;
    c.fidelity += o.probability * o.fidelity;  // normalized below
    c.probability += o.probability;
  }
  for (auto& [key, c] : classes) {
    c.fidelity /= c.probability;
    rep.outcomes.push_back(c);
  }
  rep.average_fidelity /= rep.total_probability;
  rep.accepted = rep.outcomes;
  rep.accepted_probability = rep.total_probability;
  return rep;
}

HadamardReport hadamard_postselect(double alpha, const QubitSpec& spec, double target,
                                   AcceptanceRule rule, OutcomeGrouping grouping) {
  HadamardReport rep = hadamard_report(alpha, spec, grouping);
  auto sorted = rep.outcomes;
  std::sort(sorted.begin(), sorted.end(), [](const HadamardOutcome& a, const HadamardOutcome& b) {
    if (a.fidelity != b.fidelity) return a.fidelity > b.fidelity;
    return std::make_pair(a.n_a, a.n_b) < std::make_pair(b.n_a, b.n_b);
  });
  rep.accepted.clear();
  rep.accepted_probability = 0.0;
  if (rule == AcceptanceRule::PerOutcomeThreshold) {
    for (const auto& o : sorted) {
      if (o.fidelity >= target) {
        rep.accepted.push_back(o);
        rep.accepted_probability += o.probability;
      }
    }
    return rep;
  }
  double p = 0.0, pf = 0.0;
  std::size_t keep = 0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    p += sorted[i].probability;
    pf += sorted[i].probability * sorted[i].fidelity;
    if (pf >= target * p) {
      keep = i + 1;
      rep.accepted_probability = p;
    }
  }
  rep.accepted.assign(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(keep));
  return rep;
}

std::vector<CountPair> hadamard_accepted_counts(double alpha, double target) {
  const auto rep = hadamard_postselect(alpha, {0.0, 1.0, alpha, Encoding::ZeroAlpha}, target);
  std::vector<CountPair> out;
  for (const auto& o : rep.accepted) out.emplace_back(o.n_a, o.n_b);
  std::sort(out.begin(), out.end());
  return out;
}

ProtectedHadamardResult protected_hadamard(const CoherentKet& qubit, double alpha,
                                           std::span<const CountPair> accepted, Rng& rng) {
  if (qubit.modes() != 1) throw ContractViolation("protected_hadamard expects a one-mode qubit");
  ProtectedHadamardResult result{{}, std::nullopt, qubit};
  const CoherentKet pair = make_bell(BellSpec::zero_alpha(alpha));
  // [data, q, p] + [b, c]: the gadget acts on p with (b, c) as its resource.
  const CoherentKet s = qubit.tensor(pair).permuted(std::array<std::size_t, 3>{0, 2, 1}).tensor(pair);
  auto g = std::move(gadget_core(s, alpha, sampler(rng)).front());
  auto& rec = result.record;
  rec.counts = {{"n_a", g.n_a}, {"n_b", g.n_b}};
  const CountPair key{g.n_a, g.n_b};
  if (std::find(accepted.begin(), accepted.end(), key) == accepted.end()) {
    rec.status = OutcomeStatus::Failure;
    rec.reason = FailureReason::Rejected;
    return result;
  }
  // [data, q, c]: H sits on c, so teleporting data through (q, c) swaps X and Z.
  const CoherentKet corrected = apply_table(g.state, 2, default_hadamard_table().at(g.n_a, g.n_b), alpha, &rec);
  TeleportOptions opt;
  opt.encoding = Encoding::ZeroAlpha;
  opt.out_alpha = alpha;
  opt.swap_xz = true;
  opt.amplitude_mismatch = !in_logical_span(qubit, Encoding::ZeroAlpha, alpha, 0);
  auto t = std::move(teleport_core(corrected, opt, sampler(rng)).front());
  rec.counts.insert(rec.counts.end(), t.record.counts.begin(), t.record.counts.end());
  rec.corrections.insert(rec.corrections.end(), t.record.corrections.begin(), t.record.corrections.end());
  rec.amplitude_mismatch = t.record.amplitude_mismatch;
  rec.status = t.record.status;
  rec.reason = t.record.reason;
  result.state = std::move(t.state);
  if (rec.success()) result.data = *result.state;
  return result;
}

double protected_hadamard_accept_prob(double alpha, std::span<const CountPair> accepted) {
  const CoherentKet pair = make_bell(BellSpec::zero_alpha(alpha));
  // [q, p] + [b, c]
  const CoherentKet s = pair.permuted(std::array<std::size_t, 2>{1, 0}).tensor(pair);
  double p = 0.0;
  for (const auto& g : gadget_core(s, alpha, enumerator())) {
    if (std::find(accepted.begin(), accepted.end(), CountPair{g.n_a, g.n_b}) != accepted.end()) {
      p += g.probability;
    }
  }
  return p;
}

// ---------------------------------------------------------------------------
// Displacement from a strong ancilla

CoherentDensity simulated_displacement(const CoherentKet& state, std::size_t mode, Complex gamma,
                                       double beta_magnitude) {
  if (mode >= state.modes()) throw ContractViolation("mode index out of range");
  const double g = std::abs(gamma);
  if (g == 0.0) return CoherentDensity::pure(state);
  if (!(beta_magnitude >= g)) throw ContractViolation("ancilla amplitude must be at least |gamma|");
  const Complex beta = -beta_magnitude * gamma / g;
  const CoherentKet s = state.tensor(CoherentKet::product({beta}));
  return trace_out(beam_splitter(s, mode, state.modes(), std::asin(g / beta_magnitude)), state.modes());
}

double simulated_displacement_fidelity(const CoherentKet& state, std::size_t mode, Complex gamma,
                                       double beta_magnitude) {
  return fidelity_pure(simulated_displacement(state, mode, gamma, beta_magnitude),
                       displace(state, mode, gamma));
}

}  // namespace catlink
