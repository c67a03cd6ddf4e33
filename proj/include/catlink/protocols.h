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

#ifndef CATLINK_PROTOCOLS_H
#define CATLINK_PROTOCOLS_H

// Resource states and the measurement-driven protocols built on them:
// teleportation in both encodings, amplitude restoration, re-teleportation as
// a Z gate, the beam-splitter Hadamard gadget, and beam-splitter displacement.
//
// Every protocol is written once as a measurement flow. Monte Carlo entry
// points draw each photon count; the *_outcomes / report entry points walk
// every count with nonzero probability instead and weight the branches.

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "catlink/coherent.h"
#include "catlink/encodings.h"

namespace catlink {

// ---------------------------------------------------------------------------
// Outcome records

enum class CorrectionKind { X, Z, Displace };

struct CorrectionOp {
  CorrectionKind kind = CorrectionKind::X;
  Complex gamma = 0.0;  // Displace only
};

enum class OutcomeStatus { Success, Failure };
enum class FailureReason { None, BothZero, Rejected, MaxAttempts };

std::string_view failure_reason_name(FailureReason r);

struct DetectorCount {
  std::string label;
  std::size_t value = 0;
};

struct OutcomeRecord {
  std::vector<DetectorCount> counts;       // in measurement order
  std::vector<CorrectionOp> corrections;   // in application order
  OutcomeStatus status = OutcomeStatus::Success;
  FailureReason reason = FailureReason::None;
  bool amplitude_mismatch = false;
  std::size_t attempts = 1;

  bool success() const { return status == OutcomeStatus::Success; }
  std::optional<std::size_t> count(std::string_view label) const;
  /// Compact token string, e.g. `XZ` or `D(-2.83)Z`; empty when no correction.
  std::string corrections_token() const;
  /// `status,n1,n2,corrections` with the first two recorded counts.
  std::string csv_row() const;
  static std::string csv_header() { return "status,n1,n2,corrections"; }
};

/// Result of one sampled protocol run. Failure carries no state.
struct ProtocolResult {
  OutcomeRecord record;
  std::optional<CoherentKet> state;
};

/// One branch of an exact outcome enumeration.
struct WeightedOutcome {
  double probability = 0.0;
  OutcomeRecord record;
  std::optional<CoherentKet> state;
};

// ---------------------------------------------------------------------------
// Resources

enum class CatSign { Plus, Minus };

/// Normalized |-a> +/- |a>.
CoherentKet make_cat(Complex a, CatSign sign);

struct BellSpec {
  enum class Kind { Symmetric, ZeroAlpha, AmplitudeMatched };
  Kind kind = Kind::Symmetric;
  double alpha = 1.0;  // amplitude on the output mode
  double beta = 1.0;   // amplitude on the mode mixed with the qubit

  static BellSpec symmetric(double alpha) { return {Kind::Symmetric, alpha, alpha}; }
  static BellSpec zero_alpha(double alpha) { return {Kind::ZeroAlpha, alpha, alpha}; }
  static BellSpec amplitude_matched(double beta, double alpha) {
    return {Kind::AmplitudeMatched, alpha, beta};
  }
  /// T = cos^2(theta) = 1 / (1 + alpha^2 / beta^2) of the preparation splitter.
  double transmissivity() const;
};

/// Two-mode Bell resource; mode 0 is mixed with the qubit, mode 1 is the output.
///   Symmetric:        |-a>|-a> + |a>|a>
///   ZeroAlpha:        |0>|0> + |2a>|2a>
///   AmplitudeMatched: |-b>|-a> + |b>|a>, prepared from the cat |+-b/cos(theta)>
///                     and vacuum on a splitter of transmissivity T.
CoherentKet make_bell(const BellSpec& spec);

/// |-b>|-a> + |b>|a> written down directly, for checking the preparation recipe.
CoherentKet make_bell_direct(double beta, double alpha);

// ---------------------------------------------------------------------------
// Teleportation

/// Teleports `qubit` (one mode). PM flow: 50/50 splitter, count n1 then n2;
///   (n1 > 0, n2 = 0) -> Z^n1, (n1 = 0, n2 > 0) -> X Z^n2, (0, 0) -> failure.
/// ZeroAlpha flow: count n2; if n2 > 0 -> X Z^n2 (n1 is still recorded);
///   otherwise D(-sqrt2 alpha) on mode 1, count n1 -> Z^n1; (0, 0) -> failure.
ProtocolResult teleport(const CoherentKet& qubit, const BellSpec& bell, Encoding encoding, Rng& rng);

/// Same flow on one mode of a larger state; the output replaces `mode`.
ProtocolResult teleport_on_mode(const CoherentKet& state, std::size_t mode, const BellSpec& bell,
                                Encoding encoding, Rng& rng);

/// Every outcome of `teleport` with its exact probability.
std::vector<WeightedOutcome> teleport_outcomes(const CoherentKet& qubit, const BellSpec& bell,
                                               Encoding encoding);

/// 1 - P(both counters empty) from overlaps, for the normalized qubit and Bell state.
double teleport_success_prob(double alpha, Complex mu, Complex nu, Encoding encoding);
/// Same with N(alpha) dropped from both the qubit and the Bell state.
double teleport_success_prob_unnormalized(double alpha, Complex mu, Complex nu, Encoding encoding);
/// Closed-form success probability for an arbitrary one-mode input and Bell resource.
double teleport_success_prob(const CoherentKet& qubit, const BellSpec& bell, Encoding encoding);

/// PM qubit at amplitude beta -> same logical content at alpha, through
/// AmplitudeMatched(beta, alpha).
ProtocolResult restore_amplitude(const CoherentKet& qubit, double beta, double alpha, Rng& rng);
double restore_success_prob(double beta, double alpha, Complex mu, Complex nu);

/// Applies Z by teleporting until the net parity of the uncorrected Z's is
/// odd. `want_z = false` returns the input after zero attempts.
ProtocolResult apply_Z_by_reteleport(const CoherentKet& qubit, const BellSpec& bell,
                                     Encoding encoding, Rng& rng, std::size_t max_attempts,
                                     bool want_z = true);

// ---------------------------------------------------------------------------
// Hadamard gadget (ZeroAlpha encoding)
//
// The qubit and the first mode of |0,0> + |2a,2a> meet on U_iBS(theta) with
// theta = pi / (2 A^2), A = 2 alpha the logical-one amplitude. Both are then
// displaced by -alpha and counted; a parity-indexed Pauli on the remaining
// mode leaves approximately H|Q>.

double hadamard_theta(double alpha);

struct PauliCorrection {
  bool x = false;
  bool z = false;  // applied before x
  bool operator==(const PauliCorrection&) const = default;
};

/// entry[n_a % 2][n_b % 2]
struct HadamardTable {
  std::array<std::array<PauliCorrection, 2>, 2> entry{};
  bool operator==(const HadamardTable&) const = default;
  const PauliCorrection& at(std::size_t n_a, std::size_t n_b) const { return entry[n_a % 2][n_b % 2]; }
};

/// (even, even) I, (even, odd) Z, (odd, even) X, (odd, odd) XZ.
HadamardTable default_hadamard_table();

/// Picks, for each parity class, the Pauli maximizing the class-averaged
/// fidelity to H|Q> over the six Pauli eigenstates.
HadamardTable derive_hadamard_correction_table(double alpha);

ProtocolResult hadamard(const CoherentKet& qubit, double alpha, Rng& rng,
                        const HadamardTable& table = default_hadamard_table());
ProtocolResult hadamard_on_mode(const CoherentKet& state, std::size_t mode, double alpha, Rng& rng,
                                const HadamardTable& table = default_hadamard_table());
std::vector<WeightedOutcome> hadamard_outcomes(const CoherentKet& qubit, double alpha,
                                               const HadamardTable& table = default_hadamard_table());

enum class OutcomeGrouping { Counts, Parity };
enum class AcceptanceRule { GreedyAverage, PerOutcomeThreshold };

struct HadamardOutcome {
  std::size_t n_a = 0;  // for Parity grouping these hold the parities
  std::size_t n_b = 0;
  double probability = 0.0;
  double fidelity = 0.0;  // of the corrected output to H|Q>
};

struct HadamardReport {
  double alpha = 0.0;
  QubitSpec input;
  OutcomeGrouping grouping = OutcomeGrouping::Counts;
  std::vector<HadamardOutcome> outcomes;
  double total_probability = 0.0;
  double average_fidelity = 0.0;
  std::vector<HadamardOutcome> accepted;
  double accepted_probability = 0.0;
};

HadamardReport hadamard_report(double alpha, const QubitSpec& spec,
                               OutcomeGrouping grouping = OutcomeGrouping::Counts);

/// GreedyAverage: sort by fidelity, descending, and accept the longest prefix
/// whose probability-weighted mean fidelity is >= target.
/// PerOutcomeThreshold: accept every outcome whose own fidelity is >= target.
HadamardReport hadamard_postselect(double alpha, const QubitSpec& spec, double target,
                                   AcceptanceRule rule = AcceptanceRule::GreedyAverage,
                                   OutcomeGrouping grouping = OutcomeGrouping::Counts);

using CountPair = std::pair<std::size_t, std::size_t>;

/// Accepted (n_a, n_b) pairs of hadamard_postselect for the worst-case input |2 alpha>.
std::vector<CountPair> hadamard_accepted_counts(double alpha, double target);

struct ProtectedHadamardResult {
  OutcomeRecord record;
  std::optional<CoherentKet> state;  // approx H|Q> on success
  CoherentKet data;                  // the data qubit as left by the run
};

/// Runs the gadget on half of a fresh Bell pair; on an accepted (n_a, n_b) the
/// data qubit is teleported through the corrected pair, otherwise the run is
/// rejected before the data qubit is touched.
ProtectedHadamardResult protected_hadamard(const CoherentKet& qubit, double alpha,
                                           std::span<const CountPair> accepted, Rng& rng);

/// Exact probability that the gadget run on half of a Bell pair is accepted.
double protected_hadamard_accept_prob(double alpha, std::span<const CountPair> accepted);

// ---------------------------------------------------------------------------
// Displacement from a strong coherent ancilla

/// Mixes `mode` with an ancilla |beta> on a splitter with sin(theta) = |gamma|/|beta|,
/// the ancilla phase chosen so the mode is shifted by gamma, and traces the
/// ancilla out.
CoherentDensity simulated_displacement(const CoherentKet& state, std::size_t mode, Complex gamma,
                                       double beta_magnitude);

/// Fidelity of simulated_displacement to displace(state, mode, gamma).
double simulated_displacement_fidelity(const CoherentKet& state, std::size_t mode, Complex gamma,
                                       double beta_magnitude);

}  // namespace catlink

#endif  // CATLINK_PROTOCOLS_H
