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


#ifndef CATLINK_PHASE_FLIP_CODE_H
#define CATLINK_PHASE_FLIP_CODE_H

// Repetition code against phase flips, built from beam splitters only.
//
// A PM qubit at sqrt(m) alpha is split by a cascade of m - 1 splitters into
// mu|-a>^m + nu|a>^m with a = alpha, a block Hadamard turns channel Z errors
// into swaps |-a> <-> |a>, and the decoder finds a swapped mode by counting
// photons in the difference port of a balanced splitter.
//
// Decoding keeps a running candidate mode of amplitude sqrt(c) a that stands
// for c agreeing code modes. Each new mode is compared against one unit split
// off the candidate: an empty difference port merges the pair back in (c + 1),
// a click cancels the pair (c - 1) and flips the pending Z parity by the count.
// This is majority voting by pair cancellation, so at most n swapped modes out
// of 2n + 1 leave a candidate holding the input qubit up to Z^(sum of counts).

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "catlink/coherent.h"
#include "catlink/encodings.h"
#include "catlink/loss_channel.h"
#include "catlink/protocols.h"

namespace catlink {

enum class HadamardModel { Ideal, Physical };
/// Where lost amplitude is restored. BeforeDecode teleports every code mode
/// back to alpha ahead of the second H layer; both non-Off placements also
/// bring the decoded qubit from sqrt(c) times the block amplitude to alpha.
enum class RestorePlacement { Off, AfterDecode, BeforeDecode };

std::string_view hadamard_model_name(HadamardModel m);
std::string_view restore_placement_name(RestorePlacement r);

struct CodeParams {
  std::size_t n = 1;  // errors tolerated
  HadamardModel hadamard_model = HadamardModel::Ideal;
  RestorePlacement restore = RestorePlacement::AfterDecode;
  /// Prepare the input directly at sqrt(2n+1) alpha instead of teleporting it there.
  bool ideal_boost = false;
  /// A trial succeeds when the output fidelity to the input spec reaches this.
  double success_fidelity = 0.99;

  std::size_t block_size() const { return 2 * n + 1; }
  void validate() const;
};

// ---------------------------------------------------------------------------
// Closed forms

/// 1 - 3p^2 + 2p^3.
double code_success_prob(double p_error);
/// sum_{j<=n} C(2n+1, j) p^j (1-p)^(2n+1-j).
double general_code_success(std::size_t n, double p_error);

// ---------------------------------------------------------------------------
// Encoding

/// Teleports a PM qubit at `alpha` onto amplitude sqrt(block_size) alpha.
ProtocolResult boost_amplitude(const CoherentKet& qubit, double alpha, std::size_t block_size,
                               Rng& rng);

/// Transmissivity cos^2 of the k-th splitter of the encoder cascade: 1 / (m - k).
double encoder_transmissivity(std::size_t block_size, std::size_t k);

/// One-mode qubit at sqrt(m) alpha -> m modes; splitter k mixes modes k and k+1.
CoherentKet encode(const CoherentKet& qubit, std::size_t block_size);

struct BlockHResult {
  CoherentKet state;
  std::vector<OutcomeRecord> records;  // one per mode, Physical model only
};

/// Logical Hadamard on every mode of a PM block at amplitude `alpha`.
/// Ideal: (c_-, c_+) -> ((c_- + c_+)/sqrt2, (c_- - c_+)/sqrt2) on each mode's
/// coefficients, then renormalized. Physical: the beam-splitter gadget in the
/// ZeroAlpha frame, entered and left by D(+alpha) and D(-alpha).
BlockHResult apply_logical_H_blockwise(const CoherentKet& state, double alpha, HadamardModel model,
                                       Rng& rng);
/// Ideal model only; needs no randomness.
CoherentKet apply_logical_H_ideal(const CoherentKet& state, double alpha);

// ---------------------------------------------------------------------------
// Decoding

struct Comparison {
  std::size_t mode = 0;              // code mode compared against the candidate
  std::size_t candidate_weight = 0;  // c before the comparison
  std::size_t count = 0;             // difference-port photons
  bool missed = false;               // count 0 while the compared amplitudes differed
};

struct SyndromeRecord {
  std::vector<Comparison> comparisons;
  /// Modes implicated by clicks: against a candidate of weight 1 both modes,
  /// against a heavier candidate the new mode.
  std::vector<std::size_t> suspects;
  /// Photons seen in ports that should be empty; nonzero only after a miss.
  std::size_t stray_photons = 0;
  bool z_correction = false;          // odd total of difference counts
  std::size_t output_weight = 0;      // c at the end
  bool anomaly = false;               // a miss, or an output outside the code span

  std::optional<std::size_t> inferred_error_mode() const;
  /// Difference counts joined by ';'.
  std::string token() const;
};

struct DecodeResult {
  SyndromeRecord syndrome;
  CoherentKet state;          // one-mode qubit at output_alpha
  double output_alpha = 0.0;  // sqrt(output_weight) a
};

/// Decodes an m-mode block at per-mode amplitude `alpha` with sampled counts.
DecodeResult decode_and_correct(const CoherentKet& block, double alpha, Rng& rng);

struct WeightedDecode {
  double probability = 0.0;
  DecodeResult result;
};

/// Every decoder branch with its probability. Branches whose probability falls
/// below `min_probability` are dropped as soon as they appear.
std::vector<WeightedDecode> decode_outcomes(const CoherentKet& block, double alpha,
                                            double min_probability = 0.0);

// ---------------------------------------------------------------------------
// Full trial

struct CodeTrialResult {
  bool success = false;
  double fidelity = 0.0;
  double output_alpha = 0.0;
  SyndromeRecord syndrome;
  std::vector<bool> channel_z;  // odd environment count per code mode
  bool undetected = false;      // some comparison missed a swapped mode
  std::vector<OutcomeRecord> trail;
  std::optional<CoherentKet> state;

  std::size_t channel_errors() const;
  /// `trial,pe,eta,alpha,n,syndrome,success,fidelity`
  std::string csv_row(std::size_t trial, double pe, double eta, double alpha, std::size_t n) const;
  static std::string csv_header() { return "trial,pe,eta,alpha,n,syndrome,success,fidelity"; }
};

/// boost -> encode -> H layer -> per-mode loss -> H layer -> decode -> restore.
/// The input is a PM spec; its alpha is the per-mode amplitude of the block.
/// Loss is unravelled by counting each environment mode, so an odd count is
/// a Z on that mode.
CodeTrialResult end_to_end(const QubitSpec& spec, const CodeParams& params,
                           const ChannelParams& channel, Rng& rng);

/// Same pipeline with the channel replaced by an independent Z on each code
/// mode with probability `p_error` and no amplitude loss, so every p_error in
/// [0, 1] is reachable.
CodeTrialResult end_to_end_injected(const QubitSpec& spec, const CodeParams& params, double p_error,
                                    Rng& rng);

}  // namespace catlink

#endif  // CATLINK_PHASE_FLIP_CODE_H
