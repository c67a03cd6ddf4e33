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

#ifndef CATLINK_LOSS_CHANNEL_H
#define CATLINK_LOSS_CHANNEL_H

// Fiber loss as a beam splitter of transmissivity eta = exp(-lambda L) coupling
// each travelling mode to its own vacuum environment mode.
//
// Environment modes stay in the pure state ("purification") until a score or
// measurement needs them traced out. After tracing, a qubit at amplitude alpha
// becomes an exact two-branch mixture of qubits at a = alpha sqrt(eta):
//
//   rho = ((1 - P_e) u+ u+^dag + P_e u- u-^dag) / N(alpha),
//   u+- = mu|0>_L +- nu|1>_L (unnormalized, amplitude a),
//   P_e = (1 - exp(-2 (1 - eta) alpha^2)) / 2.
//
// On normalized branches the weights are (1 - P_e) N(a)/N(alpha) and
// P_e N'(a)/N(alpha) with N' the normalization of the Z image; these approach
// (1 - P_e, P_e) up to O(exp(-2 a^2)).

#include <cstddef>
#include <span>
#include <vector>

#include "catlink/coherent.h"
#include "catlink/encodings.h"

namespace catlink {

inline constexpr double kDefaultLossPerKm = 0.06;

struct ChannelParams {
  double lambda = kDefaultLossPerKm;  // 1/km
  double length = 0.0;                // km
  double eta = 1.0;

  static ChannelParams from_loss(double lambda, double length);
  static ChannelParams from_eta(double eta);
  /// Splitter angle with cos^2(theta) = eta.
  double theta() const;
};

double transmissivity(double lambda, double length);

struct TransmitResult {
  CoherentKet state;
  std::size_t environment_mode = 0;
};

/// Appends a vacuum environment mode and couples it to `mode`.
TransmitResult transmit(const CoherentKet& state, std::size_t mode, const ChannelParams& params);

struct MultiTransmitResult {
  CoherentKet state;
  std::vector<std::size_t> environment_modes;  // one per listed mode, in order
};

MultiTransmitResult multi_mode_transmit(const CoherentKet& state,
                                        std::span<const std::size_t> modes,
                                        const ChannelParams& params);

/// P_e = (1 - exp(-2 (1 - eta) alpha^2)) / 2
double error_prob(double alpha, double eta);

struct ZErrorMixture {
  double p_no_error = 1.0;  // 1 - P_e
  double p_z_error = 0.0;   // P_e
  double surviving_alpha = 0.0;
  double weight_no_error = 1.0;  // weights on the normalized branch states
  double weight_z_error = 0.0;
};

struct ChannelMixture {
  ZErrorMixture mixture;
  QubitSpec surviving;    // input logical content at the surviving amplitude
  CoherentKet no_error;   // make_qubit(surviving)
  CoherentKet z_error;    // make_qubit(logical_Z(surviving))

  CoherentDensity density() const;
};

/// Closed-form mixture for a qubit sent through transmissivity eta.
ChannelMixture channel_mixture(const QubitSpec& spec, double eta);

/// 1 - |<lhs|rhs>|^2 between the transmitted ZeroAlpha qubit and the
/// transmitted PM qubit displaced by (alpha sqrt(eta), alpha sqrt(1 - eta)).
double encoding_equivalence_witness(double alpha, double eta, Complex mu, Complex nu);

}  // namespace catlink

#endif  // CATLINK_LOSS_CHANNEL_H
