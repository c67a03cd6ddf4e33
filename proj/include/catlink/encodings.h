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

#ifndef CATLINK_ENCODINGS_H
#define CATLINK_ENCODINGS_H

// Logical qubits carried by two coherent states of one mode.
//
//   PlusMinus:  |0>_L = |-alpha>, |1>_L = |alpha>
//   ZeroAlpha:  |0>_L = |0>,      |1>_L = |2 alpha>
//
// Both bases have overlap exp(-2 alpha^2), so a qubit mu|0>_L + nu|1>_L carries
// the same normalization N = 1 + exp(-2 alpha^2) 2 Re(mu conj(nu)) in either one.

#include <string>
#include <string_view>

#include "catlink/coherent.h"

namespace catlink {

enum class Encoding { PlusMinus, ZeroAlpha };

std::string_view encoding_name(Encoding e);
Encoding parse_encoding(std::string_view name);

struct QubitSpec {
  Complex mu = 1.0;
  Complex nu = 0.0;
  double alpha = 1.0;
  Encoding encoding = Encoding::PlusMinus;

  /// Throws ContractViolation unless |mu|^2 + |nu|^2 = 1 within 1e-12 and alpha > 0.
  void validate() const;
  /// `mu_re,mu_im,nu_re,nu_im,alpha,encoding`
  std::string to_string() const;
  static QubitSpec parse(std::string_view text);
};

/// Logical basis amplitudes (|0>_L, |1>_L) for the encoding at this alpha.
Complex logical_zero_amplitude(Encoding e, double alpha);
Complex logical_one_amplitude(Encoding e, double alpha);

double norm_factor(double alpha, Complex mu, Complex nu);

/// Normalized one-mode ket. Throws DegenerateQubitError when N <= 1e-14.
CoherentKet make_qubit(const QubitSpec& spec);

/// PM -> ZeroAlpha is D(+alpha) on `mode`, the reverse is D(-alpha).
CoherentKet convert_encoding(const CoherentKet& state, Encoding from, Encoding to, double alpha,
                             std::size_t mode = 0);

/// PM: U(pi). ZeroAlpha: D(-2 alpha) then U(pi).
CoherentKet logical_X(const CoherentKet& state, Encoding encoding, double alpha,
                      std::size_t mode = 0);

/// nu -> -nu
QubitSpec logical_Z(const QubitSpec& spec);

/// True when every term's amplitude on `mode` is one of the two logical
/// amplitudes within 1e-12.
bool in_logical_span(const CoherentKet& state, Encoding encoding, double alpha,
                     std::size_t mode = 0);

/// Negates every term whose `mode` amplitude is the logical-one amplitude,
/// then renormalizes. Throws UnsupportedStateError outside the logical span.
CoherentKet logical_Z_physical(const CoherentKet& state, Encoding encoding, double alpha,
                               std::size_t mode = 0);

/// Ideal Hadamard on the spec: (mu, nu) -> ((mu + nu), (mu - nu)) / sqrt(2).
QubitSpec hadamard_spec(const QubitSpec& spec);

/// |<Q_spec|psi>|^2 for normalized psi.
double qubit_fidelity(const CoherentKet& state, const QubitSpec& spec);
/// <Q_spec|rho|Q_spec> / tr rho
double qubit_fidelity(const CoherentDensity& rho, const QubitSpec& spec);

}  // namespace catlink

#endif  // CATLINK_ENCODINGS_H
