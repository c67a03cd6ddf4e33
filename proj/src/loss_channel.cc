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

#include "catlink/loss_channel.h"

#include <array>
#include <cmath>

#include "catlink/errors.h"

namespace catlink {
namespace {

constexpr double kDegenerateBranch = 1e-14;

void check_eta(double eta) {
  if (!(eta > 0.0 && eta <= 1.0)) throw ContractViolation("transmissivity must lie in (0, 1]");
}

}  // namespace

double transmissivity(double lambda, double length) {
  if (!(lambda >= 0.0) || !(length >= 0.0)) {
    throw ContractViolation("loss coefficient and length must be non-negative");
  }
  return std::exp(-lambda * length);
}

ChannelParams ChannelParams::from_loss(double lambda, double length) {
  ChannelParams p;
  p.lambda = lambda;
  p.length = length;
  p.eta = transmissivity(lambda, length);
  check_eta(p.eta);
  return p;
}

ChannelParams ChannelParams::from_eta(double eta) {
  check_eta(eta);
  ChannelParams p;
  p.length = -std::log(eta) / p.lambda;
  p.eta = eta;
  return p;
}

double ChannelParams::theta() const {
  check_eta(eta);
  return std::acos(std::sqrt(eta));
}

TransmitResult transmit(const CoherentKet& state, std::size_t mode, const ChannelParams& params) {
  if (mode >= state.modes()) throw ContractViolation("mode index out of range");
  const std::size_t env = state.modes();
  return {beam_splitter(state.append_vacuum(1), mode, env, params.theta()), env};
}

MultiTransmitResult multi_mode_transmit(const CoherentKet& state,
                                        std::span<const std::size_t> modes,
                                        const ChannelParams& params) {
  MultiTransmitResult out{state, {}};
  for (auto m : modes) {
    auto r = transmit(out.state, m, params);
    out.state = std::move(r.state);
    out.environment_modes.push_back(r.environment_mode);
  }
  return out;
}

double error_prob(double alpha, double eta) {
  check_eta(eta);
  return -0.5 * std::expm1(-2.0 * (1.0 - eta) * alpha * alpha);
}

CoherentDensity ChannelMixture::density() const {
  const std::array<double, 2> w{mixture.weight_no_error, mixture.weight_z_error};
  const std::array<CoherentKet, 2> k{no_error, z_error};
  return CoherentDensity::mixture(w, k);
}

ChannelMixture channel_mixture(const QubitSpec& spec, double eta) {
  spec.validate();
  check_eta(eta);
  ChannelMixture out;
  const double a = spec.alpha * std::sqrt(eta);
  const double pe = error_prob(spec.alpha, eta);
  const double n_in = norm_factor(spec.alpha, spec.mu, spec.nu);
  out.surviving = spec;
  out.surviving.alpha = a;
  out.no_error = make_qubit(out.surviving);
  out.mixture.p_no_error = 1.0 - pe;
  out.mixture.p_z_error = pe;
  out.mixture.surviving_alpha = a;
  out.mixture.weight_no_error = (1.0 - pe) * norm_factor(a, spec.mu, spec.nu) / n_in;
  const double n_flip = norm_factor(a, spec.mu, -spec.nu);
  if (n_flip <= kDegenerateBranch) {
    // The Z image is null; its weight is below 1e-14 and folded away.
    out.z_error = out.no_error;
    out.mixture.weight_z_error = 0.0;
    out.mixture.weight_no_error = 1.0;
  } else {
    out.z_error = make_qubit(logical_Z(out.surviving));
    out.mixture.weight_z_error = pe * n_flip / n_in;
  }
  return out;
}

double encoding_equivalence_witness(double alpha, double eta, Complex mu, Complex nu) {
  const auto params = ChannelParams::from_eta(eta);
  const auto za = transmit(make_qubit({mu, nu, alpha, Encoding::ZeroAlpha}), 0, params);
  auto pm = transmit(make_qubit({mu, nu, alpha, Encoding::PlusMinus}), 0, params);
  CoherentKet shifted = displace(pm.state, 0, alpha * std::sqrt(eta));
  shifted = displace(shifted, pm.environment_mode, alpha * std::sqrt(1.0 - eta));
  return 1.0 - std::norm(za.state.inner(shifted));
}

}  // namespace catlink
