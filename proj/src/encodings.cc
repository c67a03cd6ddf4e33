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

#include "catlink/encodings.h"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <vector>

#include "catlink/errors.h"

namespace catlink {
namespace {

constexpr double kSpanTolerance = 1e-12;
constexpr double kDegenerateNorm = 1e-14;

double parse_double(std::string_view field) {
  std::string s(field);
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) {
    throw ConfigError("not a number: '" + s + "'");
  }
  return v;
}

}  // namespace

std::string_view encoding_name(Encoding e) {
  return e == Encoding::PlusMinus ? "pm" : "zeroalpha";
}

Encoding parse_encoding(std::string_view name) {
  if (name == "pm") return Encoding::PlusMinus;
  if (name == "zeroalpha") return Encoding::ZeroAlpha;
  throw ConfigError("unknown encoding '" + std::string(name) + "' (expected pm or zeroalpha)");
}

void QubitSpec::validate() const {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw ContractViolation("qubit alpha must be positive");
  const double n = std::norm(mu) + std::norm(nu);
  if (std::abs(n - 1.0) > 1e-12) {
    throw ContractViolation("qubit coefficients must satisfy |mu|^2 + |nu|^2 = 1");
  }
}

std::string QubitSpec::to_string() const {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%s", mu.real(), mu.imag(),
                nu.real(), nu.imag(), alpha, std::string(encoding_name(encoding)).c_str());
  return buf;
}

QubitSpec QubitSpec::parse(std::string_view text) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    fields.push_back(text.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (fields.size() != 6) {
    throw ConfigError("qubit spec needs 6 fields mu_re,mu_im,nu_re,nu_im,alpha,encoding");
  }
  QubitSpec s;
  s.mu = {parse_double(fields[0]), parse_double(fields[1])};
  s.nu = {parse_double(fields[2]), parse_double(fields[3])};
  s.alpha = parse_double(fields[4]);
  s.encoding = parse_encoding(fields[5]);
  try {
    s.validate();
  } catch (const ContractViolation& e) {
    throw ConfigError(e.what());
  }
  return s;
}

Complex logical_zero_amplitude(Encoding e, double alpha) {
  return e == Encoding::PlusMinus ? Complex(-alpha) : Complex(0.0);
}

Complex logical_one_amplitude(Encoding e, double alpha) {
  return e == Encoding::PlusMinus ? Complex(alpha) : Complex(2.0 * alpha);
}

double norm_factor(double alpha, Complex mu, Complex nu) {
  return 1.0 + std::exp(-2.0 * alpha * alpha) * 2.0 * (mu * std::conj(nu)).real();
}

CoherentKet make_qubit(const QubitSpec& spec) {
  spec.validate();
  const double n = norm_factor(spec.alpha, spec.mu, spec.nu);
  if (n <= kDegenerateNorm) throw DegenerateQubitError("qubit normalization N(alpha) vanishes");
  const double s = 1.0 / std::sqrt(n);
  return CoherentKet(1, {{spec.mu * s, {logical_zero_amplitude(spec.encoding, spec.alpha)}},
                         {spec.nu * s, {logical_one_amplitude(spec.encoding, spec.alpha)}}});
}

CoherentKet convert_encoding(const CoherentKet& state, Encoding from, Encoding to, double alpha,
                             std::size_t mode) {
  if (from == to) return state;
  return displace(state, mode, from == Encoding::PlusMinus ? alpha : -alpha);
}

CoherentKet logical_X(const CoherentKet& state, Encoding encoding, double alpha, std::size_t mode) {
  const CoherentKet shifted =
      encoding == Encoding::ZeroAlpha ? displace(state, mode, -2.0 * alpha) : state;
  return phase_rotation(shifted, mode, std::numbers::pi);
}

QubitSpec logical_Z(const QubitSpec& spec) {
  QubitSpec out = spec;
  out.nu = -spec.nu;
  return out;
}

bool in_logical_span(const CoherentKet& state, Encoding encoding, double alpha, std::size_t mode) {
  if (mode >= state.modes()) throw ContractViolation("mode index out of range");
  const Complex zero = logical_zero_amplitude(encoding, alpha);
  const Complex one = logical_one_amplitude(encoding, alpha);
  for (const auto& t : state.terms()) {
    const Complex a = t.amps[mode];
    if (std::abs(a - zero) > kSpanTolerance && std::abs(a - one) > kSpanTolerance) return false;
  }
  return true;
}

CoherentKet logical_Z_physical(const CoherentKet& state, Encoding encoding, double alpha,
                               std::size_t mode) {
  if (!in_logical_span(state, encoding, alpha, mode)) {
    throw UnsupportedStateError("logical Z needs a state inside the logical span");
  }
  const Complex one = logical_one_amplitude(encoding, alpha);
  auto terms = state.terms();
  for (auto& t : terms) {
    if (std::abs(t.amps[mode] - one) <= kSpanTolerance) t.coeff = -t.coeff;
  }
  return CoherentKet(state.modes(), std::move(terms)).normalized();
}

QubitSpec hadamard_spec(const QubitSpec& spec) {
  QubitSpec out = spec;
  const double r = std::numbers::sqrt2 / 2.0;
  out.mu = r * (spec.mu + spec.nu);
  out.nu = r * (spec.mu - spec.nu);
  return out;
}

double qubit_fidelity(const CoherentKet& state, const QubitSpec& spec) {
  if (state.modes() != 1) throw ContractViolation("qubit fidelity needs a one-mode state");
  const CoherentKet q = make_qubit(spec);
  return std::norm(q.inner(state)) / state.norm_squared();
}

double qubit_fidelity(const CoherentDensity& rho, const QubitSpec& spec) {
  if (rho.modes() != 1) throw ContractViolation("qubit fidelity needs a one-mode state");
  return fidelity_pure(rho, make_qubit(spec));
}

}  // namespace catlink
