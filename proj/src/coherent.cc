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

#include "catlink/coherent.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>

#include "catlink/errors.h"

namespace catlink {
namespace {

constexpr double kNormCheck = 1e-9;
// Cancellation below this fraction of the incoherent magnitude is rounding noise.
constexpr double kCancellationFloor = 256 * std::numeric_limits<double>::epsilon();

void check_mode(std::size_t mode, std::size_t modes) {
  if (mode >= modes) {
    throw ContractViolation("mode index " + std::to_string(mode) + " out of range for " +
                            std::to_string(modes) + " modes");
  }
}

bool amps_close(const Amplitudes& a, const Amplitudes& b) {
  for (std::size_t m = 0; m < a.size(); ++m) {
    if (std::abs(a[m] - b[m]) > kMergeTolerance) return false;
  }
  return true;
}

std::vector<CoherentTerm> merge_and_prune(std::vector<CoherentTerm> terms) {
  std::vector<CoherentTerm> out;
  out.reserve(terms.size());
  for (auto& t : terms) {
    auto it = std::find_if(out.begin(), out.end(),
                           [&](const CoherentTerm& o) { return amps_close(o.amps, t.amps); });
    if (it != out.end()) {
      it->coeff += t.coeff;
    } else {
      out.push_back(std::move(t));
    }
  }
  std::erase_if(out, [](const CoherentTerm& t) { return std::abs(t.coeff) < kPruneThreshold; });
  return out;
}

// log <b|a> = -|a - b|^2 / 2 + i Im(conj(b) a); this form avoids cancelling
// large |a|^2 and |b|^2 against each other.
Complex log_overlap_mode(Complex bra, Complex ket) {
  return {-0.5 * std::norm(ket - bra), (std::conj(bra) * ket).imag()};
}

Complex log_overlap(std::span<const Complex> bra, std::span<const Complex> ket) {
  Complex s = 0.0;
  for (std::size_t m = 0; m < bra.size(); ++m) s += log_overlap_mode(bra[m], ket[m]);
  return s;
}

Complex overlap_except(const Amplitudes& bra, const Amplitudes& ket, std::size_t skip) {
  Complex s = 0.0;
  for (std::size_t m = 0; m < bra.size(); ++m) {
    if (m != skip) s += log_overlap_mode(bra[m], ket[m]);
  }
  return std::exp(s);
}

// Sum of two amplitudes with cancellation residue below rounding set to zero,
// so destructive interference yields an exact vacuum.
Complex add_snapped(Complex x, Complex y) {
  const Complex s = x + y;
  const double floor = 4.0 * std::numeric_limits<double>::epsilon() * (std::abs(x) + std::abs(y));
  return std::abs(s) <= floor ? Complex(0.0) : s;
}

Amplitudes drop(const Amplitudes& amps, std::size_t mode) {
  Amplitudes out;
  out.reserve(amps.size() - 1);
  for (std::size_t m = 0; m < amps.size(); ++m) {
    if (m != mode) out.push_back(amps[m]);
  }
  return out;
}

void require_normalized(const CoherentKet& state) {
  const double n2 = state.norm_squared();
  if (std::abs(n2 - 1.0) > kNormCheck) {
    throw ContractViolation("state must be normalized (norm^2 = " + std::to_string(n2) + ")");
  }
}

// Number-basis amplitudes <n|alpha> for n = 0..n_max, accumulated in log space.
std::vector<Complex> number_amplitudes(Complex alpha, std::size_t n_max) {
  std::vector<Complex> out(n_max + 1, 0.0);
  const double r = std::abs(alpha);
  if (r == 0.0) {
    out[0] = 1.0;
    return out;
  }
  const double phi = std::arg(alpha);
  const double log_r = std::log(r);
  double log_mag = -0.5 * r * r;
  for (std::size_t n = 0; n <= n_max; ++n) {
    if (n > 0) log_mag += log_r - 0.5 * std::log(static_cast<double>(n));
    out[n] = std::polar(std::exp(log_mag), phi * static_cast<double>(n));
  }
  return out;
}

// Gram matrix of the terms with one mode excluded, row-major.
std::vector<Complex> rest_gram(const CoherentKet& state, std::size_t mode) {
  const auto& terms = state.terms();
  const std::size_t t = terms.size();
  std::vector<Complex> g(t * t);
  for (std::size_t j = 0; j < t; ++j) {
    for (std::size_t k = j; k < t; ++k) {
      const Complex v = overlap_except(terms[j].amps, terms[k].amps, mode);
      g[j * t + k] = v;
      g[k * t + j] = std::conj(v);
    }
  }
  return g;
}

struct QuadForm {
  double value;
  double scale;
};

// v^dag G v together with sum |v_j||v_k||G_jk| for cancellation checks.
QuadForm quad_form(const std::vector<Complex>& v, const std::vector<Complex>& g) {
  const std::size_t t = v.size();
  Complex s = 0.0;
  double scale = 0.0;
  for (std::size_t j = 0; j < t; ++j) {
    if (v[j] == 0.0) continue;
    for (std::size_t k = 0; k < t; ++k) {
      const Complex x = std::conj(v[j]) * v[k] * g[j * t + k];
      s += x;
      scale += std::abs(x);
    }
  }
  double value = s.real();
  if (value <= kCancellationFloor * scale) value = 0.0;
  return {value, scale};
}

}  // namespace

// ---------------------------------------------------------------------------
// CoherentKet

CoherentKet::CoherentKet(std::size_t modes) : modes_(modes) {}

CoherentKet::CoherentKet(std::size_t modes, std::vector<CoherentTerm> terms) : modes_(modes) {
  for (const auto& t : terms) {
    if (t.amps.size() != modes) {
      throw ContractViolation("term has " + std::to_string(t.amps.size()) +
                              " amplitudes, expected " + std::to_string(modes));
    }
    if (!std::isfinite(t.coeff.real()) || !std::isfinite(t.coeff.imag())) {
      throw ContractViolation("non-finite term coefficient");
    }
  }
  terms_ = merge_and_prune(std::move(terms));
}

CoherentKet CoherentKet::vacuum(std::size_t modes) {
  return CoherentKet(modes, {{1.0, Amplitudes(modes, 0.0)}});
}

CoherentKet CoherentKet::product(Amplitudes amps, Complex coeff) {
  const std::size_t m = amps.size();
  return CoherentKet(m, {{coeff, std::move(amps)}});
}

double CoherentKet::norm_squared() const {
  Complex s = 0.0;
  for (const auto& a : terms_) {
    for (const auto& b : terms_) {
      s += std::conj(a.coeff) * b.coeff * overlap(a.amps, b.amps);
    }
  }
  return s.real();
}

CoherentKet CoherentKet::normalized() const {
  const double n2 = norm_squared();
  if (!(n2 > 0.0)) throw ContractViolation("cannot normalize a null state");
  return scaled(1.0 / std::sqrt(n2));
}

Complex CoherentKet::inner(const CoherentKet& other) const {
  if (other.modes_ != modes_) throw ContractViolation("inner product of kets with different mode counts");
  Complex s = 0.0;
  for (const auto& a : terms_) {
    for (const auto& b : other.terms_) {
      s += std::conj(a.coeff) * b.coeff * overlap(a.amps, b.amps);
    }
  }
  return s;
}

CoherentKet CoherentKet::scaled(Complex factor) const {
  auto terms = terms_;
  for (auto& t : terms) t.coeff *= factor;
  return CoherentKet(modes_, std::move(terms));
}

CoherentKet CoherentKet::operator+(const CoherentKet& other) const {
  if (other.modes_ != modes_) throw ContractViolation("sum of kets with different mode counts");
  auto terms = terms_;
  terms.insert(terms.end(), other.terms_.begin(), other.terms_.end());
  return CoherentKet(modes_, std::move(terms));
}

CoherentKet CoherentKet::tensor(const CoherentKet& other) const {
  std::vector<CoherentTerm> terms;
  terms.reserve(terms_.size() * other.terms_.size());
  for (const auto& a : terms_) {
    for (const auto& b : other.terms_) {
      Amplitudes amps = a.amps;
      amps.insert(amps.end(), b.amps.begin(), b.amps.end());
      terms.push_back({a.coeff * b.coeff, std::move(amps)});
    }
  }
  return CoherentKet(modes_ + other.modes_, std::move(terms));
}

CoherentKet CoherentKet::append_vacuum(std::size_t count) const {
  auto terms = terms_;
  for (auto& t : terms) t.amps.resize(modes_ + count, 0.0);
  return CoherentKet(modes_ + count, std::move(terms));
}

CoherentKet CoherentKet::permuted(std::span<const std::size_t> order) const {
  if (order.size() != modes_) throw ContractViolation("permutation has wrong length");
  std::vector<bool> seen(modes_, false);
  for (auto o : order) {
    check_mode(o, modes_);
    if (seen[o]) throw ContractViolation("mode order is not a permutation");
    seen[o] = true;
  }
  auto terms = terms_;
  for (auto& t : terms) {
    Amplitudes amps(modes_);
    for (std::size_t i = 0; i < modes_; ++i) amps[i] = t.amps[order[i]];
    t.amps = std::move(amps);
  }
  return CoherentKet(modes_, std::move(terms));
}

CoherentKet CoherentKet::moved(std::size_t from, std::size_t to) const {
  check_mode(from, modes_);
  check_mode(to, modes_);
  std::vector<std::size_t> order(modes_);
  std::iota(order.begin(), order.end(), std::size_t{0});
  order.erase(order.begin() + static_cast<std::ptrdiff_t>(from));
  order.insert(order.begin() + static_cast<std::ptrdiff_t>(to), from);
  return permuted(order);
}

std::string CoherentKet::dump() const {
  std::ostringstream out;
  char buf[96];
  for (const auto& t : terms_) {
    std::snprintf(buf, sizeof buf, "%.17g %.17g :", t.coeff.real(), t.coeff.imag());
    out << buf;
    for (std::size_t m = 0; m < t.amps.size(); ++m) {
      std::snprintf(buf, sizeof buf, "%s %.17g %.17g", m == 0 ? "" : " ;", t.amps[m].real(),
                    t.amps[m].imag());
      out << buf;
    }
    out << '\n';
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// CoherentDensity

CoherentDensity::CoherentDensity(std::size_t modes, std::vector<Dyad> dyads) : modes_(modes) {
  for (auto& d : dyads) {
    if (d.ket.size() != modes || d.bra.size() != modes) {
      throw ContractViolation("dyad amplitude list has wrong length");
    }
    auto it = std::find_if(dyads_.begin(), dyads_.end(), [&](const Dyad& o) {
      return amps_close(o.ket, d.ket) && amps_close(o.bra, d.bra);
    });
    if (it != dyads_.end()) {
      it->weight += d.weight;
    } else {
      dyads_.push_back(std::move(d));
    }
  }
  std::erase_if(dyads_, [](const Dyad& d) { return std::abs(d.weight) < kPruneThreshold; });
}

CoherentDensity CoherentDensity::pure(const CoherentKet& ket) {
  std::vector<Dyad> dyads;
  for (const auto& a : ket.terms()) {
    for (const auto& b : ket.terms()) {
      dyads.push_back({a.coeff * std::conj(b.coeff), a.amps, b.amps});
    }
  }
  return CoherentDensity(ket.modes(), std::move(dyads));
}

CoherentDensity CoherentDensity::mixture(std::span<const double> weights,
                                         std::span<const CoherentKet> kets) {
  if (weights.size() != kets.size() || kets.empty()) {
    throw ContractViolation("mixture needs one weight per ket");
  }
  std::vector<Dyad> dyads;
  const std::size_t modes = kets.front().modes();
  for (std::size_t i = 0; i < kets.size(); ++i) {
    if (kets[i].modes() != modes) throw ContractViolation("mixture kets differ in mode count");
    if (weights[i] == 0.0) continue;
    const CoherentKet k = kets[i].normalized();
    for (const auto& a : k.terms()) {
      for (const auto& b : k.terms()) {
        dyads.push_back({weights[i] * a.coeff * std::conj(b.coeff), a.amps, b.amps});
      }
    }
  }
  return CoherentDensity(modes, std::move(dyads));
}

Complex CoherentDensity::trace() const {
  Complex s = 0.0;
  for (const auto& d : dyads_) s += d.weight * overlap(d.bra, d.ket);
  return s;
}

CoherentDensity CoherentDensity::normalized() const {
  const double tr = trace().real();
  if (!(tr > 0.0)) throw ContractViolation("cannot normalize a density with non-positive trace");
  auto dyads = dyads_;
  for (auto& d : dyads) d.weight /= tr;
  return CoherentDensity(modes_, std::move(dyads));
}

Complex CoherentDensity::expectation(const CoherentKet& psi) const {
  if (psi.modes() != modes_) throw ContractViolation("mode count mismatch in expectation");
  Complex s = 0.0;
  for (const auto& d : dyads_) {
    Complex left = 0.0;   // <psi|ket>
    Complex right = 0.0;  // <bra|psi>
    for (const auto& t : psi.terms()) {
      left += std::conj(t.coeff) * overlap(t.amps, d.ket);
      right += t.coeff * overlap(d.bra, t.amps);
    }
    s += d.weight * left * right;
  }
  return s;
}

Complex CoherentDensity::trace_product(const CoherentDensity& other) const {
  if (other.modes_ != modes_) throw ContractViolation("mode count mismatch in trace_product");
  Complex s = 0.0;
  for (const auto& a : dyads_) {
    for (const auto& b : other.dyads_) {
      s += a.weight * b.weight * overlap(a.bra, b.ket) * overlap(b.bra, a.ket);
    }
  }
  return s;
}

double CoherentDensity::hermiticity_defect() const {
  double worst = 0.0;
  for (const auto& d : dyads_) {
    auto it = std::find_if(dyads_.begin(), dyads_.end(), [&](const Dyad& o) {
      return amps_close(o.ket, d.bra) && amps_close(o.bra, d.ket);
    });
    const double defect = it == dyads_.end() ? std::abs(d.weight)
                                             : std::abs(it->weight - std::conj(d.weight));
    worst = std::max(worst, defect);
  }
  return worst;
}

// ---------------------------------------------------------------------------
// Operations

Complex overlap(std::span<const Complex> bra, std::span<const Complex> ket) {
  if (bra.size() != ket.size()) throw ContractViolation("overlap of amplitude lists with different lengths");
  return std::exp(log_overlap(bra, ket));
}

Complex overlap(Complex bra, Complex ket) { return std::exp(log_overlap_mode(bra, ket)); }

CoherentKet displace(const CoherentKet& state, std::size_t mode, Complex gamma) {
  check_mode(mode, state.modes());
  auto terms = state.terms();
  for (auto& t : terms) {
    const Complex a = t.amps[mode];
    t.coeff *= std::exp(0.5 * (gamma * std::conj(a) - std::conj(gamma) * a));
    t.amps[mode] = add_snapped(a, gamma);
  }
  return CoherentKet(state.modes(), std::move(terms));
}

CoherentKet beam_splitter(const CoherentKet& state, std::size_t i, std::size_t j, double theta) {
  check_mode(i, state.modes());
  check_mode(j, state.modes());
  if (i == j) throw ContractViolation("beam splitter needs two distinct modes");
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  auto terms = state.terms();
  for (auto& t : terms) {
    const Complex ai = t.amps[i];
    const Complex aj = t.amps[j];
    t.amps[i] = add_snapped(c * ai, -s * aj);
    t.amps[j] = add_snapped(c * aj, s * ai);
  }
  return CoherentKet(state.modes(), std::move(terms));
}

CoherentKet ibeam_splitter(const CoherentKet& state, std::size_t i, std::size_t j, double theta) {
  check_mode(i, state.modes());
  check_mode(j, state.modes());
  if (i == j) throw ContractViolation("beam splitter needs two distinct modes");
  const double c = std::cos(theta);
  const Complex is = Complex(0.0, std::sin(theta));
  auto terms = state.terms();
  for (auto& t : terms) {
    const Complex ai = t.amps[i];
    const Complex aj = t.amps[j];
    t.amps[i] = add_snapped(c * ai, is * aj);
    t.amps[j] = add_snapped(c * aj, is * ai);
  }
  return CoherentKet(state.modes(), std::move(terms));
}

CoherentKet phase_rotation(const CoherentKet& state, std::size_t mode, double phi) {
  check_mode(mode, state.modes());
  const Complex rot = std::polar(1.0, phi);
  auto terms = state.terms();
  for (auto& t : terms) t.amps[mode] *= rot;
  return CoherentKet(state.modes(), std::move(terms));
}

NumberAmplitude number_amplitude_checked(Complex alpha, std::size_t n) {
  const double r2 = std::norm(alpha);
  if (r2 == 0.0) return {n == 0 ? Complex(1.0) : Complex(0.0), false};
  if (n <= 20) {
    Complex v = std::exp(-0.5 * r2);
    for (std::size_t k = 1; k <= n; ++k) v *= alpha / std::sqrt(static_cast<double>(k));
    return {v, false};
  }
  const double nd = static_cast<double>(n);
  const double log_fact = std::lgamma(nd + 1.0);
  if (!std::isfinite(log_fact)) return {0.0, true};
  const double log_mag = -0.5 * r2 + nd * std::log(std::sqrt(r2)) - 0.5 * log_fact;
  if (log_mag < -745.0) return {0.0, true};
  const double phase = std::fmod(nd * std::arg(alpha), 2.0 * std::numbers::pi);
  return {std::polar(std::exp(log_mag), phase), false};
}

Complex number_amplitude(Complex alpha, std::size_t n) {
  return number_amplitude_checked(alpha, n).value;
}

std::size_t default_count_cutoff(const CoherentKet& state, std::size_t mode) {
  check_mode(mode, state.modes());
  double m = 0.0;
  for (const auto& t : state.terms()) m = std::max(m, std::norm(t.amps[mode]));
  return std::max<std::size_t>(20, static_cast<std::size_t>(std::ceil(m + 10.0 * std::sqrt(m) + 10.0)));
}

PhotonDistribution photon_count_distribution(const CoherentKet& state, std::size_t mode,
                                             std::size_t n_max, double tail_bound) {
  check_mode(mode, state.modes());
  require_normalized(state);
  const auto& terms = state.terms();
  const std::size_t t = terms.size();
  const auto g = rest_gram(state, mode);
  std::vector<std::vector<Complex>> amps(t);
  for (std::size_t k = 0; k < t; ++k) amps[k] = number_amplitudes(terms[k].amps[mode], n_max);

  PhotonDistribution out;
  out.probabilities.resize(n_max + 1);
  std::vector<Complex> v(t);
  double total = 0.0;
  for (std::size_t n = 0; n <= n_max; ++n) {
    for (std::size_t k = 0; k < t; ++k) v[k] = terms[k].coeff * amps[k][n];
    out.probabilities[n] = quad_form(v, g).value;
    total += out.probabilities[n];
  }
  out.tail = std::max(0.0, 1.0 - total);
  if (out.tail > tail_bound) {
    throw TruncationError("photon cutoff " + std::to_string(n_max) + " leaves tail " +
                          std::to_string(out.tail));
  }
  return out;
}

ProjectionResult project_photon_count(const CoherentKet& state, std::size_t mode, std::size_t n) {
  check_mode(mode, state.modes());
  require_normalized(state);
  const auto& terms = state.terms();
  const std::size_t t = terms.size();
  std::vector<Complex> v(t);
  for (std::size_t k = 0; k < t; ++k) v[k] = terms[k].coeff * number_amplitude(terms[k].amps[mode], n);
  const double p = quad_form(v, rest_gram(state, mode)).value;

  ProjectionResult out;
  out.state = CoherentKet(state.modes() - 1);
  if (!(p > 0.0)) {
    out.vanished = true;
    return out;
  }
  const double inv = 1.0 / std::sqrt(p);
  std::vector<CoherentTerm> collapsed;
  collapsed.reserve(t);
  for (std::size_t k = 0; k < t; ++k) {
    if (v[k] == 0.0) continue;
    collapsed.push_back({v[k] * inv, drop(terms[k].amps, mode)});
  }
  out.probability = p;
  out.state = CoherentKet(state.modes() - 1, std::move(collapsed));
  if (out.state.empty()) out.vanished = true;
  return out;
}

ProjectionResult project_parity(const CoherentKet& state, std::size_t mode, bool odd) {
  check_mode(mode, state.modes());
  require_normalized(state);
  std::vector<CoherentTerm> terms;
  for (const auto& t : state.terms()) {
    terms.push_back({0.5 * t.coeff, t.amps});
    Amplitudes flipped = t.amps;
    flipped[mode] = -flipped[mode];
    terms.push_back({(odd ? -0.5 : 0.5) * t.coeff, std::move(flipped)});
  }
  CoherentKet projected(state.modes(), std::move(terms));
  ProjectionResult out;
  const double p = projected.empty() ? 0.0 : projected.norm_squared();
  if (!(p > kCancellationFloor)) {
    out.vanished = true;
    out.state = CoherentKet(state.modes());
    return out;
  }
  out.probability = p;
  out.state = projected.scaled(1.0 / std::sqrt(p));
  return out;
}

ParityProbabilities parity_probabilities(const CoherentKet& state, std::size_t mode) {
  check_mode(mode, state.modes());
  Complex parity = 0.0;
  for (const auto& a : state.terms()) {
    for (const auto& b : state.terms()) {
      Amplitudes flipped = b.amps;
      flipped[mode] = -flipped[mode];
      parity += std::conj(a.coeff) * b.coeff * overlap(a.amps, flipped);
    }
  }
  const double expval = parity.real() / state.norm_squared();
  return {0.5 * (1.0 + expval), 0.5 * (1.0 - expval)};
}

double mean_photon_number(const CoherentKet& state, std::size_t mode) {
  check_mode(mode, state.modes());
  Complex s = 0.0;
  for (const auto& a : state.terms()) {
    for (const auto& b : state.terms()) {
      s += std::conj(a.coeff) * b.coeff * overlap(a.amps, b.amps) * std::conj(a.amps[mode]) *
           b.amps[mode];
    }
  }
  return s.real() / state.norm_squared();
}

double mean_photon_number(const CoherentDensity& rho, std::size_t mode) {
  check_mode(mode, rho.modes());
  Complex s = 0.0;
  for (const auto& d : rho.dyads()) {
    s += d.weight * overlap(d.bra, d.ket) * std::conj(d.bra[mode]) * d.ket[mode];
  }
  return s.real() / rho.trace().real();
}

CoherentDensity trace_out(const CoherentKet& state, std::size_t mode) {
  check_mode(mode, state.modes());
  std::vector<Dyad> dyads;
  const auto& terms = state.terms();
  dyads.reserve(terms.size() * terms.size());
  for (const auto& j : terms) {
    for (const auto& k : terms) {
      const Complex env = overlap(k.amps[mode], j.amps[mode]);
      dyads.push_back({j.coeff * std::conj(k.coeff) * env, drop(j.amps, mode), drop(k.amps, mode)});
    }
  }
  return CoherentDensity(state.modes() - 1, std::move(dyads));
}

CoherentDensity trace_out(const CoherentDensity& rho, std::size_t mode) {
  check_mode(mode, rho.modes());
  std::vector<Dyad> dyads;
  dyads.reserve(rho.dyads().size());
  for (const auto& d : rho.dyads()) {
    dyads.push_back({d.weight * overlap(d.bra[mode], d.ket[mode]), drop(d.ket, mode), drop(d.bra, mode)});
  }
  return CoherentDensity(rho.modes() - 1, std::move(dyads));
}

double fidelity_pure(const CoherentDensity& rho, const CoherentKet& psi) {
  if (rho.modes() != psi.modes()) throw ContractViolation("fidelity of states with different mode counts");
  return rho.expectation(psi).real() / (rho.trace().real() * psi.norm_squared());
}

std::size_t sample_photon_count(const CoherentKet& state, std::size_t mode, Rng& rng) {
  constexpr double kSampleTail = 1e-12;
  const std::size_t first = default_count_cutoff(state, mode);
  std::size_t n_max = first;
  PhotonDistribution dist = photon_count_distribution(state, mode, n_max, 1.0);
  while (dist.tail >= kSampleTail) {
    if (n_max >= 8 * first) {
      throw TruncationError("could not reach sampling tail 1e-12 (tail " + std::to_string(dist.tail) + ")");
    }
    n_max *= 2;
    dist = photon_count_distribution(state, mode, n_max, 1.0);
  }
  const double total = std::accumulate(dist.probabilities.begin(), dist.probabilities.end(), 0.0);
  const double u = std::uniform_real_distribution<double>(0.0, total)(rng);
  double acc = 0.0;
  for (std::size_t n = 0; n <= n_max; ++n) {
    acc += dist.probabilities[n];
    if (u < acc) return n;
  }
  // u landed in rounding slack at the top; return the last populated count.
  for (std::size_t n = n_max + 1; n-- > 0;) {
    if (dist.probabilities[n] > 0.0) return n;
  }
  return 0;
}

Measurement measure_photon_count(const CoherentKet& state, std::size_t mode, Rng& rng) {
  const std::size_t n = sample_photon_count(state, mode, rng);
  auto proj = project_photon_count(state, mode, n);
  return {n, proj.probability, std::move(proj.state)};
}

}  // namespace catlink
