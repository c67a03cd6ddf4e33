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

#ifndef CATLINK_COHERENT_H
#define CATLINK_COHERENT_H

// Exact algebra for finite superpositions of multimode coherent states.
//
// A CoherentKet is sum_k c_k |a_k1>|a_k2>...|a_kM>. Every passive linear-optics
// operation and every displacement maps coherent products to coherent
// products, so the representation is closed under all of them and inner
// products reduce to closed-form overlaps. Photon counting is evaluated by
// expanding only the measured mode in the number basis.

#include <complex>
#include <cstddef>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace catlink {

using Complex = std::complex<double>;
using Amplitudes = std::vector<Complex>;
using Rng = std::mt19937_64;

/// Terms with |coeff| below this are dropped after every operation.
inline constexpr double kPruneThreshold = 1e-15;
/// Amplitude vectors closer than this (max-norm) are merged.
inline constexpr double kMergeTolerance = 1e-13;
/// Default allowed probability mass beyond the enumerated photon range.
inline constexpr double kDefaultTailBound = 1e-10;

struct CoherentTerm {
  Complex coeff;
  Amplitudes amps;
};

/// Pure state of `modes` optical modes as a weighted sum of coherent products.
/// Values are immutable; every operation returns a new ket.
class CoherentKet {
 public:
  CoherentKet() = default;
  explicit CoherentKet(std::size_t modes);
  CoherentKet(std::size_t modes, std::vector<CoherentTerm> terms);

  static CoherentKet vacuum(std::size_t modes);
  static CoherentKet product(Amplitudes amps, Complex coeff = 1.0);

  std::size_t modes() const { return modes_; }
  const std::vector<CoherentTerm>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  /// Squared norm through the Gram matrix of term overlaps.
  double norm_squared() const;
  CoherentKet normalized() const;
  /// <this|other>
  Complex inner(const CoherentKet& other) const;

  CoherentKet scaled(Complex factor) const;
  CoherentKet operator+(const CoherentKet& other) const;
  /// this (x) other, modes of `other` appended after ours.
  CoherentKet tensor(const CoherentKet& other) const;
  CoherentKet append_vacuum(std::size_t count = 1) const;
  /// New mode i is old mode order[i]; `order` must be a permutation.
  CoherentKet permuted(std::span<const std::size_t> order) const;
  /// Moves mode `from` to position `to`, shifting the modes in between.
  CoherentKet moved(std::size_t from, std::size_t to) const;

  /// One term per line: `coeff_re coeff_im : a1_re a1_im ; a2_re a2_im ; ...`
  std::string dump() const;

 private:
  std::size_t modes_ = 0;
  std::vector<CoherentTerm> terms_;
};

/// One dyad weight * |ket><bra| of a mixed state.
struct Dyad {
  Complex weight;
  Amplitudes ket;
  Amplitudes bra;
};

/// Mixed state as a weighted sum of coherent dyads. Hermiticity is carried
/// explicitly: the conjugate of every off-diagonal dyad is stored as well.
class CoherentDensity {
 public:
  CoherentDensity() = default;
  CoherentDensity(std::size_t modes, std::vector<Dyad> dyads);

  static CoherentDensity pure(const CoherentKet& ket);
  /// sum_i weights[i] |kets[i]><kets[i]| with kets normalized first.
  static CoherentDensity mixture(std::span<const double> weights,
                                 std::span<const CoherentKet> kets);

  std::size_t modes() const { return modes_; }
  const std::vector<Dyad>& dyads() const { return dyads_; }

  Complex trace() const;
  CoherentDensity normalized() const;
  /// <psi|rho|psi> without normalizing either argument.
  Complex expectation(const CoherentKet& psi) const;
  /// tr(this * other)
  Complex trace_product(const CoherentDensity& other) const;
  /// Largest |w - conj(w')| over dyad pairs (b,a) matched to (a,b).
  double hermiticity_defect() const;

 private:
  std::size_t modes_ = 0;
  std::vector<Dyad> dyads_;
};

/// Multimode overlap <bra|ket> = prod exp(-|a|^2/2 - |b|^2/2 + conj(b) a).
Complex overlap(std::span<const Complex> bra, std::span<const Complex> ket);
Complex overlap(Complex bra, Complex ket);

/// D(gamma) on one mode: |a> -> exp((gamma conj(a) - conj(gamma) a)/2) |a+gamma>.
CoherentKet displace(const CoherentKet& state, std::size_t mode, Complex gamma);

/// exp(theta (a_i a_j^dag - a_i^dag a_j)); transmissivity cos^2(theta).
/// (a_i, a_j) -> (cos a_i - sin a_j, cos a_j + sin a_i).
CoherentKet beam_splitter(const CoherentKet& state, std::size_t i, std::size_t j,
                          double theta);

/// exp(i theta (a_i a_j^dag + a_i^dag a_j)).
/// (a_i, a_j) -> (cos a_i + i sin a_j, cos a_j + i sin a_i).
CoherentKet ibeam_splitter(const CoherentKet& state, std::size_t i, std::size_t j,
                           double theta);

/// exp(i phi n) on one mode: a -> exp(i phi) a.
CoherentKet phase_rotation(const CoherentKet& state, std::size_t mode, double phi);

struct NumberAmplitude {
  Complex value;
  bool saturated = false;  // magnitude underflowed and was set to 0
};

/// <n|alpha> = exp(-|alpha|^2/2) alpha^n / sqrt(n!).
Complex number_amplitude(Complex alpha, std::size_t n);
NumberAmplitude number_amplitude_checked(Complex alpha, std::size_t n);

/// Photon-number cutoff max(20, ceil(m + 10 sqrt(m) + 10)), m = max |a_mode|^2.
std::size_t default_count_cutoff(const CoherentKet& state, std::size_t mode);

struct PhotonDistribution {
  std::vector<double> probabilities;  // P(0..nMax)
  double tail = 0.0;                  // 1 - sum, clamped at 0
};

/// Exact counting statistics of one mode. Throws TruncationError when the
/// missing mass exceeds `tail_bound`; ContractViolation when not normalized.
PhotonDistribution photon_count_distribution(const CoherentKet& state,
                                             std::size_t mode, std::size_t n_max,
                                             double tail_bound = kDefaultTailBound);

struct ProjectionResult {
  double probability = 0.0;
  CoherentKet state;     // normalized; empty when the outcome is impossible
  bool vanished = false;
};

/// Counts n photons in `mode`; the mode is removed from the returned state.
ProjectionResult project_photon_count(const CoherentKet& state, std::size_t mode,
                                      std::size_t n);

/// Parity projection (1 +/- Pi)/2 on `mode`; the mode is kept.
ProjectionResult project_parity(const CoherentKet& state, std::size_t mode,
                                bool odd);

struct ParityProbabilities {
  double even = 0.0;
  double odd = 0.0;
};

/// Closed form through <b|Pi|a> = <b|-a>.
ParityProbabilities parity_probabilities(const CoherentKet& state, std::size_t mode);

/// Mean photon number of one mode.
double mean_photon_number(const CoherentKet& state, std::size_t mode);
double mean_photon_number(const CoherentDensity& rho, std::size_t mode);

/// rho = sum_jk c_j conj(c_k) <b_k|b_j>_mode |rest_j><rest_k|
CoherentDensity trace_out(const CoherentKet& state, std::size_t mode);
CoherentDensity trace_out(const CoherentDensity& rho, std::size_t mode);

/// <psi|rho|psi> / (tr rho <psi|psi>).
double fidelity_pure(const CoherentDensity& rho, const CoherentKet& psi);

/// Draws a photon count with a cutoff grown until the tail is below 1e-12.
std::size_t sample_photon_count(const CoherentKet& state, std::size_t mode, Rng& rng);

/// Draws a count and collapses onto it in one step.
struct Measurement {
  std::size_t count = 0;
  double probability = 0.0;
  CoherentKet state;
};
Measurement measure_photon_count(const CoherentKet& state, std::size_t mode, Rng& rng);

}  // namespace catlink

#endif  // CATLINK_COHERENT_H
