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

#ifndef CATLINK_FOCK_H
#define CATLINK_FOCK_H

// Truncated number-basis engine used to cross-check the coherent algebra.
//
// Basis index of |n_0, n_1, ..., n_{M-1}> is sum_m n_m (N+1)^(M-1-m): mode 0
// is the most significant digit. Supported envelope is M <= 3, N <= 80.

#include <Eigen/Dense>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "catlink/coherent.h"

namespace catlink::fock {

using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

struct CutoffPolicy {
  double tail_tolerance = 1e-12;
  /// N = ceil(m + 10 sqrt(m) + 20) for m = max |alpha|^2.
  std::size_t cutoff_for(double max_abs_alpha_sq) const;
};

/// Poisson mass beyond n = N for amplitude alpha.
double coherent_tail(Complex alpha, std::size_t cutoff);

class FockVector {
 public:
  FockVector(std::size_t cutoff, std::size_t modes);
  FockVector(std::size_t cutoff, std::size_t modes, Vector data);

  static FockVector basis(std::size_t cutoff, std::span<const std::size_t> counts);

  std::size_t cutoff() const { return cutoff_; }
  std::size_t modes() const { return modes_; }
  std::size_t dim_per_mode() const { return cutoff_ + 1; }
  const Vector& data() const { return data_; }
  Vector& data() { return data_; }

  double norm_squared() const { return data_.squaredNorm(); }
  FockVector normalized() const;
  /// <this|other>
  Complex inner(const FockVector& other) const;
  FockVector tensor(const FockVector& other) const;

 private:
  std::size_t cutoff_;
  std::size_t modes_;
  Vector data_;
};

class FockDensity {
 public:
  FockDensity(std::size_t cutoff, std::size_t modes, Matrix data);
  static FockDensity pure(const FockVector& v);

  std::size_t cutoff() const { return cutoff_; }
  std::size_t modes() const { return modes_; }
  const Matrix& data() const { return data_; }

  Complex trace() const { return data_.trace(); }
  double hermiticity_defect() const;
  /// <psi|rho|psi>
  Complex expectation(const FockVector& psi) const;
  /// Ascending eigenvalues and matching eigenvectors of the Hermitian part.
  Eigen::SelfAdjointEigenSolver<Matrix> eigen() const;

 private:
  std::size_t cutoff_;
  std::size_t modes_;
  Matrix data_;
};

struct TruncatedState {
  FockVector state;
  double tail = 0.0;  // worst single-mode coherent tail mass
};

/// Number-basis expansion of |alpha> cut at N and renormalized.
TruncatedState coherent_fock(Complex alpha, std::size_t cutoff);

/// exp(gamma a^dag - conj(gamma) a) built at a padded cutoff and cropped to N.
Matrix displacement_matrix(Complex gamma, std::size_t cutoff);

enum class SplitterVariant { Standard, IType };

/// Two-mode unitary on (N+1)^2, first mode most significant. Block diagonal in
/// total photon number; each block is the exponential of its generator block.
Matrix beam_splitter_matrix(double theta, std::size_t cutoff, SplitterVariant variant);

FockVector apply_single_mode(const FockVector& v, std::size_t mode, const Matrix& u);
FockVector apply_beam_splitter(const FockVector& v, std::size_t i, std::size_t j,
                               double theta, SplitterVariant variant);
FockVector apply_phase_rotation(const FockVector& v, std::size_t mode, double phi);

struct Projection {
  double probability = 0.0;
  FockVector state;  // normalized remaining modes; zero vector if probability is 0
};

/// Counts n photons in `mode` and removes it.
Projection number_projection(const FockVector& v, std::size_t mode, std::size_t n);

/// Counting statistics of one mode, P(0..N).
std::vector<double> count_distribution(const FockVector& v, std::size_t mode);

FockDensity reduced_density(const FockVector& v, std::size_t traced_mode);
FockDensity partial_trace(const FockDensity& rho, std::size_t mode);

/// Exact sum of coherent products, each expanded to the cutoff without renormalization.
TruncatedState from_coherent_ket(const CoherentKet& ket, const CutoffPolicy& policy = {});
TruncatedState from_coherent_ket(const CoherentKet& ket, std::size_t cutoff);

/// Least-squares coefficients c minimizing |v - sum_k c_k basis_k|, with the residual norm.
struct SpanFit {
  std::vector<Complex> coefficients;
  double residual = 0.0;
};
SpanFit span_coefficients(const FockVector& v, std::span<const FockVector> basis);

}  // namespace catlink::fock

#endif  // CATLINK_FOCK_H
