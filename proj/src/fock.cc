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

#include "catlink/fock.h"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>

#include "catlink/errors.h"

namespace catlink::fock {
namespace {

constexpr std::size_t kMaxModes = 3;
constexpr std::size_t kMaxCutoff = 200;

std::size_t ipow(std::size_t base, std::size_t exp) {
  std::size_t r = 1;
  for (std::size_t k = 0; k < exp; ++k) r *= base;
  return r;
}

void check_shape(std::size_t cutoff, std::size_t modes) {
  if (modes == 0 || modes > kMaxModes) {
    throw ContractViolation("fock oracle supports 1.." + std::to_string(kMaxModes) + " modes");
  }
  if (cutoff == 0 || cutoff > kMaxCutoff) {
    throw ContractViolation("fock cutoff out of supported range");
  }
}

void check_mode(std::size_t mode, std::size_t modes) {
  if (mode >= modes) throw ContractViolation("fock mode index out of range");
}

// Full index from an index over the remaining modes plus the digit of `mode`.
std::size_t insert_digit(std::size_t rest, std::size_t digit, std::size_t mode, std::size_t modes,
                         std::size_t d) {
  const std::size_t low_size = ipow(d, modes - 1 - mode);
  const std::size_t hi = rest / low_size;
  const std::size_t lo = rest % low_size;
  return (hi * d + digit) * low_size + lo;
}

// Raw (not renormalized) <n|alpha> for n = 0..N.
Vector coherent_coefficients(Complex alpha, std::size_t cutoff) {
  Vector v(cutoff + 1);
  for (std::size_t n = 0; n <= cutoff; ++n) v(n) = number_amplitude(alpha, n);
  return v;
}

struct Block {
  std::vector<std::size_t> first;  // digit of mode i for each block row
  Matrix u;
};

std::vector<Block> splitter_blocks(double theta, std::size_t cutoff, SplitterVariant variant) {
  std::vector<Block> blocks;
  blocks.reserve(2 * cutoff + 1);
  for (std::size_t k = 0; k <= 2 * cutoff; ++k) {
    Block b;
    const std::size_t lo = k > cutoff ? k - cutoff : 0;
    const std::size_t hi = std::min(k, cutoff);
    for (std::size_t ni = lo; ni <= hi; ++ni) b.first.push_back(ni);
    const auto size = static_cast<Eigen::Index>(b.first.size());
    Matrix g = Matrix::Zero(size, size);
    for (Eigen::Index r = 0; r < size; ++r) {
      const double ni = static_cast<double>(b.first[r]);
      const double nj = static_cast<double>(k - b.first[r]);
      // a_i a_j^dag: (ni, nj) -> (ni - 1, nj + 1), row r - 1.
      if (r > 0) {
        const double amp = std::sqrt(ni) * std::sqrt(nj + 1.0);
        g(r - 1, r) += variant == SplitterVariant::Standard ? Complex(theta * amp)
                                                            : Complex(0.0, theta * amp);
      }
      // a_i^dag a_j: (ni, nj) -> (ni + 1, nj - 1), row r + 1.
      if (r + 1 < size) {
        const double amp = std::sqrt(ni + 1.0) * std::sqrt(nj);
        g(r + 1, r) += variant == SplitterVariant::Standard ? Complex(-theta * amp)
                                                            : Complex(0.0, theta * amp);
      }
    }
    b.u = g.exp();
    blocks.push_back(std::move(b));
  }
  return blocks;
}

}  // namespace

std::size_t CutoffPolicy::cutoff_for(double max_abs_alpha_sq) const {
  const double m = std::max(0.0, max_abs_alpha_sq);
  return static_cast<std::size_t>(std::ceil(m + 10.0 * std::sqrt(m) + 20.0));
}

double coherent_tail(Complex alpha, std::size_t cutoff) {
  const double m = std::norm(alpha);
  if (m == 0.0) return 0.0;
  const double log_m = std::log(m);
  double sum = 0.0;
  for (std::size_t n = cutoff + 1;; ++n) {
    const double nd = static_cast<double>(n);
    const double term = std::exp(-m + nd * log_m - std::lgamma(nd + 1.0));
    sum += term;
    if (nd > m && term < 1e-18 * std::max(sum, 1e-300)) break;
    if (nd > m + 50.0 * std::sqrt(m) + 200.0) break;
  }
  return sum;
}

// ---------------------------------------------------------------------------

FockVector::FockVector(std::size_t cutoff, std::size_t modes)
    : cutoff_(cutoff), modes_(modes) {
  check_shape(cutoff, modes);
  data_ = Vector::Zero(static_cast<Eigen::Index>(ipow(cutoff + 1, modes)));
}

FockVector::FockVector(std::size_t cutoff, std::size_t modes, Vector data)
    : cutoff_(cutoff), modes_(modes), data_(std::move(data)) {
  check_shape(cutoff, modes);
  if (static_cast<std::size_t>(data_.size()) != ipow(cutoff + 1, modes)) {
    throw ContractViolation("fock data length does not match cutoff and modes");
  }
}

FockVector FockVector::basis(std::size_t cutoff, std::span<const std::size_t> counts) {
  FockVector v(cutoff, counts.size());
  std::size_t idx = 0;
  for (auto n : counts) {
    if (n > cutoff) throw ContractViolation("basis count exceeds cutoff");
    idx = idx * (cutoff + 1) + n;
  }
  v.data_(static_cast<Eigen::Index>(idx)) = 1.0;
  return v;
}

FockVector FockVector::normalized() const {
  const double n = data_.norm();
  if (!(n > 0.0)) throw ContractViolation("cannot normalize a zero fock vector");
  return FockVector(cutoff_, modes_, data_ / n);
}

Complex FockVector::inner(const FockVector& other) const {
  if (other.cutoff_ != cutoff_ || other.modes_ != modes_) {
    throw ContractViolation("fock inner product of mismatched shapes");
  }
  return data_.dot(other.data_);
}

FockVector FockVector::tensor(const FockVector& other) const {
  if (other.cutoff_ != cutoff_) throw ContractViolation("fock tensor of mismatched cutoffs");
  Vector out(data_.size() * other.data_.size());
  for (Eigen::Index a = 0; a < data_.size(); ++a) {
    out.segment(a * other.data_.size(), other.data_.size()) = data_(a) * other.data_;
  }
  return FockVector(cutoff_, modes_ + other.modes_, std::move(out));
}

FockDensity::FockDensity(std::size_t cutoff, std::size_t modes, Matrix data)
    : cutoff_(cutoff), modes_(modes), data_(std::move(data)) {
  const auto dim = static_cast<Eigen::Index>(ipow(cutoff + 1, modes));
  if (data_.rows() != dim || data_.cols() != dim) {
    throw ContractViolation("fock density has wrong dimension");
  }
}

FockDensity FockDensity::pure(const FockVector& v) {
  return FockDensity(v.cutoff(), v.modes(), v.data() * v.data().adjoint());
}

double FockDensity::hermiticity_defect() const {
  return (data_ - data_.adjoint()).cwiseAbs().maxCoeff();
}

Complex FockDensity::expectation(const FockVector& psi) const {
  if (psi.cutoff() != cutoff_ || psi.modes() != modes_) {
    throw ContractViolation("fock expectation of mismatched shapes");
  }
  return psi.data().dot(data_ * psi.data());
}

Eigen::SelfAdjointEigenSolver<Matrix> FockDensity::eigen() const {
  const Matrix h = 0.5 * (data_ + data_.adjoint());
  return Eigen::SelfAdjointEigenSolver<Matrix>(h);
}

// ---------------------------------------------------------------------------

TruncatedState coherent_fock(Complex alpha, std::size_t cutoff) {
  Vector v = coherent_coefficients(alpha, cutoff);
  v /= v.norm();
  return {FockVector(cutoff, 1, std::move(v)), coherent_tail(alpha, cutoff)};
}

Matrix displacement_matrix(Complex gamma, std::size_t cutoff) {
  const double r = std::abs(gamma);
  const auto pad = static_cast<std::size_t>(std::ceil(r * r + 10.0 * r + 20.0));
  const auto big = static_cast<Eigen::Index>(cutoff + pad + 1);
  Matrix g = Matrix::Zero(big, big);
  for (Eigen::Index n = 0; n + 1 < big; ++n) {
    const double s = std::sqrt(static_cast<double>(n + 1));
    g(n + 1, n) = gamma * s;             // gamma a^dag
    g(n, n + 1) = -std::conj(gamma) * s;  // -conj(gamma) a
  }
  const Matrix u = g.exp();
  const auto d = static_cast<Eigen::Index>(cutoff + 1);
  return u.topLeftCorner(d, d);
}

Matrix beam_splitter_matrix(double theta, std::size_t cutoff, SplitterVariant variant) {
  const std::size_t d = cutoff + 1;
  const auto dim = static_cast<Eigen::Index>(d * d);
  Matrix out = Matrix::Zero(dim, dim);
  for (std::size_t k = 0; const auto& b : splitter_blocks(theta, cutoff, variant)) {
    for (std::size_t r = 0; r < b.first.size(); ++r) {
      for (std::size_t c = 0; c < b.first.size(); ++c) {
        const auto row = static_cast<Eigen::Index>(b.first[r] * d + (k - b.first[r]));
        const auto col = static_cast<Eigen::Index>(b.first[c] * d + (k - b.first[c]));
        out(row, col) = b.u(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
      }
    }
    ++k;
  }
  return out;
}

FockVector apply_single_mode(const FockVector& v, std::size_t mode, const Matrix& u) {
  check_mode(mode, v.modes());
  const std::size_t d = v.dim_per_mode();
  if (static_cast<std::size_t>(u.rows()) != d || static_cast<std::size_t>(u.cols()) != d) {
    throw ContractViolation("single-mode operator has wrong dimension");
  }
  const std::size_t stride = ipow(d, v.modes() - 1 - mode);
  const std::size_t outer = ipow(d, mode);
  Vector out = Vector::Zero(v.data().size());
  Vector slice(static_cast<Eigen::Index>(d));
  for (std::size_t o = 0; o < outer; ++o) {
    for (std::size_t in = 0; in < stride; ++in) {
      const std::size_t base = o * d * stride + in;
      for (std::size_t n = 0; n < d; ++n) slice(static_cast<Eigen::Index>(n)) = v.data()(static_cast<Eigen::Index>(base + n * stride));
      const Vector res = u * slice;
      for (std::size_t n = 0; n < d; ++n) out(static_cast<Eigen::Index>(base + n * stride)) = res(static_cast<Eigen::Index>(n));
    }
  }
  return FockVector(v.cutoff(), v.modes(), std::move(out));
}

FockVector apply_beam_splitter(const FockVector& v, std::size_t i, std::size_t j, double theta,
                               SplitterVariant variant) {
  check_mode(i, v.modes());
  check_mode(j, v.modes());
  if (i == j) throw ContractViolation("beam splitter needs two distinct modes");
  const std::size_t d = v.dim_per_mode();
  const std::size_t m = v.modes();
  const std::size_t si = ipow(d, m - 1 - i);
  const std::size_t sj = ipow(d, m - 1 - j);
  // Offsets of every configuration of the spectator modes.
  std::vector<std::size_t> bases;
  const std::size_t total = ipow(d, m);
  for (std::size_t idx = 0; idx < total; ++idx) {
    if ((idx / si) % d == 0 && (idx / sj) % d == 0) bases.push_back(idx);
  }
  const auto blocks = splitter_blocks(theta, v.cutoff(), variant);
  Vector out = Vector::Zero(v.data().size());
  for (std::size_t base : bases) {
    for (std::size_t k = 0; k < blocks.size(); ++k) {
      const auto& b = blocks[k];
      const auto size = static_cast<Eigen::Index>(b.first.size());
      Vector x(size);
      for (Eigen::Index r = 0; r < size; ++r) {
        x(r) = v.data()(static_cast<Eigen::Index>(base + b.first[r] * si + (k - b.first[r]) * sj));
      }
      const Vector y = b.u * x;
      for (Eigen::Index r = 0; r < size; ++r) {
        out(static_cast<Eigen::Index>(base + b.first[r] * si + (k - b.first[r]) * sj)) = y(r);
      }
    }
  }
  return FockVector(v.cutoff(), m, std::move(out));
}

FockVector apply_phase_rotation(const FockVector& v, std::size_t mode, double phi) {
  const std::size_t d = v.dim_per_mode();
  Matrix u = Matrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (std::size_t n = 0; n < d; ++n) {
    u(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n)) = std::polar(1.0, phi * static_cast<double>(n));
  }
  return apply_single_mode(v, mode, u);
}

Projection number_projection(const FockVector& v, std::size_t mode, std::size_t n) {
  check_mode(mode, v.modes());
  if (v.modes() < 2) throw ContractViolation("number_projection needs a spectator mode");
  if (n > v.cutoff()) throw ContractViolation("projected count exceeds cutoff");
  const std::size_t d = v.dim_per_mode();
  const std::size_t rest_dim = ipow(d, v.modes() - 1);
  Vector rest(static_cast<Eigen::Index>(rest_dim));
  for (std::size_t r = 0; r < rest_dim; ++r) {
    rest(static_cast<Eigen::Index>(r)) = v.data()(static_cast<Eigen::Index>(insert_digit(r, n, mode, v.modes(), d)));
  }
  Projection out{rest.squaredNorm(), FockVector(v.cutoff(), v.modes() - 1)};
  if (out.probability > 0.0) out.state.data() = rest / std::sqrt(out.probability);
  return out;
}

std::vector<double> count_distribution(const FockVector& v, std::size_t mode) {
  check_mode(mode, v.modes());
  const std::size_t d = v.dim_per_mode();
  const std::size_t stride = ipow(d, v.modes() - 1 - mode);
  std::vector<double> p(d, 0.0);
  for (Eigen::Index idx = 0; idx < v.data().size(); ++idx) {
    p[(static_cast<std::size_t>(idx) / stride) % d] += std::norm(v.data()(idx));
  }
  return p;
}

FockDensity reduced_density(const FockVector& v, std::size_t traced_mode) {
  check_mode(traced_mode, v.modes());
  if (v.modes() < 2) throw ContractViolation("reduced_density needs a spectator mode");
  const std::size_t d = v.dim_per_mode();
  const std::size_t rest_dim = ipow(d, v.modes() - 1);
  Matrix x(static_cast<Eigen::Index>(rest_dim), static_cast<Eigen::Index>(d));
  for (std::size_t r = 0; r < rest_dim; ++r) {
    for (std::size_t n = 0; n < d; ++n) {
      x(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(n)) =
          v.data()(static_cast<Eigen::Index>(insert_digit(r, n, traced_mode, v.modes(), d)));
    }
  }
  return FockDensity(v.cutoff(), v.modes() - 1, x * x.adjoint());
}

FockDensity partial_trace(const FockDensity& rho, std::size_t mode) {
  check_mode(mode, rho.modes());
  if (rho.modes() < 2) throw ContractViolation("partial_trace needs a spectator mode");
  const std::size_t d = rho.cutoff() + 1;
  const std::size_t rest_dim = ipow(d, rho.modes() - 1);
  Matrix out = Matrix::Zero(static_cast<Eigen::Index>(rest_dim), static_cast<Eigen::Index>(rest_dim));
  for (std::size_t r = 0; r < rest_dim; ++r) {
    for (std::size_t c = 0; c < rest_dim; ++c) {
      Complex s = 0.0;
      for (std::size_t n = 0; n < d; ++n) {
        s += rho.data()(static_cast<Eigen::Index>(insert_digit(r, n, mode, rho.modes(), d)),
                        static_cast<Eigen::Index>(insert_digit(c, n, mode, rho.modes(), d)));
      }
      out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = s;
    }
  }
  return FockDensity(rho.cutoff(), rho.modes() - 1, std::move(out));
}

TruncatedState from_coherent_ket(const CoherentKet& ket, const CutoffPolicy& policy) {
  double m = 0.0;
  for (const auto& t : ket.terms()) {
    for (const auto& a : t.amps) m = std::max(m, std::norm(a));
  }
  return from_coherent_ket(ket, policy.cutoff_for(m));
}

TruncatedState from_coherent_ket(const CoherentKet& ket, std::size_t cutoff) {
  check_shape(cutoff, ket.modes());
  TruncatedState out{FockVector(cutoff, ket.modes()), 0.0};
  for (const auto& t : ket.terms()) {
    Vector prod = coherent_coefficients(t.amps[0], cutoff);
    out.tail = std::max(out.tail, coherent_tail(t.amps[0], cutoff));
    for (std::size_t m = 1; m < t.amps.size(); ++m) {
      const Vector f = coherent_coefficients(t.amps[m], cutoff);
      out.tail = std::max(out.tail, coherent_tail(t.amps[m], cutoff));
      Vector next(prod.size() * f.size());
      for (Eigen::Index a = 0; a < prod.size(); ++a) next.segment(a * f.size(), f.size()) = prod(a) * f;
      prod = std::move(next);
    }
    out.state.data() += t.coeff * prod;
  }
  return out;
}

SpanFit span_coefficients(const FockVector& v, std::span<const FockVector> basis) {
  if (basis.empty()) throw ContractViolation("span_coefficients needs at least one basis vector");
  Matrix b(v.data().size(), static_cast<Eigen::Index>(basis.size()));
  for (std::size_t k = 0; k < basis.size(); ++k) {
    if (basis[k].data().size() != v.data().size()) throw ContractViolation("basis vector shape mismatch");
    b.col(static_cast<Eigen::Index>(k)) = basis[k].data();
  }
  const Vector c = b.colPivHouseholderQr().solve(v.data());
  SpanFit fit;
  fit.coefficients.assign(c.data(), c.data() + c.size());
  fit.residual = (v.data() - b * c).norm();
  return fit;
}

}  // namespace catlink::fock
