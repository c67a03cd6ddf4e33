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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "catlink/coherent.h"
#include "test_util.h"

namespace catlink {
namespace {

using fock::FockVector;
using fock::SplitterVariant;
using testing::random_ket;

double max_abs_sq(const CoherentKet& k) {
  double m = 0.0;
  for (const auto& t : k.terms()) {
    for (const auto& a : t.amps) m = std::max(m, std::norm(a));
  }
  return m;
}

// Both kets expanded at one shared cutoff.
std::pair<FockVector, FockVector> expand_pair(const CoherentKet& a, const CoherentKet& b,
                                              std::size_t extra = 0) {
  const std::size_t n = fock::CutoffPolicy{}.cutoff_for(std::max(max_abs_sq(a), max_abs_sq(b))) + extra;
  auto fa = fock::from_coherent_ket(a, n);
  auto fb = fock::from_coherent_ket(b, n);
  EXPECT_LT(std::max(fa.tail, fb.tail), 1e-12);
  return {fa.state, fb.state};
}

TEST(FockOracle, CoherentStateBasics) {
  const auto vac = fock::coherent_fock(0.0, 10);
  EXPECT_EQ(vac.state.data()(0), Complex(1.0));
  const auto plus = fock::coherent_fock(2.0, 40);
  const auto minus = fock::coherent_fock(-2.0, 40);
  EXPECT_LT(plus.tail, 1e-12);
  EXPECT_NEAR(minus.state.inner(plus.state).real(), std::exp(-8.0), 1e-10);
}

TEST(FockOracle, TailMatchesDirectSum) {
  // 1 - sum_{n<=5} e^{-4} 4^n / n!
  double head = 0.0, p = std::exp(-4.0);
  for (int n = 0; n <= 5; ++n) {
    if (n > 0) p *= 4.0 / n;
    head += p;
  }
  EXPECT_NEAR(fock::coherent_tail(2.0, 5), 1.0 - head, 1e-14);
}

TEST(FockOracle, DisplacementMatrixGeneratesCoherentStates) {
  const std::size_t n = 70;
  for (Complex g : {Complex(0.0), Complex(1.2, -0.7), Complex(-3.0, 0.0), Complex(0.5, 2.5)}) {
    const auto d = fock::displacement_matrix(g, n);
    const fock::Vector col = d.col(0);
    const auto ref = fock::coherent_fock(g, n);
    EXPECT_LT((col - ref.state.data()).norm(), 1e-10);
    const auto inv = fock::displacement_matrix(-g, n);
    const fock::Matrix prod = (d * inv).topLeftCorner(10, 10);
    EXPECT_LT((prod - fock::Matrix::Identity(10, 10)).norm(), 1e-10);
  }
}

TEST(FockOracle, SplitterMatrixIsUnitaryAndConservesPhotons) {
  const auto u = fock::beam_splitter_matrix(0.61, 12, SplitterVariant::Standard);
  EXPECT_LT((u.adjoint() * u - fock::Matrix::Identity(u.rows(), u.cols())).norm(), 1e-12);
  const auto w = fock::beam_splitter_matrix(0.61, 12, SplitterVariant::IType);
  EXPECT_LT((w.adjoint() * w - fock::Matrix::Identity(w.rows(), w.cols())).norm(), 1e-12);
  const auto id = fock::beam_splitter_matrix(0.0, 12, SplitterVariant::Standard);
  EXPECT_LT((id - fock::Matrix::Identity(id.rows(), id.cols())).norm(), 1e-14);
}

TEST(FockOracle, SplitterOnCoherentInputsMatchesAmplitudeMap) {
  const double theta = std::acos(std::sqrt(0.7));
  const auto in = CoherentKet::product({Complex(1.3, 0.4), Complex(-0.8, 0.2)});
  for (auto variant : {SplitterVariant::Standard, SplitterVariant::IType}) {
    const auto exact = variant == SplitterVariant::Standard ? beam_splitter(in, 0, 1, theta)
                                                            : ibeam_splitter(in, 0, 1, theta);
    auto [fin, fexact] = expand_pair(in, exact);
    const auto out = fock::apply_beam_splitter(fin, 0, 1, theta, variant);
    EXPECT_NEAR(std::abs(out.inner(fexact) - 1.0), 0.0, 1e-8);
    const fock::Vector full = fock::beam_splitter_matrix(theta, fin.cutoff(), variant) * fin.data();
    EXPECT_LT((full - out.data()).norm(), 1e-10);
  }
}

TEST(FockOracle, ITypeSplitterAtHadamardAngle) {
  const double theta = std::numbers::pi / 8.0;
  const auto in = CoherentKet::product({Complex(4.0), Complex(4.0)});
  const auto exact = ibeam_splitter(in, 0, 1, theta);
  const auto fin = fock::from_coherent_ket(in, 60).state;
  const auto fexact = fock::from_coherent_ket(exact, 60).state;
  const auto out = fock::apply_beam_splitter(fin, 0, 1, theta, SplitterVariant::IType);
  EXPECT_LT(std::abs(out.inner(fexact) - 1.0), 1e-8);
}

TEST(FockOracle, RandomKetOperationsAgreeWithCoherentAlgebra) {
  Rng rng(17);
  for (int trial = 0; trial < 6; ++trial) {
    const auto a = random_ket(rng, 2, 6, 2.0);
    const auto b = random_ket(rng, 2, 6, 2.0);
    const Complex gamma(0.6, -0.4);
    auto ea = displace(ibeam_splitter(phase_rotation(beam_splitter(a, 1, 0, 0.9), 0, 0.7), 0, 1, 0.3), 1, gamma);
    const auto eb = b;
    const std::size_t n = fock::CutoffPolicy{}.cutoff_for(std::max(max_abs_sq(ea), max_abs_sq(a))) + 10;
    const auto fa = fock::from_coherent_ket(ea, n).state;
    const auto fb = fock::from_coherent_ket(eb, n).state;
    auto ga = fock::from_coherent_ket(a, n).state;
    ga = fock::apply_beam_splitter(ga, 1, 0, 0.9, SplitterVariant::Standard);
    ga = fock::apply_phase_rotation(ga, 0, 0.7);
    ga = fock::apply_beam_splitter(ga, 0, 1, 0.3, SplitterVariant::IType);
    ga = fock::apply_single_mode(ga, 1, fock::displacement_matrix(gamma, ga.cutoff()));
    EXPECT_LT(std::abs(ga.inner(fb) - ea.inner(eb)), 1e-8);
    EXPECT_LT(std::abs(fa.inner(fb) - ea.inner(eb)), 1e-8);
  }
}

TEST(FockOracle, CountingAndProjectionAgree) {
  Rng rng(29);
  for (int trial = 0; trial < 5; ++trial) {
    const auto k = random_ket(rng, 3, 5, 1.5);
    const auto fk = fock::from_coherent_ket(k).state;
    const auto p = fock::count_distribution(fk, 2);
    const auto d = photon_count_distribution(k, 2, 25);
    for (std::size_t n = 0; n < 25; ++n) EXPECT_NEAR(p[n], d.probabilities[n], 1e-10);
    for (std::size_t n : {0u, 1u, 3u}) {
      const auto fp = fock::number_projection(fk, 1, n);
      const auto cp = project_photon_count(k, 1, n);
      EXPECT_NEAR(fp.probability, cp.probability, 1e-10);
      const auto back = fock::from_coherent_ket(cp.state, fk.cutoff()).state;
      EXPECT_NEAR(std::abs(back.inner(fp.state)), 1.0, 1e-8);
    }
  }
}

TEST(FockOracle, PartialTraceAgreesWithDyadForm) {
  Rng rng(31);
  for (int trial = 0; trial < 4; ++trial) {
    const auto k = random_ket(rng, 3, 4, 1.5);
    const auto fk = fock::from_coherent_ket(k).state;
    const auto rho_f = fock::reduced_density(fk, 0);
    const auto k2 = random_ket(rng, 2, 4, 1.5);
    const auto fk2 = fock::from_coherent_ket(k2).state;
    const auto rho_a = fock::reduced_density(fk2, 1);
    const auto rho_b = fock::partial_trace(fock::FockDensity::pure(fk2), 1);
    EXPECT_LT((rho_a.data() - rho_b.data()).norm(), 1e-12);
    EXPECT_NEAR(rho_f.trace().real(), 1.0, 1e-10);
    const auto rho_c = trace_out(k, 0);
    const auto probe = random_ket(rng, 2, 3, 1.5);
    const auto fprobe = fock::from_coherent_ket(probe, fk.cutoff()).state;
    EXPECT_NEAR(rho_f.expectation(fprobe).real(), rho_c.expectation(probe).real(), 1e-8);
    EXPECT_NEAR(fidelity_pure(rho_c, probe), rho_f.expectation(fprobe).real(), 1e-8);
  }
}

TEST(FockOracle, SpanCoefficientsRecoverCombination) {
  const auto m = fock::coherent_fock(-1.5, 40).state;
  const auto p = fock::coherent_fock(1.5, 40).state;
  FockVector v(40, 1, 0.3 * m.data() + Complex(0.1, -0.7) * p.data());
  const std::vector<FockVector> basis{m, p};
  const auto fit = fock::span_coefficients(v, basis);
  EXPECT_LT(std::abs(fit.coefficients[0] - 0.3), 1e-12);
  EXPECT_LT(std::abs(fit.coefficients[1] - Complex(0.1, -0.7)), 1e-12);
  EXPECT_LT(fit.residual, 1e-12);
}

}  // namespace
}  // namespace catlink
