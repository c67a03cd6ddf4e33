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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "catlink/errors.h"

namespace catlink {
namespace {

QubitSpec random_spec(Rng& rng, double alpha, Encoding e) {
  std::normal_distribution<double> g;
  Complex mu(g(rng), g(rng)), nu(g(rng), g(rng));
  const double n = std::sqrt(std::norm(mu) + std::norm(nu));
  return {mu / n, nu / n, alpha, e};
}

TEST(Encodings, NormalizationFactor) {
  const double r = std::numbers::sqrt2 / 2.0;
  EXPECT_NEAR(norm_factor(2.0, r, r), 1.0 + std::exp(-8.0), 1e-15);
  for (auto e : {Encoding::PlusMinus, Encoding::ZeroAlpha}) {
    const auto q = make_qubit({r, r, 2.0, e});
    EXPECT_NEAR(q.norm_squared(), 1.0, 1e-14);
    EXPECT_NEAR(std::norm(q.terms()[0].coeff), 0.5 / (1.0 + std::exp(-8.0)), 1e-15);
  }
}

TEST(Encodings, NearOrthogonalityAtLargeAlpha) {
  Rng rng(1);
  for (int k = 0; k < 200; ++k) {
    const auto s = random_spec(rng, 2.0, Encoding::PlusMinus);
    EXPECT_LT(std::abs(norm_factor(2.0, s.mu, s.nu) - 1.0), 7e-4);
  }
}

TEST(Encodings, BasisStates) {
  const auto q = make_qubit({1.0, 0.0, 1.3, Encoding::PlusMinus});
  ASSERT_EQ(q.terms().size(), 1u);
  EXPECT_EQ(q.terms()[0].amps[0], Complex(-1.3));
  const auto z = convert_encoding(q, Encoding::PlusMinus, Encoding::ZeroAlpha, 1.3);
  EXPECT_LT(std::abs(z.terms()[0].amps[0]), 1e-15);
}

TEST(Encodings, DegenerateQubitIsRejected) {
  const double r = std::numbers::sqrt2 / 2.0;
  EXPECT_THROW(make_qubit({r, -r, 1e-9, Encoding::PlusMinus}), DegenerateQubitError);
  EXPECT_THROW(make_qubit({1.0, 1.0, 1.0, Encoding::PlusMinus}), ContractViolation);
}

TEST(Encodings, ConversionRoundTripAndTarget) {
  Rng rng(2);
  for (int k = 0; k < 50; ++k) {
    const auto s = random_spec(rng, 1.5, Encoding::PlusMinus);
    const auto pm = make_qubit(s);
    const auto za = convert_encoding(pm, Encoding::PlusMinus, Encoding::ZeroAlpha, 1.5);
    QubitSpec t = s;
    t.encoding = Encoding::ZeroAlpha;
    EXPECT_NEAR(qubit_fidelity(za, t), 1.0, 1e-12);
    const auto back = convert_encoding(za, Encoding::ZeroAlpha, Encoding::PlusMinus, 1.5);
    EXPECT_LT(std::abs(back.inner(pm) - 1.0), 1e-12);
  }
}

TEST(Encodings, LogicalPaulis) {
  Rng rng(3);
  for (auto e : {Encoding::PlusMinus, Encoding::ZeroAlpha}) {
    for (int k = 0; k < 30; ++k) {
      const auto s = random_spec(rng, 1.2, e);
      const auto q = make_qubit(s);
      QubitSpec swapped = s;
      std::swap(swapped.mu, swapped.nu);
      EXPECT_NEAR(qubit_fidelity(logical_X(q, e, 1.2), swapped), 1.0, 1e-12);
      EXPECT_NEAR(std::abs(logical_X(logical_X(q, e, 1.2), e, 1.2).inner(q)), 1.0, 1e-12);
      const auto zq = logical_Z_physical(q, e, 1.2);
      EXPECT_NEAR(qubit_fidelity(zq, logical_Z(s)), 1.0, 1e-12);
      EXPECT_NEAR(std::abs(logical_Z_physical(zq, e, 1.2).inner(q)), 1.0, 1e-12);
    }
  }
  const auto vac = make_qubit({1.0, 0.0, 2.0, Encoding::PlusMinus});
  EXPECT_LT(std::abs(logical_Z_physical(vac, Encoding::PlusMinus, 2.0).inner(vac) - 1.0), 1e-15);
}

TEST(Encodings, ConversionCommutesWithPaulis) {
  Rng rng(4);
  const double a = 1.1;
  for (int k = 0; k < 30; ++k) {
    const auto s = random_spec(rng, a, Encoding::PlusMinus);
    const auto q = make_qubit(s);
    const auto to_za = [&](const CoherentKet& k) {
      return convert_encoding(k, Encoding::PlusMinus, Encoding::ZeroAlpha, a);
    };
    const auto x1 = to_za(logical_X(q, Encoding::PlusMinus, a));
    const auto x2 = logical_X(to_za(q), Encoding::ZeroAlpha, a);
    EXPECT_NEAR(std::abs(x1.inner(x2)), 1.0, 1e-10);
    const auto z1 = to_za(logical_Z_physical(q, Encoding::PlusMinus, a));
    const auto z2 = logical_Z_physical(to_za(q), Encoding::ZeroAlpha, a);
    EXPECT_NEAR(std::abs(z1.inner(z2)), 1.0, 1e-10);
  }
}

TEST(Encodings, LogicalZRejectsStatesOutsideSpan) {
  const auto k = CoherentKet::product({Complex(0.5)});
  EXPECT_THROW(logical_Z_physical(k, Encoding::PlusMinus, 1.0), UnsupportedStateError);
}

TEST(Encodings, FidelityBetweenDifferentSpecs) {
  // |0>_L vs |1>_L at alpha = 3 overlap exp(-18).
  const auto zero = make_qubit({1.0, 0.0, 3.0, Encoding::PlusMinus});
  EXPECT_NEAR(qubit_fidelity(zero, {0.0, 1.0, 3.0, Encoding::PlusMinus}), std::exp(-36.0), 1e-25);
  const double r = std::numbers::sqrt2 / 2.0;
  EXPECT_NEAR(qubit_fidelity(zero, {r, r, 3.0, Encoding::PlusMinus}), 0.5, 1e-7);
}

TEST(Encodings, RandomSpecsScoreOne) {
  Rng rng(5);
  std::uniform_real_distribution<double> alpha(0.5, 4.0);
  for (int k = 0; k < 100; ++k) {
    const auto s = random_spec(rng, alpha(rng), k % 2 ? Encoding::ZeroAlpha : Encoding::PlusMinus);
    EXPECT_NEAR(qubit_fidelity(make_qubit(s), s), 1.0, 1e-12);
    EXPECT_NEAR(qubit_fidelity(CoherentDensity::pure(make_qubit(s)), s), 1.0, 1e-12);
  }
}

TEST(Encodings, SpecTextRoundTrip) {
  const QubitSpec s{Complex(0.6, 0.0), Complex(0.0, 0.8), 2.5, Encoding::ZeroAlpha};
  const auto t = QubitSpec::parse(s.to_string());
  EXPECT_EQ(t.mu, s.mu);
  EXPECT_EQ(t.nu, s.nu);
  EXPECT_EQ(t.alpha, s.alpha);
  EXPECT_EQ(t.encoding, s.encoding);
  EXPECT_THROW(QubitSpec::parse("1,0,0,0,2"), ConfigError);
  EXPECT_THROW(QubitSpec::parse("1,0,0,0,2,cat"), ConfigError);
  EXPECT_THROW(QubitSpec::parse("1,0,1,0,2,pm"), ConfigError);
}

}  // namespace
}  // namespace catlink
