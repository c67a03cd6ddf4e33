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


#include "catlink/phase_flip_code.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "catlink/errors.h"
#include "catlink/fock.h"

namespace catlink {
namespace {

const double kR = std::numbers::sqrt2 / 2.0;

CoherentKet ghz(double a, std::size_t m, Complex mu, Complex nu) {
  return CoherentKet(m, {{mu, Amplitudes(m, -a)}, {nu, Amplitudes(m, a)}}).normalized();
}

CoherentKet qubit_at(double a, Complex mu, Complex nu) { return make_qubit({mu, nu, a, Encoding::PlusMinus}); }

// Swapped code modes, as a Z error looks after the second Hadamard layer.
CoherentKet swap_modes(CoherentKet s, std::initializer_list<std::size_t> modes, double a) {
  for (auto k : modes) s = logical_X(s, Encoding::PlusMinus, a, k);
  return s;
}

double output_fidelity(const DecodeResult& r, Complex mu, Complex nu) {
  return qubit_fidelity(r.state, {mu, nu, r.output_alpha, Encoding::PlusMinus});
}

// ---------------------------------------------------------------------------
// Closed forms

TEST(CodeFormula, Endpoints) {
  EXPECT_EQ(code_success_prob(0.0), 1.0);
  for (std::size_t n = 1; n <= 6; ++n) {
    EXPECT_EQ(general_code_success(n, 0.0), 1.0);
    EXPECT_NEAR(general_code_success(n, 0.5), 0.5, 1e-14) << n;
  }
  EXPECT_THROW(code_success_prob(1.5), ContractViolation);
}

TEST(CodeFormula, ThreeModeCaseAgrees) {
  Rng rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 100; ++k) {
    const double p = u(rng);
    EXPECT_NEAR(general_code_success(1, p), code_success_prob(p), 1e-15) << p;
  }
}

TEST(CodeFormula, FiveModeDirectSum) {
  // 0.9^5 + 5 (0.1)(0.9^4) + 10 (0.01)(0.9^3)
  EXPECT_NEAR(general_code_success(2, 0.1), 0.99144, 1e-15);
}

TEST(CodeFormula, MonotoneInBlockSize) {
  for (double p : {0.05, 0.2, 0.4, 0.49}) {
    for (std::size_t n = 1; n < 12; ++n) EXPECT_GT(general_code_success(n + 1, p), general_code_success(n, p));
  }
  for (double p : {0.51, 0.7, 0.95}) {
    for (std::size_t n = 1; n < 12; ++n) EXPECT_LT(general_code_success(n + 1, p), general_code_success(n, p));
  }
}

// ---------------------------------------------------------------------------
// Encoding

TEST(Encoder, Transmissivities) {
  EXPECT_NEAR(encoder_transmissivity(3, 0), 1.0 / 3.0, 1e-16);
  EXPECT_NEAR(encoder_transmissivity(3, 1), 0.5, 1e-16);
  EXPECT_NEAR(encoder_transmissivity(5, 2), 1.0 / 3.0, 1e-16);
  EXPECT_THROW(encoder_transmissivity(3, 2), ContractViolation);
}

TEST(Encoder, SingleTermSplitsEvenly) {
  const double a = 1.5;
  const auto out = encode(CoherentKet::product({-std::sqrt(3.0) * a}), 3);
  ASSERT_EQ(out.terms().size(), 1u);
  for (const auto amp : out.terms()[0].amps) EXPECT_NEAR(std::abs(amp + a), 0.0, 1e-14);
}

TEST(Encoder, ProducesRepetitionState) {
  for (std::size_t m : {3u, 5u, 7u}) {
    const double a = 1.5;
    const auto out = encode(qubit_at(std::sqrt(static_cast<double>(m)) * a, kR, kR), m);
    EXPECT_NEAR(std::abs(out.inner(ghz(a, m, kR, kR))), 1.0, 1e-12) << m;
  }
  const auto out = encode(qubit_at(std::sqrt(3.0) * 2.0, 0.6, Complex(0, 0.8)), 3);
  EXPECT_NEAR(std::abs(out.inner(ghz(2.0, 3, 0.6, Complex(0, 0.8)))), 1.0, 1e-12);
}

TEST(Encoder, Linear) {
  const double a = 1.2, big = std::sqrt(3.0) * a;
  const Complex mu(0.3, 0.4), nu(-0.5, 0.7);
  const auto zero = encode(CoherentKet::product({-big}), 3);
  const auto one = encode(CoherentKet::product({big}), 3);
  const auto direct = encode(CoherentKet(1, {{mu, {-big}}, {nu, {big}}}), 3);
  const auto combined = zero.scaled(mu) + one.scaled(nu);
  EXPECT_NEAR(std::abs(direct.inner(combined) - combined.norm_squared()), 0.0, 1e-12);
  EXPECT_NEAR(direct.norm_squared(), combined.norm_squared(), 1e-12);
}

TEST(Encoder, ConservesPhotonNumber) {
  const double a = 2.0;
  const auto q = qubit_at(std::sqrt(3.0) * a, 0.6, 0.8);
  const auto out = encode(q, 3);
  double total = 0.0;
  for (std::size_t k = 0; k < 3; ++k) total += mean_photon_number(out, k);
  EXPECT_NEAR(total, mean_photon_number(q, 0), 1e-10);
}

TEST(Encoder, BoostKeepsLogicalContent) {
  Rng rng(4);
  const QubitSpec s{1.0, 0.0, 2.0, Encoding::PlusMinus};
  for (int k = 0; k < 20; ++k) {
    const auto r = boost_amplitude(make_qubit(s), 2.0, 3, rng);
    if (!r.record.success()) continue;
    EXPECT_NEAR(qubit_fidelity(*r.state, {1.0, 0.0, 2.0 * std::sqrt(3.0), Encoding::PlusMinus}), 1.0, 1e-10);
  }
}

// ---------------------------------------------------------------------------
// Block Hadamard

TEST(BlockHadamard, IdealIsAnInvolution) {
  const auto s = ghz(1.7, 3, 0.6, Complex(0, 0.8));
  const auto twice = apply_logical_H_ideal(apply_logical_H_ideal(s, 1.7), 1.7);
  EXPECT_NEAR(std::abs(twice.inner(s)), 1.0, 1e-12);
}

TEST(BlockHadamard, IdealOnBasisState) {
  const double a = 1.3;
  const auto h = apply_logical_H_ideal(CoherentKet::product({-a}), a);
  EXPECT_NEAR(std::abs(h.inner(make_cat(a, CatSign::Plus))), 1.0, 1e-14);
  EXPECT_THROW(apply_logical_H_ideal(CoherentKet::product({0.5}), a), UnsupportedStateError);
}

TEST(BlockHadamard, TurnsZIntoSwap) {
  const double a = 1.5;
  const auto s = ghz(a, 3, 0.6, 0.8);
  const auto z = logical_Z_physical(apply_logical_H_ideal(s, a), Encoding::PlusMinus, a, 1);
  EXPECT_NEAR(std::abs(apply_logical_H_ideal(z, a).inner(swap_modes(s, {1}, a))), 1.0, 1e-12);
}

TEST(BlockHadamard, PhysicalTracksIdeal) {
  Rng rng(6);
  const double a = 4.0;
  const auto q = CoherentKet::product({-a});
  const auto ideal = apply_logical_H_ideal(q, a);
  const int n = 200;
  double f = 0.0;
  for (int k = 0; k < n; ++k) {
    const auto r = apply_logical_H_blockwise(q, a, HadamardModel::Physical, rng);
    ASSERT_EQ(r.records.size(), 1u);
    f += std::norm(r.state.inner(ideal));
  }
  EXPECT_GT(f / n, 0.98);
}

// ---------------------------------------------------------------------------
// Decoding

TEST(Decoder, CleanBlock) {
  const double a = 2.0;
  const auto outcomes = decode_outcomes(ghz(a, 3, 0.6, 0.8), a);
  ASSERT_EQ(outcomes.size(), 1u);
  const auto& r = outcomes[0].result;
  EXPECT_NEAR(outcomes[0].probability, 1.0, 1e-12);
  ASSERT_EQ(r.syndrome.comparisons.size(), 2u);
  EXPECT_EQ(r.syndrome.token(), "0;0");
  EXPECT_EQ(r.syndrome.output_weight, 3u);
  EXPECT_NEAR(r.output_alpha, std::sqrt(3.0) * a, 1e-14);
  EXPECT_NEAR(output_fidelity(r, 0.6, 0.8), 1.0, 1e-12);
  EXPECT_FALSE(r.syndrome.anomaly);
  EXPECT_FALSE(r.syndrome.inferred_error_mode().has_value());
}

TEST(Decoder, SingleSwapIsCorrected) {
  const double a = 2.0;
  const Complex mu(0.6, 0.0), nu(0.0, 0.8);
  for (std::size_t k = 0; k < 3; ++k) {
    double total = 0.0, corrected = 0.0, missed = 0.0;
    for (const auto& w : decode_outcomes(swap_modes(ghz(a, 3, mu, nu), {k}, a), a)) {
      total += w.probability;
      const auto& syn = w.result.syndrome;
      const bool miss = std::any_of(syn.comparisons.begin(), syn.comparisons.end(),
                                    [](const Comparison& c) { return c.missed; });
      if (miss) {
        missed += w.probability;
        continue;
      }
      EXPECT_NEAR(output_fidelity(w.result, mu, nu), 1.0, 1e-10) << k << " " << syn.token();
      EXPECT_EQ(syn.output_weight, 1u);
      EXPECT_EQ(syn.stray_photons, 0u);
      corrected += w.probability;
      if (k == 2) EXPECT_EQ(syn.inferred_error_mode(), std::optional<std::size_t>(2));
      if (k < 2) EXPECT_EQ(syn.suspects, (std::vector<std::size_t>{0, 1}));
    }
    EXPECT_NEAR(total, 1.0, 1e-10);
    // A swapped pair reads 0 with probability exp(-2 a^2), up to the block normalization.
    EXPECT_NEAR(missed, std::exp(-2.0 * a * a), 1e-6) << k;
    EXPECT_NEAR(corrected + missed, 1.0, 1e-10);
  }
}

TEST(Decoder, FiringCountIsPoisson) {
  // Poisson with mean 2a^2, modulated by the overlap e^{-2a^2} of the
  // untouched mode between the two branches.
  const double a = 1.5, mean = 2.0 * a * a, c = 2.0 * kR * kR;
  std::vector<double> p(12, 0.0);
  for (const auto& w : decode_outcomes(swap_modes(ghz(a, 3, kR, kR), {0}, a), a)) {
    const auto n = w.result.syndrome.comparisons[0].count;
    if (n < p.size()) p[n] += w.probability;
  }
  for (std::size_t n = 1; n < p.size(); ++n) {
    const double poisson = std::exp(-mean) * std::pow(mean, n) / std::tgamma(n + 1.0);
    const double sign = n % 2 ? -1.0 : 1.0;
    const double expected = poisson * (1.0 + sign * c * std::exp(-2.0 * a * a)) / (1.0 + c * std::exp(-6.0 * a * a));
    EXPECT_NEAR(p[n], expected, 1e-12) << n;
    EXPECT_NEAR(p[n], poisson, 0.02 * poisson) << n;
  }
}

TEST(Decoder, SyndromeLocality) {
  const double a = 2.0;
  for (const auto& w : decode_outcomes(swap_modes(ghz(a, 3, 0.6, 0.8), {2}, a), a)) {
    EXPECT_EQ(w.result.syndrome.comparisons[0].count, 0u);
  }
}

TEST(Decoder, SampledSyndromesCorrect) {
  Rng rng(8);
  const double a = 2.0;
  for (std::size_t k = 0; k < 3; ++k) {
    const auto block = swap_modes(ghz(a, 3, 0.6, Complex(0, 0.8)), {k}, a);
    for (int t = 0; t < 1000; ++t) {
      const auto r = decode_and_correct(block, a, rng);
      if (r.syndrome.anomaly) continue;
      const bool fired = std::any_of(r.syndrome.comparisons.begin(), r.syndrome.comparisons.end(),
                                     [](const Comparison& c) { return c.count > 0; });
      if (fired) EXPECT_NEAR(output_fidelity(r, 0.6, Complex(0, 0.8)), 1.0, 1e-10);
    }
  }
}

TEST(Decoder, FiveModeBlockCorrectsTwoSwaps) {
  const double a = 2.0;
  for (auto pattern : {std::vector<std::size_t>{0, 1}, {0, 4}, {2, 3}, {1, 3}}) {
    auto block = ghz(a, 5, 0.6, 0.8);
    for (auto k : pattern) block = logical_X(block, Encoding::PlusMinus, a, k);
    double good = 0.0;
    for (const auto& w : decode_outcomes(block, a, 1e-8)) {
      if (w.result.syndrome.anomaly) continue;
      EXPECT_NEAR(output_fidelity(w.result, 0.6, 0.8), 1.0, 1e-10);
      good += w.probability;
    }
    EXPECT_GT(good, 1.0 - 5.0 * std::exp(-2.0 * a * a) - 1e-4);
  }
}

TEST(Decoder, MajoritySwapFlipsTheQubit) {
  const double a = 2.0;
  for (const auto& w : decode_outcomes(swap_modes(ghz(a, 3, 0.6, 0.8), {0, 1}, a), a)) {
    if (w.result.syndrome.anomaly) continue;
    EXPECT_NEAR(output_fidelity(w.result, 0.8, 0.6), 1.0, 1e-10);
  }
}

TEST(Decoder, RejectsEvenBlocks) {
  Rng rng(9);
  EXPECT_THROW(decode_and_correct(ghz(1.0, 4, kR, kR), 1.0, rng), ContractViolation);
}

// The 3-mode decoder replayed on dense number-basis vectors.
TEST(Decoder, FockOracle) {
  const double a = 1.0;
  const std::size_t cutoff = 30;
  const Complex mu = 0.6, nu = 0.8;
  const auto block = swap_modes(ghz(a, 3, mu, nu), {2}, a);
  const auto outcomes = decode_outcomes(block, a);

  auto v = fock::from_coherent_ket(block, cutoff).state;
  ASSERT_NEAR(v.norm_squared(), 1.0, 1e-12);
  // Mode 1 against mode 0; the difference lands on mode 1.
  v = fock::apply_beam_splitter(v, 1, 0, std::numbers::pi / 4.0, fock::SplitterVariant::Standard);
  const auto first = fock::number_projection(v, 1, 0);  // [sum, m2]
  auto w = first.state.tensor(fock::FockVector::basis(cutoff, std::array<std::size_t, 1>{0}));
  w = fock::apply_beam_splitter(w, 0, 2, std::asin(kR), fock::SplitterVariant::Standard);
  w = fock::apply_beam_splitter(w, 1, 2, std::numbers::pi / 4.0, fock::SplitterVariant::Standard);
  for (std::size_t n = 1; n < 6; ++n) {
    const auto second = fock::number_projection(w, 1, n);  // [remainder, sum]
    double coherent_p = 0.0;
    const DecodeResult* branch = nullptr;
    for (const auto& o : outcomes) {
      const auto& c = o.result.syndrome.comparisons;
      if (c.size() == 2 && c[0].count == 0 && c[1].count == n) {
        coherent_p += o.probability;
        branch = &o.result;
      }
    }
    EXPECT_NEAR(first.probability * second.probability, coherent_p, 1e-9) << n;
    ASSERT_NE(branch, nullptr);
    // The remainder holds Z^n |Q> at amplitude a before correction.
    const auto rem = fock::number_projection(second.state, 1, 0).state;
    const auto expected = fock::from_coherent_ket(qubit_at(a, mu, n % 2 ? -nu : nu), cutoff).state;
    EXPECT_NEAR(std::norm(rem.inner(expected)), 1.0, 1e-9) << n;
    EXPECT_NEAR(output_fidelity(*branch, mu, nu), 1.0, 1e-10);
  }
}

// ---------------------------------------------------------------------------
// End to end

TEST(EndToEnd, LosslessChannel) {
  Rng rng(10);
  const QubitSpec s{0.6, Complex(0, 0.8), 2.0, Encoding::PlusMinus};
  int ok = 0;
  for (int t = 0; t < 50; ++t) {
    const auto r = end_to_end(s, {}, ChannelParams::from_eta(1.0), rng);
    if (!r.trail.front().success()) continue;
    ++ok;
    EXPECT_TRUE(r.success);
    EXPECT_NEAR(r.fidelity, 1.0, 1e-10);
    EXPECT_EQ(r.channel_errors(), 0u);
    EXPECT_NEAR(r.output_alpha, 2.0, 1e-12);
  }
  EXPECT_GE(ok, 45);
}

TEST(EndToEnd, MonteCarloMatchesFormula) {
  Rng rng(11);
  const double a = 2.0, eta = 0.9;
  const QubitSpec s{0.6, 0.8, a, Encoding::PlusMinus};
  const int n = 4000;
  int ok = 0;
  for (int t = 0; t < n; ++t) ok += end_to_end(s, {}, ChannelParams::from_eta(eta), rng).success;
  const double ps = code_success_prob(error_prob(a, eta));
  const double sigma = std::sqrt(ps * (1.0 - ps) / n);
  EXPECT_NEAR(ok / static_cast<double>(n), ps, 3.0 * sigma + std::exp(-2.0 * eta * a * a));
}

TEST(EndToEnd, NoRestorationLeavesReducedAmplitude) {
  Rng rng(12);
  const double a = 2.0, eta = 0.8;
  CodeParams p;
  p.restore = RestorePlacement::Off;
  for (int t = 0; t < 30; ++t) {
    const auto r = end_to_end({0.6, 0.8, a, Encoding::PlusMinus}, p, ChannelParams::from_eta(eta), rng);
    if (!r.state) continue;
    const double c = static_cast<double>(r.syndrome.output_weight);
    EXPECT_NEAR(r.output_alpha, std::sqrt(c * eta) * a, 1e-12);
    // Amplitude estimate from the mean photon number of the output.
    EXPECT_NEAR(std::sqrt(mean_photon_number(*r.state, 0)), r.output_alpha, 1e-2 * r.output_alpha);
  }
}

TEST(EndToEnd, RestorationBeforeDecoding) {
  Rng rng(13);
  CodeParams p;
  p.restore = RestorePlacement::BeforeDecode;
  const QubitSpec s{0.6, 0.8, 2.0, Encoding::PlusMinus};
  for (int t = 0; t < 20; ++t) {
    const auto r = end_to_end(s, p, ChannelParams::from_eta(0.95), rng);
    if (!r.state || r.channel_errors() > 1 || r.undetected) continue;
    EXPECT_NEAR(r.fidelity, 1.0, 1e-10);
  }
}

TEST(EndToEnd, InjectedErrorsMatchFormula) {
  Rng rng(14);
  const QubitSpec s{0.6, 0.8, 2.0, Encoding::PlusMinus};
  for (double pe : {0.0, 0.2, 0.5}) {
    const int n = 3000;
    int ok = 0;
    for (int t = 0; t < n; ++t) ok += end_to_end_injected(s, {}, pe, rng).success;
    const double ps = code_success_prob(pe);
    const double sigma = std::sqrt(ps * (1.0 - ps) / n);
    // Boost and restore teleports fail with probability ~1e-3 together.
    EXPECT_NEAR(ok / static_cast<double>(n), ps, 3.0 * sigma + 3.0 * std::exp(-8.0) + 2e-3) << pe;
  }
}

TEST(EndToEnd, CsvRow) {
  CodeTrialResult r;
  r.success = true;
  r.fidelity = 1.0;
  r.syndrome.comparisons = {{1, 1, 0, false}, {2, 2, 3, false}};
  EXPECT_EQ(r.csv_row(7, 0.25, 0.9, 2.0, 1), "7,0.25,0.9,2,1,0;3,1,1");
  EXPECT_EQ(CodeTrialResult::csv_header(), "trial,pe,eta,alpha,n,syndrome,success,fidelity");
}

}  // namespace
}  // namespace catlink
