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


// Self-check report for `catlink validate`: each entry measures one invariant
// or one coherent-vs-number-basis agreement and states its tolerance.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "catlink/errors.h"
#include "catlink/experiments.h"
#include "catlink/fock.h"
#include "catlink/loss_channel.h"
#include "catlink/phase_flip_code.h"
#include "catlink/protocols.h"

namespace catlink {
namespace {

const double kR = std::numbers::sqrt2 / 2.0;

double data_distance(const fock::FockVector& a, const fock::FockVector& b) {
  return (a.data() - b.data()).norm();
}

fock::FockVector expand(const CoherentKet& k, std::size_t cutoff) {
  return fock::from_coherent_ket(k, cutoff).state;
}

// P_e from the eigenweights of the transmitted mu = nu qubit in the number basis.
double fock_error_prob(double alpha, double eta, std::size_t cutoff) {
  const double a = alpha * std::sqrt(eta);
  const auto q = make_qubit({kR, kR, alpha, Encoding::PlusMinus});
  auto v = expand(q.append_vacuum(), cutoff);
  v = fock::apply_beam_splitter(v, 0, 1, std::acos(std::sqrt(eta)), fock::SplitterVariant::Standard);
  const auto es = fock::reduced_density(v, 1).eigen();
  const auto& ev = es.eigenvalues();
  const auto up = expand(CoherentKet(1, {{kR, {Complex(-a)}}, {kR, {Complex(a)}}}), cutoff);
  const auto um = expand(CoherentKet(1, {{kR, {Complex(-a)}}, {-kR, {Complex(a)}}}), cutoff);
  const fock::Vector top = es.eigenvectors().col(ev.size() - 1);
  const bool top_is_plus = std::norm(top.dot(up.data())) >= std::norm(top.dot(um.data()));
  const double lp = top_is_plus ? ev(ev.size() - 1) : ev(ev.size() - 2);
  const double lm = top_is_plus ? ev(ev.size() - 2) : ev(ev.size() - 1);
  const double wp = lp / up.norm_squared(), wm = std::max(lm, 0.0) / um.norm_squared();
  return wm / (wp + wm);
}

}  // namespace

std::vector<ValidationCheck> run_validation() {
  std::vector<ValidationCheck> out;
  auto add = [&](const char* module, const char* name, double deviation, double tolerance) {
    out.push_back({module, name, std::isfinite(deviation) ? deviation : 1e300, tolerance});
  };
  Rng rng(20260101);

  // coherent-algebra against the number basis
  {
    const Complex a(1.3, 0.0), b(-0.7, 0.4);
    const auto fa = fock::coherent_fock(a, 60).state, fb = fock::coherent_fock(b, 60).state;
    add("coherent-algebra", "overlap <b|a> vs number basis", std::abs(overlap(b, a) - fb.inner(fa)), 1e-10);

    const auto ket = CoherentKet(2, {{0.6, {1.0, Complex(0, -0.5)}}, {0.8, {-0.3, 0.9}}}).normalized();
    const std::size_t N = 40;
    double worst = 0.0;
    for (auto variant : {fock::SplitterVariant::Standard, fock::SplitterVariant::IType}) {
      const auto coherent = variant == fock::SplitterVariant::Standard ? beam_splitter(ket, 0, 1, 0.37)
                                                                       : ibeam_splitter(ket, 0, 1, 0.37);
      worst = std::max(worst, data_distance(expand(coherent, N),
                                            fock::apply_beam_splitter(expand(ket, N), 0, 1, 0.37, variant)));
    }
    add("coherent-algebra", "beam splitters vs number-basis unitaries", worst, 1e-9);

    const Complex g(0.4, -0.3);
    const auto one = make_qubit({0.6, Complex(0, 0.8), 1.1, Encoding::PlusMinus});
    add("coherent-algebra", "displacement vs number-basis exponential",
        data_distance(expand(displace(one, 0, g), N),
                      fock::apply_single_mode(expand(one, N), 0, fock::displacement_matrix(g, N))),
        1e-9);

    const auto dist = photon_count_distribution(ket, 0, 30);
    const auto fdist = fock::count_distribution(expand(ket, N), 0);
    double dd = 0.0;
    for (std::size_t n = 0; n < dist.probabilities.size(); ++n) dd = std::max(dd, std::abs(dist.probabilities[n] - fdist[n]));
    add("coherent-algebra", "count distribution vs number basis", dd, 1e-10);
    add("coherent-algebra", "even cat has no odd counts", parity_probabilities(make_cat(2.0, CatSign::Plus), 0).odd, 1e-14);
  }

  // encodings
  {
    double worst_norm = 0.0, worst_conv = 0.0;
    std::normal_distribution<double> g;
    for (int k = 0; k < 10; ++k) {
      Complex mu(g(rng), g(rng)), nu(g(rng), g(rng));
      const double s = std::sqrt(std::norm(mu) + std::norm(nu));
      mu /= s;
      nu /= s;
      const double alpha = 0.3 + 0.3 * k;
      const CoherentKet raw(1, {{mu, {Complex(-alpha)}}, {nu, {Complex(alpha)}}});
      worst_norm = std::max(worst_norm, std::abs(raw.norm_squared() - norm_factor(alpha, mu, nu)));
      const auto pm = make_qubit({mu, nu, alpha, Encoding::PlusMinus});
      const auto za = make_qubit({mu, nu, alpha, Encoding::ZeroAlpha});
      worst_conv = std::max(worst_conv, 1.0 - std::abs(convert_encoding(pm, Encoding::PlusMinus, Encoding::ZeroAlpha,
                                                                          alpha, 0).inner(za)));
    }
    add("encodings", "norm factor vs Gram norm", worst_norm, 1e-13);
    add("encodings", "PM -> ZeroAlpha displacement", worst_conv, 1e-12);
  }

  // loss-channel
  {
    add("loss-channel", "P_e vs number-basis eigenweights (alpha 1.5, eta 0.7)",
        std::abs(fock_error_prob(1.5, 0.7, 40) - error_prob(1.5, 0.7)), 1e-8);
    double worst = 0.0;
    for (double alpha : {1.0, 2.0}) {
      for (double eta : {0.5, 0.9}) {
        for (auto [mu, nu] : {std::pair<Complex, Complex>{kR, kR}, {0.6, Complex(0, 0.8)}}) {
          worst = std::max(worst, encoding_equivalence_witness(alpha, eta, mu, nu));
        }
      }
    }
    add("loss-channel", "encoding equivalence witness", worst, 1e-12);
  }

  // protocols
  {
    double worst = 0.0;
    for (double a = 0.2; a <= 4.0 + 1e-9; a += 0.2) {
      worst = std::max(worst, std::abs(teleport_success_prob(a, kR, kR, Encoding::PlusMinus) -
                                       teleport_success_prob(a, kR, kR, Encoding::ZeroAlpha)));
    }
    add("protocols", "teleport success PM vs ZeroAlpha", worst, 1e-10);

    const QubitSpec s{0.6, Complex(0, 0.8), 1.5, Encoding::PlusMinus};
    double fail_dev = 0.0, infid = 0.0, both = 0.0;
    for (auto enc : {Encoding::PlusMinus, Encoding::ZeroAlpha}) {
      QubitSpec se = s;
      se.encoding = enc;
      const auto bell = enc == Encoding::PlusMinus ? BellSpec::symmetric(1.5) : BellSpec::zero_alpha(1.5);
      double fail = 0.0;
      for (const auto& o : teleport_outcomes(make_qubit(se), bell, enc)) {
        if (!o.record.success()) {
          fail += o.probability;
          continue;
        }
        infid = std::max(infid, 1.0 - qubit_fidelity(*o.state, se));
        if (enc == Encoding::PlusMinus && *o.record.count("n1") > 0 && *o.record.count("n2") > 0) {
          both += o.probability;
        }
      }
      fail_dev = std::max(fail_dev, std::abs(fail - (1.0 - teleport_success_prob(1.5, s.mu, s.nu, enc))));
    }
    add("protocols", "teleport failure: closed form vs enumeration", fail_dev, 1e-10);
    add("protocols", "teleport successful-outcome infidelity", infid, 1e-10);
    add("protocols", "teleport P(both counters fire)", both, 1e-12);

    const auto joint = make_qubit(s).tensor(make_bell(BellSpec::symmetric(1.5)));
    auto v = expand(joint, 36);
    v = fock::apply_beam_splitter(v, 1, 0, std::numbers::pi / 4.0, fock::SplitterVariant::Standard);
    const auto p1 = fock::number_projection(v, 0, 0);
    const auto p2 = fock::number_projection(p1.state, 0, 0);
    add("protocols", "teleport failure vs number basis",
        std::abs(p1.probability * p2.probability / v.norm_squared() -
                 (1.0 - teleport_success_prob(1.5, s.mu, s.nu, Encoding::PlusMinus))),
        1e-8);

    const double beta = 2.0 * std::exp(-0.3);
    const QubitSpec rs{kR, kR, beta, Encoding::PlusMinus};
    QubitSpec rt = rs;
    rt.alpha = 2.0;
    double rfail = 0.0, rinfid = 0.0;
    for (const auto& o : teleport_outcomes(make_qubit(rs), BellSpec::amplitude_matched(beta, 2.0), Encoding::PlusMinus)) {
      if (!o.record.success()) rfail += o.probability;
      else rinfid = std::max(rinfid, 1.0 - qubit_fidelity(*o.state, rt));
    }
    add("protocols", "restoration failure: closed form vs enumeration",
        std::abs(rfail - (1.0 - restore_success_prob(beta, 2.0, kR, kR))), 1e-10);
    add("protocols", "restoration successful-outcome infidelity", rinfid, 1e-10);

    const QubitSpec worst_in{0.0, 1.0, 2.0, Encoding::ZeroAlpha};
    add("protocols", "Hadamard outcomes sum to 1", std::abs(1.0 - hadamard_report(2.0, worst_in).total_probability), 1e-10);

    const double ha = 1.0;
    const QubitSpec h1{0.0, 1.0, ha, Encoding::ZeroAlpha};
    auto hv = expand(make_qubit(h1).tensor(make_bell(BellSpec::zero_alpha(ha))), 36);
    hv = fock::apply_beam_splitter(hv, 0, 1, hadamard_theta(ha), fock::SplitterVariant::IType);
    const auto d = fock::displacement_matrix(-ha, 36);
    hv = fock::apply_single_mode(fock::apply_single_mode(hv, 0, d), 1, d);
    double hdev = 0.0;
    for (const auto& o : hadamard_report(ha, h1).outcomes) {
      if (o.n_a > 5 || o.n_b > 5) continue;
      const auto qa = fock::number_projection(hv, 0, o.n_a);
      const auto qb = fock::number_projection(qa.state, 0, o.n_b);
      hdev = std::max(hdev, std::abs(qa.probability * qb.probability / hv.norm_squared() - o.probability));
    }
    add("protocols", "Hadamard outcome probabilities vs number basis", hdev, 1e-9);
    add("protocols", "derived Hadamard table equals default (alpha 6)",
        derive_hadamard_correction_table(6.0) == default_hadamard_table() ? 0.0 : 1.0, 0.0);

    const auto q = make_qubit({0.6, 0.8, 1.5, Encoding::PlusMinus});
    const Complex g(1.2, 1.6);
    std::array<double, 3> inf{};
    for (std::size_t k = 0; k < 3; ++k) {
      inf[k] = 1.0 - simulated_displacement_fidelity(q, 0, g, std::abs(g) * std::pow(10.0, k + 1.0));
    }
    add("protocols", "simulated displacement infidelity at |beta| = 1000|gamma|", inf[2], 1e-4);
    add("protocols", "simulated displacement improves with |beta|",
        inf[0] > inf[1] && inf[1] > inf[2] ? 0.0 : 1.0, 0.0);
  }

  // phase-flip-code
  {
    const double a = 2.0;
    const auto q = make_qubit({0.6, 0.8, std::sqrt(3.0) * a, Encoding::PlusMinus});
    const auto block = encode(q, 3);
    const auto ghz = CoherentKet(3, {{0.6, Amplitudes(3, -a)}, {0.8, Amplitudes(3, a)}}).normalized();
    add("phase-flip-code", "encoder output vs repetition state", 1.0 - std::abs(block.inner(ghz)), 1e-12);
    double energy = -mean_photon_number(q, 0);
    for (std::size_t k = 0; k < 3; ++k) energy += mean_photon_number(block, k);
    add("phase-flip-code", "encoder conserves photon number", std::abs(energy), 1e-10);

    double formula = 0.0;
    bool monotone = true;
    for (int k = 0; k <= 100; ++k) {
      const double p = k / 100.0;
      formula = std::max(formula, std::abs(general_code_success(1, p) - code_success_prob(p)));
      if (p < 0.5) monotone &= general_code_success(3, p) >= general_code_success(2, p) - 1e-15;
      if (p > 0.5) monotone &= general_code_success(3, p) <= general_code_success(2, p) + 1e-15;
    }
    add("phase-flip-code", "binomial sum at n = 1 vs 1 - 3p^2 + 2p^3", formula, 1e-15);
    add("phase-flip-code", "success grows with n below p = 1/2", monotone ? 0.0 : 1.0, 0.0);

    double infid = 0.0, locality = 0.0;
    for (std::size_t k = 0; k < 3; ++k) {
      const auto swapped = logical_X(ghz, Encoding::PlusMinus, a, k);
      for (const auto& w : decode_outcomes(swapped, a)) {
        if (k == 2 && w.result.syndrome.comparisons[0].count > 0) locality += w.probability;
        if (w.result.syndrome.anomaly) continue;
        infid = std::max(infid, 1.0 - qubit_fidelity(w.result.state, {0.6, 0.8, w.result.output_alpha,
                                                                      Encoding::PlusMinus}));
      }
    }
    add("phase-flip-code", "single swapped mode corrected on detected branches", infid, 1e-10);
    add("phase-flip-code", "swap on mode 3 leaves comparison (1,2) dark", locality, 1e-12);
  }

  // experiments-cli
  {
    auto tc = RunConfig::from_values(ExperimentId::TeleportSweep, {});
    double cols = 0.0;
    for (double a : tc.alpha.points()) {
      cols = std::max(cols, std::abs(teleport_success_prob(a, kR, kR, Encoding::PlusMinus) -
                                     teleport_success_prob(a, kR, kR, Encoding::ZeroAlpha)));
    }
    add("experiments-cli", "teleport-sweep encoding columns agree", cols, 1e-10);
    auto lc = RunConfig::from_values(ExperimentId::LossSweep, {{"length", "0"}});
    const auto row = loss_sweep(lc).rows.front();
    const double p0 = std::stod(row.substr(row.find(',', row.find(',', row.find(',') + 1) + 1) + 1));
    add("experiments-cli", "loss-sweep at lambdaL = 0 vs teleport at alpha 2",
        std::abs(p0 - teleport_success_prob(2.0, kR, kR, Encoding::PlusMinus)), 1e-12);
    auto ec = RunConfig::from_values(ExperimentId::Ecc, {{"seed", "7"}, {"trials", "20"}, {"pe", "0:0.5:0.25"}});
    add("experiments-cli", "ecc output is reproducible",
        render_csv(ec, ecc_table(ec)) == render_csv(ec, ecc_table(ec)) ? 0.0 : 1.0, 0.0);
  }
  return out;
}

std::string validation_report(const std::vector<ValidationCheck>& checks) {
  std::string s;
  std::size_t failed = 0;
  for (const auto& c : checks) {
    char line[256];
    std::snprintf(line, sizeof line, "%s  %-16s %-58s deviation=%.3e tolerance=%.1e\n", c.pass() ? "PASS" : "FAIL",
                  c.module.c_str(), c.name.c_str(), c.deviation, c.tolerance);
    s += line;
    failed += !c.pass();
  }
  s += std::to_string(checks.size() - failed) + "/" + std::to_string(checks.size()) + " checks passed\n";
  return s;
}

}  // namespace catlink
