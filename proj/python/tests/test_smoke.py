# Copyright 2026 The catlink Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.


import math

import numpy as np
import pytest

import catlink

R = math.sqrt(0.5)


def number_amplitudes(a, n_max=80):
    n = np.arange(n_max + 1)
    log_fact = np.array([math.lgamma(k + 1) for k in n])
    mags = np.exp(-abs(a) ** 2 / 2 + n * np.log(abs(a) + 1e-300) - log_fact / 2)
    return mags * np.exp(1j * np.angle(a) * n)


def test_version():
    assert catlink.__version__ == "0.1.0"


def test_overlap_matches_number_basis_sum():
    a, b = 1.3 + 0.2j, -0.7 + 0.4j
    direct = np.vdot(number_amplitudes(b), number_amplitudes(a))
    assert abs(catlink.overlap(b, a) - direct) < 1e-12


def test_ket_round_trip_and_beam_splitter():
    ket = catlink.CoherentKet(2, [(1.0, [1.0, 0.0])])
    out = catlink.beam_splitter(ket, 0, 1, math.pi / 4)
    (coeff, amps), = out.terms
    assert amps[0] == pytest.approx(R)
    assert amps[1] == pytest.approx(R)
    assert out.norm_squared() == pytest.approx(1.0, abs=1e-14)
    dist = catlink.photon_count_distribution(catlink.CoherentKet(1, [(1.0, [1.5])]), 0, 40)
    assert sum(dist) == pytest.approx(1.0, abs=1e-12)
    assert dist[2] == pytest.approx(math.exp(-2.25) * 2.25**2 / 2, rel=1e-12)


def test_closed_forms():
    assert catlink.error_prob(1.5, 0.7) == pytest.approx(0.370379869677054272, abs=1e-15)
    assert 1 - catlink.teleport_success_prob(2.0, R, R) == pytest.approx(0.000670925180302341289, rel=1e-12)
    pm = catlink.teleport_success_prob(1.3, 0.6, 0.8j, catlink.Encoding.PlusMinus)
    za = catlink.teleport_success_prob(1.3, 0.6, 0.8j, catlink.Encoding.ZeroAlpha)
    assert abs(pm - za) < 1e-10
    assert catlink.encoding_equivalence_witness(2.0, 0.5, R, R) < 1e-12
    for p in (0.0, 0.1, 0.37, 0.5):
        assert catlink.general_code_success(1, p) == pytest.approx(1 - 3 * p**2 + 2 * p**3, abs=1e-15)


def test_hadamard_anchor():
    spec = catlink.QubitSpec(0.0, 1.0, 2.0, catlink.Encoding.ZeroAlpha)
    r = catlink.hadamard_postselect(2.0, spec, 0.99)
    assert r["accepted_probability"] == pytest.approx(0.29, abs=0.02)
    assert r["total_probability"] == pytest.approx(1.0, abs=1e-10)


def test_qubit_fidelity_of_itself():
    spec = catlink.QubitSpec(0.6, 0.8j, 1.2)
    assert catlink.qubit_fidelity(catlink.make_qubit(spec), spec) == pytest.approx(1.0, abs=1e-14)


def test_run_experiment_csv():
    text = catlink.run_experiment("teleport-sweep", {"alpha": "1:2:1"})
    lines = text.splitlines()
    assert lines[0] == "# catlink 0.1.0"
    assert lines[4] == "alpha,p_success_pm,p_success_zeroalpha,p_fail"
    assert len(lines) == 7
    again = catlink.run_experiment("ecc", {"seed": "3", "trials": "20", "pe": "0:0.5:0.5"})
    assert again == catlink.run_experiment("ecc", {"seed": "3", "trials": "20", "pe": "0:0.5:0.5"})


def test_config_errors_raise_value_error():
    with pytest.raises(ValueError):
        catlink.run_experiment("ecc", {})
    with pytest.raises(ValueError):
        catlink.run_experiment("teleport-sweep", {"bogus": "1"})


def test_validation_passes():
    checks = catlink.run_validation()
    assert checks
    assert all(ok for *_, ok in checks)
