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


"""Cat-state qubit teleportation, loss and phase-flip code simulator."""

from ._core import (  # noqa: F401
    CoherentKet,
    ConfigError,
    ContractViolation,
    Encoding,
    QubitSpec,
    __version__,
    beam_splitter,
    code_success_prob,
    displace,
    encoding_equivalence_witness,
    error_prob,
    general_code_success,
    hadamard_postselect,
    make_qubit,
    norm_factor,
    overlap,
    photon_count_distribution,
    qubit_fidelity,
    restore_success_prob,
    run_experiment,
    run_validation,
    teleport_success_prob,
    transmissivity,
)
