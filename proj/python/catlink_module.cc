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


// Python bindings: closed forms, the coherent-state ket, the sweeps and the
// self-check report. Complex numbers map to Python complex.

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <utility>
#include <vector>

#include "catlink/coherent.h"
#include "catlink/encodings.h"
#include "catlink/errors.h"
#include "catlink/experiments.h"
#include "catlink/loss_channel.h"
#include "catlink/phase_flip_code.h"
#include "catlink/protocols.h"

namespace py = pybind11;
using namespace catlink;

namespace {

CoherentKet ket_from_terms(std::size_t modes, const std::vector<std::pair<Complex, Amplitudes>>& terms) {
  std::vector<CoherentTerm> t;
  t.reserve(terms.size());
  for (const auto& [c, a] : terms) t.push_back({c, a});
  return CoherentKet(modes, std::move(t));
}

std::vector<std::pair<Complex, Amplitudes>> ket_terms(const CoherentKet& k) {
  std::vector<std::pair<Complex, Amplitudes>> out;
  for (const auto& t : k.terms()) out.emplace_back(t.coeff, t.amps);
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Cat-state qubits: coherent-state algebra, teleportation, loss and the phase-flip code";
  m.attr("__version__") = CATLINK_VERSION;

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<ContractViolation>(m, "ContractViolation", PyExc_ValueError);

  py::enum_<Encoding>(m, "Encoding")
      .value("PlusMinus", Encoding::PlusMinus)
      .value("ZeroAlpha", Encoding::ZeroAlpha);

  py::class_<QubitSpec>(m, "QubitSpec")
      .def(py::init([](Complex mu, Complex nu, double alpha, Encoding e) { return QubitSpec{mu, nu, alpha, e}; }),
           py::arg("mu"), py::arg("nu"), py::arg("alpha"), py::arg("encoding") = Encoding::PlusMinus)
      .def_readwrite("mu", &QubitSpec::mu)
      .def_readwrite("nu", &QubitSpec::nu)
      .def_readwrite("alpha", &QubitSpec::alpha)
      .def_readwrite("encoding", &QubitSpec::encoding)
      .def("__repr__", [](const QubitSpec& s) { return "QubitSpec(" + s.to_string() + ")"; });

  py::class_<CoherentKet>(m, "CoherentKet")
      .def(py::init(&ket_from_terms), py::arg("modes"), py::arg("terms"),
           "Sum of coeff * |a_1>...|a_M> from a list of (coeff, [a_1, ..., a_M]).")
      .def_property_readonly("modes", &CoherentKet::modes)
      .def_property_readonly("terms", &ket_terms)
      .def("norm_squared", &CoherentKet::norm_squared)
      .def("normalized", &CoherentKet::normalized)
      .def("inner", &CoherentKet::inner, "<self|other>")
      .def("tensor", &CoherentKet::tensor)
      .def("__repr__", [](const CoherentKet& k) {
        return "CoherentKet(modes=" + std::to_string(k.modes()) + ", terms=" + std::to_string(k.terms().size()) + ")";
      });

  m.def("make_qubit", &make_qubit);
  m.def("qubit_fidelity", py::overload_cast<const CoherentKet&, const QubitSpec&>(&qubit_fidelity));
  m.def("overlap", py::overload_cast<Complex, Complex>(&overlap), py::arg("bra"), py::arg("ket"));
  m.def("displace", &displace, py::arg("state"), py::arg("mode"), py::arg("gamma"));
  m.def("beam_splitter", &beam_splitter, py::arg("state"), py::arg("i"), py::arg("j"), py::arg("theta"));
  m.def("photon_count_distribution",
        [](const CoherentKet& k, std::size_t mode, std::size_t n_max) {
          return photon_count_distribution(k, mode, n_max).probabilities;
        },
        py::arg("state"), py::arg("mode"), py::arg("n_max"));

  m.def("norm_factor", &norm_factor, py::arg("alpha"), py::arg("mu"), py::arg("nu"));
  m.def("error_prob", &error_prob, py::arg("alpha"), py::arg("eta"));
  m.def("transmissivity", &transmissivity, py::arg("lambda_per_km"), py::arg("length_km"));
  m.def("encoding_equivalence_witness", &encoding_equivalence_witness, py::arg("alpha"), py::arg("eta"),
        py::arg("mu"), py::arg("nu"));
  m.def("teleport_success_prob", py::overload_cast<double, Complex, Complex, Encoding>(&teleport_success_prob),
        py::arg("alpha"), py::arg("mu"), py::arg("nu"), py::arg("encoding") = Encoding::PlusMinus);
  m.def("restore_success_prob", &restore_success_prob, py::arg("beta"), py::arg("alpha"), py::arg("mu"),
        py::arg("nu"));
  m.def(
      "hadamard_postselect",
      [](double alpha, const QubitSpec& spec, double target) {
        const auto r = hadamard_postselect(alpha, spec, target);
        return py::dict(py::arg("average_fidelity") = r.average_fidelity,
                        py::arg("accepted_probability") = r.accepted_probability,
                        py::arg("total_probability") = r.total_probability);
      },
      py::arg("alpha"), py::arg("spec"), py::arg("target") = 0.99);
  m.def("code_success_prob", &code_success_prob, py::arg("p_error"));
  m.def("general_code_success", &general_code_success, py::arg("n"), py::arg("p_error"));

  m.def(
      "run_experiment",
      [](const std::string& name, const std::map<std::string, std::string>& values) {
        const auto c = RunConfig::from_values(parse_experiment(name), values);
        return render_csv(c, run_experiment(c));
      },
      py::arg("experiment"), py::arg("values") = std::map<std::string, std::string>{},
      "CSV text of a sweep; values use the command-line flag names without dashes.");
  m.def("run_validation", [] {
    std::vector<py::tuple> out;
    for (const auto& c : run_validation()) out.push_back(py::make_tuple(c.module, c.name, c.deviation, c.tolerance, c.pass()));
    return out;
  });
}
