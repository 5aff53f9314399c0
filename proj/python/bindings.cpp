// Copyright 2026 The rsekit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// States cross the boundary as 1-D complex NumPy arrays; the Fock-space
// dimension is the array length.

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rse/optimizer.hpp"
#include "rse/params_io.hpp"
#include "rse/protocol.hpp"

namespace py = pybind11;
using namespace py::literals;
using namespace rse;

namespace {

BosonicState as_state(const CVector& v) { return BosonicState(FockSpace(static_cast<std::size_t>(v.size())), v); }

std::vector<BosonicState> as_states(const std::vector<CVector>& vs) {
  std::vector<BosonicState> out;
  out.reserve(vs.size());
  for (const auto& v : vs) out.push_back(as_state(v));
  return out;
}

void bind_states(py::module_& m) {
  m.def(
      "fock_state", [](std::size_t dim, Level n) { return fock_state(FockSpace(dim), n).amplitudes(); }, "dim"_a,
      "n"_a, "Fock basis vector |n> in a space of the given dimension.");
  m.def(
      "coherent_state", [](std::size_t dim, Complex alpha) { return coherent_state(FockSpace(dim), alpha).amplitudes(); },
      "dim"_a, "alpha"_a, "Truncated coherent state, renormalized.");
  m.def("coherent_amplitude", &coherent_amplitude, "alpha"_a, "n"_a);
  m.def("recommended_dim", &recommended_dim, "alpha"_a, "n_max"_a);
  m.def(
      "inner", [](const CVector& a, const CVector& b) { return inner(as_state(a), as_state(b)); }, "a"_a, "b"_a);
  m.def(
      "fidelity", [](const CVector& a, const CVector& b) { return fidelity(as_state(a), as_state(b)); }, "a"_a, "b"_a);
}

void bind_gates(py::module_& m) {
  py::class_<GateSequence>(m, "GateSequence")
      .def(py::init<>())
      .def("__len__", &GateSequence::size)
      .def("__eq__", [](const GateSequence& a, const GateSequence& b) { return a == b; })
      .def("append", &GateSequence::append, "other"_a)
      .def("to_text", [](const GateSequence& s) { return to_text(s); })
      .def_static("from_text", &parse_gate_sequence, "text"_a)
      .def(
          "unitary", [](const GateSequence& s, std::size_t dim) { return sequence_unitary(s, FockSpace(dim)).matrix(); },
          "dim"_a)
      .def(
          "run",
          [](const GateSequence& s, const CVector& initial) {
            SequenceSimulator sim(FockSpace(static_cast<std::size_t>(initial.size())));
            return sim.run(s, as_state(initial)).amplitudes();
          },
          "initial"_a)
      .def("__repr__", [](const GateSequence& s) { return "<GateSequence with " + std::to_string(s.size()) + " gates>"; });

  m.def(
      "displacement", [](std::size_t dim, Complex alpha) { return displacement(FockSpace(dim), alpha).matrix(); },
      "dim"_a, "alpha"_a);
  m.def(
      "snap", [](std::size_t dim, const PhaseMap& phases) { return snap(FockSpace(dim), phases).matrix(); }, "dim"_a,
      "phases"_a, "SNAP unitary sum_n exp(i theta_n)|n><n| for (n, theta_n) pairs.");
  m.def(
      "rank1_phase", [](const CVector& psi, double phi) { return rank1_phase(as_state(psi), phi).matrix(); }, "psi"_a,
      "phi"_a, "exp(-i phi |psi><psi|) in closed form.");
  m.def("fock_goo", &fock_goo, "n"_a, "phi"_a);
  m.def("coherent_goo", &coherent_goo, "alpha"_a, "phi"_a);
  m.def("multi_fock_goo", &multi_fock_goo, "level_phases"_a);
  m.def("pre_rotation_gate", &pre_rotation_gate, "n"_a);
}

void bind_subspace(py::module_& m) {
  py::class_<SubspaceModel>(m, "SubspaceModel")
      .def_property_readonly("num_targets", &SubspaceModel::num_targets)
      .def_property_readonly("reduced_dim", &SubspaceModel::reduced_dim)
      .def_property_readonly("overlaps", &SubspaceModel::overlaps)
      .def_property_readonly("theta", &SubspaceModel::theta)
      .def_property_readonly("complement_weight", &SubspaceModel::complement_weight)
      .def_property_readonly("reference", [](const SubspaceModel& s) { return s.reference().amplitudes(); })
      .def_property_readonly("complement", [](const SubspaceModel& s) { return s.complement().amplitudes(); })
      .def_property_readonly("basis_matrix", &SubspaceModel::basis_matrix)
      .def("reference_coords", &SubspaceModel::reference_coords)
      .def(
          "project", [](const SubspaceModel& s, const CVector& v) { return project_state(s, as_state(v)); }, "state"_a)
      .def(
          "lift", [](const SubspaceModel& s, const CVector& c) { return lift_state(s, c).amplitudes(); }, "coords"_a)
      .def(
          "leakage", [](const SubspaceModel& s, const CVector& v) { return leakage(s, as_state(v)); }, "state"_a);

  m.def(
      "build_subspace",
      [](const std::vector<CVector>& targets, const CVector& reference) {
        return build_subspace(as_states(targets), as_state(reference));
      },
      "targets"_a, "reference"_a);

  py::class_<ReducedHamiltonian>(m, "ReducedHamiltonian")
      .def_readonly("matrix", &ReducedHamiltonian::matrix)
      .def_readonly("reference_weight", &ReducedHamiltonian::reference_weight)
      .def_readonly("target_weights", &ReducedHamiltonian::target_weights);

  m.def("reduced_hamiltonian", &reduced_hamiltonian, "model"_a, "reference_weight"_a, "target_weights"_a);
  m.def("full_hamiltonian", &full_hamiltonian, "model"_a, "reference_weight"_a, "target_weights"_a);
  m.def("resonance_weight", &resonance_weight, "model"_a, "reference_weight"_a);
  m.def("detuned_weight", &detuned_weight, "model"_a, "reference_weight"_a, "ratio"_a);
  m.def("phase_matching_mismatch", &phase_matching_mismatch, "model"_a, "h"_a);
  m.def(
      "transfer_time",
      [](const SubspaceModel& model, const ReducedHamiltonian& h) {
        const auto t = transfer_time(model, h);
        return py::make_tuple(t.time, t.bound);
      },
      "model"_a, "h"_a, "Returns (time, bound).");
}

void bind_protocol(py::module_& m) {
  py::class_<ProtocolParams>(m, "ProtocolParams")
      .def(py::init([](std::size_t iterations, std::size_t targets, bool final_layer) {
             return ProtocolParams::zeros(iterations, targets, final_layer);
           }),
           "iterations"_a, "targets"_a, "final_layer"_a = false)
      .def_readwrite("coherent_phases", &ProtocolParams::coherent_phases)
      .def_readwrite("fock_phases", &ProtocolParams::fock_phases)
      .def_readwrite("final_phases", &ProtocolParams::final_phases)
      .def_property_readonly("iterations", &ProtocolParams::iterations)
      .def_property_readonly("num_targets", &ProtocolParams::num_targets)
      .def_property_readonly("num_angles", &ProtocolParams::num_angles)
      .def("flatten", &ProtocolParams::flatten)
      .def("assign", &ProtocolParams::assign, "flat"_a)
      .def("wrap", &ProtocolParams::wrap);

  m.def("discrete_protocol", &discrete_protocol, "params"_a, "alpha"_a, "levels"_a);
  m.def("trotter_compile", &trotter_compile, "alpha"_a, "levels"_a, "reference_weight"_a, "target_weights"_a, "t"_a,
        "steps"_a);
  m.def("evolve_reduced", &evolve_reduced, "h"_a, "t"_a, "coords"_a);
  m.def(
      "evolve_full",
      [](const SubspaceModel& model, const ReducedHamiltonian& h, double t, const CVector& state) {
        return evolve_full(model, h, t, as_state(state)).amplitudes();
      },
      "model"_a, "h"_a, "t"_a, "state"_a);
  m.def(
      "fidelity_trace",
      [](const SubspaceModel& model, const ReducedHamiltonian& h, const CVector& initial, const CVector& target,
         const std::vector<double>& times) {
        const ContinuousEvolver ev(model, h, as_state(initial));
        return fidelity_trace(ev, as_state(target), times).values;
      },
      "model"_a, "h"_a, "initial"_a, "target"_a, "times"_a);
  m.def(
      "first_passage",
      [](const std::vector<double>& times, const std::vector<double>& values, double threshold) {
        FidelityTrace tr;
        tr.times = times;
        tr.values = values;
        return first_passage(tr, threshold);
      },
      "times"_a, "values"_a, "threshold"_a);
  m.def("uniform_grid", &uniform_grid, "start"_a, "stop"_a, "step"_a);
}

void bind_optimizer(py::module_& m) {
  py::enum_<FinalPhaseLayer>(m, "FinalPhaseLayer")
      .value("AUTO", FinalPhaseLayer::kAuto)
      .value("ON", FinalPhaseLayer::kOn)
      .value("OFF", FinalPhaseLayer::kOff);

  py::class_<OptimizerConfig>(m, "OptimizerConfig")
      .def(py::init<>())
      .def_readwrite("restarts", &OptimizerConfig::restarts)
      .def_readwrite("max_evals", &OptimizerConfig::max_evals)
      .def_readwrite("tolerance", &OptimizerConfig::tolerance)
      .def_readwrite("seed", &OptimizerConfig::seed)
      .def_readwrite("stop_at", &OptimizerConfig::stop_at)
      .def_readwrite("final_phase", &OptimizerConfig::final_phase);

  py::class_<OptimizeResult>(m, "OptimizeResult")
      .def_readonly("params", &OptimizeResult::params)
      .def_readonly("fidelity", &OptimizeResult::fidelity)
      .def_readonly("restart", &OptimizeResult::restart)
      .def_readonly("evaluations", &OptimizeResult::evaluations);

  py::class_<IterationScan>(m, "IterationScan")
      .def_readonly("iterations", &IterationScan::iterations)
      .def_readonly("best_fidelity", &IterationScan::best_fidelity)
      .def_readonly("result", &IterationScan::result);

  m.def("reduced_objective", &reduced_objective, "params"_a, "model"_a, "target_coords"_a);
  m.def("objective_gradient", &objective_gradient, "params"_a, "model"_a, "target_coords"_a);
  m.def("optimize", &optimize, "model"_a, "target_coords"_a, "iterations"_a, "config"_a = OptimizerConfig{},
        py::call_guard<py::gil_scoped_release>());
  m.def("minimal_iterations", &minimal_iterations, "model"_a, "target_coords"_a, "max_iterations"_a, "threshold"_a,
        "config"_a = OptimizerConfig{}, py::call_guard<py::gil_scoped_release>());
  m.def(
      "fit_scaling_exponent",
      [](const std::vector<std::pair<double, double>>& samples) {
        const auto f = fit_scaling_exponent(samples);
        return py::make_tuple(f.exponent, f.intercept);
      },
      "samples"_a, "Least-squares log-log slope; returns (exponent, intercept).");

  m.def(
      "params_to_json",
      [](const ProtocolParams& params, double fidelity, std::uint64_t seed, Complex alpha, const std::vector<Level>& levels,
         const std::vector<Complex>& target) {
        return params_to_json({params, fidelity, seed, alpha, levels, target});
      },
      "params"_a, "achieved_fidelity"_a, "seed"_a, "alpha"_a, "levels"_a, "target"_a = std::vector<Complex>{});
  m.def(
      "params_from_json", [](const std::string& text) { return params_from_json(text).params; }, "text"_a);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Resonant subspace engineering of bosonic states";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_RuntimeError);

  bind_states(m);
  bind_gates(m);
  bind_subspace(m);
  bind_protocol(m);
  bind_optimizer(m);
}
