// Copyright 2026 The isingshor Authors
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

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "isingshor/analytic_oracles.hpp"
#include "isingshor/chain_model.hpp"
#include "isingshor/dynamics_engine.hpp"
#include "isingshor/errors.hpp"
#include "isingshor/experiment_runner.hpp"
#include "isingshor/pulse_program.hpp"
#include "isingshor/shor_pipeline.hpp"

namespace py = pybind11;
using namespace isingshor;

namespace {

ChainParams make_params(double delta_omega, double ising, double base_freq, int num_spins) {
  ChainParams p;
  p.num_spins = num_spins;
  p.base_frequency = base_freq;
  p.frequency_step = delta_omega;
  p.ising_constant = ising;
  p.validate();
  return p;
}

IntegratorConfig make_config(int steps_per_period) {
  IntegratorConfig c;
  c.steps_per_period = steps_per_period;
  return c;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Pulse-level simulation of Shor's algorithm for N = 4 on an Ising spin chain";

  py::register_exception<IntegrationError>(m, "IntegrationError", PyExc_RuntimeError);
  py::register_exception<ExtractionError>(m, "ExtractionError", PyExc_RuntimeError);
  py::register_exception<CompilationError>(m, "CompilationError", PyExc_RuntimeError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);

  py::class_<ChainParams>(m, "ChainParams")
      .def(py::init(&make_params), py::arg("delta_omega") = 10.0, py::arg("ising") = 1.0,
           py::arg("base_freq") = 100.0, py::arg("num_spins") = 4)
      .def_readwrite("num_spins", &ChainParams::num_spins)
      .def_readwrite("base_frequency", &ChainParams::base_frequency)
      .def_readwrite("frequency_step", &ChainParams::frequency_step)
      .def_readwrite("ising_constant", &ChainParams::ising_constant)
      .def("warnings", &ChainParams::warnings)
      .def("__repr__", [](const ChainParams& p) {
        std::ostringstream s;
        s << "ChainParams(num_spins=" << p.num_spins << ", base_frequency=" << p.base_frequency
          << ", frequency_step=" << p.frequency_step << ", ising_constant=" << p.ising_constant << ")";
        return s.str();
      });

  py::enum_<PulseKind>(m, "PulseKind")
      .value("half_pi", PulseKind::half_pi)
      .value("pi", PulseKind::pi)
      .value("custom", PulseKind::custom);

  py::class_<Pulse>(m, "Pulse")
      .def_readonly("frequency", &Pulse::frequency)
      .def_readonly("phase", &Pulse::phase)
      .def_readonly("rabi", &Pulse::rabi)
      .def_readonly("duration", &Pulse::duration)
      .def_readonly("kind", &Pulse::kind)
      .def_property_readonly("angle", &Pulse::angle);

  py::class_<PulseSequence>(m, "PulseSequence")
      .def(py::init<>())
      .def(py::init<std::vector<Pulse>>())
      .def_property_readonly("pulses", &PulseSequence::pulses)
      .def_property_readonly("start_times", &PulseSequence::start_times)
      .def_property_readonly("total_duration", &PulseSequence::total_duration)
      .def("__len__", &PulseSequence::size)
      .def("__getitem__", [](const PulseSequence& s, std::size_t i) {
        if (i >= s.size()) throw py::index_error();
        return s[i];
      })
      .def("to_table", [](const PulseSequence& s) {
        std::ostringstream out;
        write_pulse_table(out, s);
        return out.str();
      })
      .def_static("from_table", [](const std::string& text) {
        std::istringstream in(text);
        return read_pulse_table(in);
      });

  m.def("make_pulse", &make_pulse, py::arg("kind"), py::arg("frequency"), py::arg("phase"), py::arg("rabi"));
  m.def("make_custom_pulse", &make_custom_pulse, py::arg("frequency"), py::arg("phase"), py::arg("rabi"),
        py::arg("duration"));
  m.def("rescale_rabi", &rescale_rabi, py::arg("sequence"), py::arg("rabi_half_pi"), py::arg("rabi_pi"));

  m.def("spin_frequency", &spin_frequency, py::arg("params"), py::arg("spin"));
  m.def(
      "transition_frequency",
      [](const ChainParams& p, std::size_t state, int spin) { return transition_frequency(p, BasisState(state), spin); },
      py::arg("params"), py::arg("state"), py::arg("spin"));
  m.def("resonant_frequency_catalog", &resonant_frequency_catalog, py::arg("params"), py::arg("spin"));

  m.def("effective_rabi", &effective_rabi, py::arg("rabi"), py::arg("detuning"));
  m.def(
      "two_level_step",
      [](std::complex<double> c_upper, std::complex<double> c_lower, double rabi, double detuning, double duration) {
        const TwoLevelResult r = two_level_step(c_upper, c_lower, rabi, detuning, duration);
        return py::make_tuple(r.c_upper, r.c_lower);
      },
      py::arg("c_upper"), py::arg("c_lower"), py::arg("rabi"), py::arg("detuning"), py::arg("duration"));
  m.def(
      "design_rabi",
      [](double detuning, PulseKind kind, int k) { return design_rabi(detuning, kind, k).rabi; },
      py::arg("detuning"), py::arg("kind"), py::arg("k"));
  m.def("design_rabi_for_chain", &design_rabi_for_chain, py::arg("ising"), py::arg("kind"), py::arg("k"));

  m.def("compile_shor4", &compile_shor4, py::arg("params"), py::arg("rabi_half_pi"), py::arg("rabi_pi"));

  m.def(
      "evolve",
      [](const ChainParams& p, const PulseSequence& seq, int steps_per_period) {
        py::gil_scoped_release release;
        const TransitionTable table = build_transition_table(p);
        const StateVector s = evolve_sequence(StateVector(p.num_spins), seq, table, make_config(steps_per_period)).state;
        return std::vector<Amplitude>(s.amplitudes().begin(), s.amplitudes().end());
      },
      py::arg("params"), py::arg("sequence"), py::arg("steps_per_period") = IntegratorConfig{}.steps_per_period,
      "Amplitudes after the sequence, starting from the all-ground state.");

  m.def(
      "run_shor",
      [](const ChainParams& p, double rabi_half_pi, double rabi_pi, int steps_per_period) {
        ShorRun run = [&] {
          py::gil_scoped_release release;
          return run_shor(p, rabi_half_pi, rabi_pi, make_config(steps_per_period));
        }();
        py::dict out;
        out["probabilities"] = run.distribution.probabilities;
        out["x_distribution"] = run.distribution.x_distribution;
        out["period"] = run.period;
        out["factor"] = run.factor;
        out["sequence"] = run.sequence;
        return out;
      },
      py::arg("params") = ChainParams{}, py::arg("rabi_half_pi") = 0.1, py::arg("rabi_pi") = 0.1,
      py::arg("steps_per_period") = IntegratorConfig{}.steps_per_period);

  m.def("reverse_bits", &reverse_bits, py::arg("value"), py::arg("width"));
  m.def(
      "extract_period",
      [](const std::vector<double>& xdist, std::size_t x_states, double threshold) {
        return extract_period(xdist, x_states, threshold);
      },
      py::arg("x_distribution"), py::arg("x_states"), py::arg("peak_threshold") = 0.1);
  m.def("extract_factor", &extract_factor, py::arg("modulus"), py::arg("base"), py::arg("period"));

  m.def("perturb_phases", &perturb_phases, py::arg("sequence"), py::arg("epsilon"), py::arg("seed"));
  m.def("perturb_durations", &perturb_durations, py::arg("sequence"), py::arg("epsilon"), py::arg("seed"));

  m.def(
      "run_experiment",
      [](const std::string& kind, const ChainParams& params, double rabi_half_pi, double rabi_pi,
         std::vector<double> grid, std::vector<double> epsilons, std::uint64_t seed, int trials, int threads,
         std::size_t traced_state) {
        static const std::pair<const char*, ExperimentKind> kinds[] = {
            {"single_run", ExperimentKind::single_run},     {"sweep_rabi", ExperimentKind::sweep_rabi},
            {"sweep_detuning", ExperimentKind::sweep_detuning}, {"trace", ExperimentKind::trace},
            {"phase_noise", ExperimentKind::phase_noise},   {"duration_noise", ExperimentKind::duration_noise},
            {"minimal_time", ExperimentKind::minimal_time}};
        ExperimentSpec spec;
        bool found = false;
        for (const auto& [name, k] : kinds) {
          if (kind == name) {
            spec.kind = k;
            found = true;
          }
        }
        if (!found) throw DomainError("unknown experiment kind '" + kind + "'");
        spec.params = params;
        spec.rabi = {rabi_half_pi, rabi_pi};
        spec.grid_values = std::move(grid);
        if (!epsilons.empty()) spec.epsilons = std::move(epsilons);
        spec.seed = seed;
        spec.trials = trials;
        spec.threads = threads;
        spec.traced_state = traced_state;
        std::ostringstream out;
        {
          py::gil_scoped_release release;
          emit_csv(run_experiment(spec), out);
        }
        return out.str();
      },
      py::arg("kind"), py::arg("params") = ChainParams{}, py::arg("rabi_half_pi") = 0.1, py::arg("rabi_pi") = 0.1,
      py::arg("grid") = std::vector<double>{}, py::arg("epsilons") = std::vector<double>{}, py::arg("seed") = 0,
      py::arg("trials") = 20, py::arg("threads") = 0, py::arg("traced_state") = 3,
      "Runs one experiment and returns its CSV table as a string.");
}
