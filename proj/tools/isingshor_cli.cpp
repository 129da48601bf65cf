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

// Command-line front end: one subcommand per experiment.
//
// Exit codes: 0 success, 1 invalid input, 2 integration failure,
// 3 period or factor extraction failure.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <limits>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "isingshor/analytic_oracles.hpp"
#include "isingshor/errors.hpp"
#include "isingshor/experiment_runner.hpp"
#include "isingshor/shor_pipeline.hpp"

namespace {

using namespace isingshor;

struct Options {
  double delta_omega = 10.0;
  double ising = 1.0;
  double base_freq = 100.0;
  std::optional<double> rabi;
  std::optional<double> rabi_pi;
  std::optional<double> rabi_half_pi;
  int steps_per_period = 96;
  std::string out;
  std::string format = "csv";
  std::string sequence_file;
  int threads = 0;
  // Grid.
  double start = 0.1;
  double stop = 0.1;
  int points = 1;
  std::vector<double> values;
  // Trace.
  std::size_t state = 3;
  std::size_t stride = 16;
  // Noise.
  std::uint64_t seed = 20260101;
  std::vector<double> epsilons;
  int trials = 20;
  // Design.
  int max_k = 5;
};

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--delta-omega", o.delta_omega, "Frequency step between neighbouring spins")->capture_default_str();
  cmd->add_option("--ising", o.ising, "Ising coupling J")->capture_default_str();
  cmd->add_option("--base-freq", o.base_freq, "Frequency of spin 0")->capture_default_str();
  cmd->add_option("--rabi", o.rabi, "Rabi frequency for every pulse (default 0.1)");
  cmd->add_option("--rabi-pi", o.rabi_pi, "Rabi frequency of pi pulses");
  cmd->add_option("--rabi-half-pi", o.rabi_half_pi, "Rabi frequency of pi/2 pulses");
  cmd->add_option("--steps-per-period", o.steps_per_period, "RK4 steps per fastest oscillation")->capture_default_str();
  cmd->add_option("--sequence-file", o.sequence_file, "Pulse table replacing the built-in protocol");
  cmd->add_option("--out", o.out, "Output path (default stdout)");
  cmd->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "text"}))->capture_default_str();
  cmd->add_option("--threads", o.threads, "Worker threads, 0 = all cores")->capture_default_str();
}

void add_grid(CLI::App* cmd, Options& o, double start, double stop, int points) {
  o.start = start;
  o.stop = stop;
  o.points = points;
  cmd->add_option("--start", o.start, "First grid value")->capture_default_str();
  cmd->add_option("--stop", o.stop, "Last grid value")->capture_default_str();
  cmd->add_option("--points", o.points, "Number of grid values")->capture_default_str();
  cmd->add_option("--values", o.values, "Explicit grid values (overrides start/stop/points)")->delimiter(',');
}

void add_noise(CLI::App* cmd, Options& o) {
  cmd->add_option("--epsilon", o.epsilons, "Noise half-widths")->delimiter(',');
  cmd->add_option("--trials", o.trials, "Trials per epsilon")->capture_default_str();
  cmd->add_option("--seed", o.seed, "Base seed; trial i uses seed + i")->capture_default_str();
}

ExperimentSpec make_spec(const Options& o, ExperimentKind kind) {
  ExperimentSpec s;
  s.kind = kind;
  s.params.base_frequency = o.base_freq;
  s.params.frequency_step = o.delta_omega;
  s.params.ising_constant = o.ising;
  const double common = o.rabi.value_or(0.1);
  s.rabi.half_pi = o.rabi_half_pi.value_or(common);
  s.rabi.pi = o.rabi_pi.value_or(common);
  s.grid = {o.start, o.stop, o.points};
  s.grid_values = o.values;
  s.seed = o.seed;
  s.trials = o.trials;
  s.threads = o.threads;
  s.traced_state = o.state;
  s.trace_stride = o.stride;
  s.integrator.steps_per_period = o.steps_per_period;
  if (!o.epsilons.empty()) s.epsilons = o.epsilons;
  if (!o.sequence_file.empty()) s.sequence = load_pulse_table(o.sequence_file);
  for (const std::string& w : s.params.warnings()) std::cerr << "warning: " << w << '\n';
  return s;
}

// Writes through `body` to --out or stdout.
void write_output(const Options& o, const std::function<void(std::ostream&)>& body) {
  if (o.out.empty()) {
    body(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream file(o.out);
  if (!file) throw std::runtime_error("cannot open " + o.out + " for writing");
  body(file);
  file.flush();
  if (!file) throw std::runtime_error("write failed for " + o.out);
}

void emit(const Options& o, const ExperimentResult& r) {
  write_output(o, [&](std::ostream& out) {
    if (o.format == "csv") {
      emit_csv(r, out);
    } else {
      emit_text(r, out);
    }
  });
}

void run_design(const Options& o) {
  if (o.max_k < 1) throw DomainError("--max-k must be >= 1");
  write_output(o, [&](std::ostream& out) {
    out << std::setprecision(std::numeric_limits<double>::max_digits10);
    if (o.format == "csv") {
      out << "k,rabi_half_pi,rabi_pi\n";
    } else {
      out << "2*pi*k Rabi frequencies for J = " << o.ising << " (|detuning| = " << 2 * o.ising << ")\n";
    }
    for (int k = 1; k <= o.max_k; ++k) {
      const double h = design_rabi_for_chain(o.ising, PulseKind::half_pi, k);
      const double p = design_rabi_for_chain(o.ising, PulseKind::pi, k);
      if (o.format == "csv") {
        out << k << ',' << h << ',' << p << '\n';
      } else {
        out << "  k=" << k << "  half_pi " << std::setprecision(6) << h << "  pi " << p
            << std::setprecision(std::numeric_limits<double>::max_digits10) << '\n';
      }
    }
  });
}

void run_factor(const Options& o) {
  const ExperimentSpec s = make_spec(o, ExperimentKind::single_run);
  IntegratorConfig config = s.integrator;
  const PulseSequence seq = s.sequence ? *s.sequence : compile_shor4(s.params, s.rabi.half_pi, s.rabi.pi);
  const TransitionTable table = build_transition_table(s.params);
  const StateVector final_state = evolve_sequence(StateVector(s.params.num_spins), seq, table, config).state;
  const ShorSpec spec;
  const MeasurementDistribution dist = measure(final_state, spec);

  // Report the distribution before extraction so a failed run still shows its data.
  std::optional<int> period;
  std::optional<std::int64_t> factor;
  std::optional<ExtractionError> failure;
  try {
    period = extract_period(dist.x_distribution, spec.x_states());
    factor = extract_factor(spec.modulus, spec.base, *period);
  } catch (const ExtractionError& e) {
    failure = e;
  }

  write_output(o, [&](std::ostream& out) {
    out << std::setprecision(std::numeric_limits<double>::max_digits10);
    if (o.format == "csv") {
      out << "quantity,index,value\n";
      for (std::size_t p = 0; p < dist.probabilities.size(); ++p) out << "probability," << p << ',' << dist.probabilities[p] << '\n';
      for (std::size_t x = 0; x < dist.x_distribution.size(); ++x) out << "x_probability," << x << ',' << dist.x_distribution[x] << '\n';
      if (period) out << "period,," << *period << '\n';
      if (factor) out << "factor,," << *factor << '\n';
      return;
    }
    out << "pulse sequence:\n";
    write_pulse_table(out, seq);
    out << "\nprobabilities:\n";
    for (std::size_t p = 0; p < dist.probabilities.size(); ++p) {
      out << "  |" << p << ">  " << dist.probabilities[p] << '\n';
    }
    out << "\nx distribution (bit-reversed):\n";
    for (std::size_t x = 0; x < dist.x_distribution.size(); ++x) out << "  x=" << x << "  " << dist.x_distribution[x] << '\n';
    if (period) out << "\nperiod T = " << *period << '\n';
    if (factor) out << "factor of " << spec.modulus << " = " << *factor << '\n';
  });
  if (failure) throw *failure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pulse-level simulation of Shor's algorithm for N = 4 on an Ising spin chain"};
  app.require_subcommand(1);
  Options o;

  auto* run = app.add_subcommand("run", "Single run of the built-in protocol; prints all 16 probabilities");
  add_common(run, o);
  auto* sweep_rabi_cmd = app.add_subcommand("sweep-rabi", "Sweep the Rabi frequency with rotation angles fixed");
  add_common(sweep_rabi_cmd, o);
  add_grid(sweep_rabi_cmd, o, 0.1, 0.6, 51);
  auto* sweep_detuning_cmd = app.add_subcommand("sweep-detuning", "Sweep the frequency step between spins");
  add_common(sweep_detuning_cmd, o);
  add_grid(sweep_detuning_cmd, o, 3.0, 10.0, 8);
  auto* trace = app.add_subcommand("trace", "Time trace of one basis-state probability");
  add_common(trace, o);
  trace->add_option("--state", o.state, "Basis state to trace")->capture_default_str();
  trace->add_option("--stride", o.stride, "Sample every this many RK4 steps")->capture_default_str();
  auto* noise_phase = app.add_subcommand("noise-phase", "Random pulse phases in [-eps, eps]");
  add_common(noise_phase, o);
  add_noise(noise_phase, o);
  auto* noise_duration = app.add_subcommand("noise-duration", "Random pulse durations in [tau-eps, tau+eps]");
  add_common(noise_duration, o);
  add_noise(noise_duration, o);
  auto* minimal = app.add_subcommand("minimal-time", "Shortest 2*pi*k-compensated run (k = 1)");
  add_common(minimal, o);
  auto* design = app.add_subcommand("design", "Table of 2*pi*k Rabi frequencies");
  design->add_option("--ising", o.ising, "Ising coupling J")->capture_default_str();
  design->add_option("--max-k", o.max_k, "Largest k")->capture_default_str();
  design->add_option("--out", o.out, "Output path (default stdout)");
  design->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "text"}))->capture_default_str();
  auto* factor = app.add_subcommand("factor", "Full pipeline: pulses, probabilities, period and factor");
  add_common(factor, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (*run) {
      emit(o, run_single(make_spec(o, ExperimentKind::single_run)));
    } else if (*sweep_rabi_cmd) {
      emit(o, sweep_rabi(make_spec(o, ExperimentKind::sweep_rabi)));
    } else if (*sweep_detuning_cmd) {
      emit(o, sweep_detuning(make_spec(o, ExperimentKind::sweep_detuning)));
    } else if (*trace) {
      emit(o, run_trace(make_spec(o, ExperimentKind::trace)));
    } else if (*noise_phase) {
      if (o.epsilons.empty()) o.epsilons = {0.0, 0.1, 0.5, 0.8};
      emit(o, run_noise_study(make_spec(o, ExperimentKind::phase_noise)));
    } else if (*noise_duration) {
      if (o.epsilons.empty()) o.epsilons = {0.0, 1.0, 2.0};
      emit(o, run_noise_study(make_spec(o, ExperimentKind::duration_noise)));
    } else if (*minimal) {
      emit(o, run_minimal_time(make_spec(o, ExperimentKind::minimal_time)));
    } else if (*design) {
      run_design(o);
    } else if (*factor) {
      run_factor(o);
    }
  } catch (const IntegrationError& e) {
    std::cerr << "integration error: " << e.what() << '\n';
    return 2;
  } catch (const ExtractionError& e) {
    std::cerr << "extraction error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
