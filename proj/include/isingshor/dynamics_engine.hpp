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

#ifndef ISINGSHOR_DYNAMICS_ENGINE_HPP_
#define ISINGSHOR_DYNAMICS_ENGINE_HPP_

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "isingshor/chain_model.hpp"
#include "isingshor/pulse_program.hpp"

namespace isingshor {

using Amplitude = std::complex<double>;

/// Interaction-picture amplitudes c_p, one per basis state.
class StateVector {
 public:
  /// The all-ground state |0...0>.
  explicit StateVector(int num_spins);
  StateVector(int num_spins, std::vector<Amplitude> amplitudes);
  static StateVector basis(int num_spins, BasisState state);

  int num_spins() const { return num_spins_; }
  std::size_t dimension() const { return amplitudes_.size(); }

  Amplitude& operator[](std::size_t p) { return amplitudes_[p]; }
  const Amplitude& operator[](std::size_t p) const { return amplitudes_[p]; }
  std::span<Amplitude> amplitudes() { return amplitudes_; }
  std::span<const Amplitude> amplitudes() const { return amplitudes_; }

  double norm_squared() const;
  double probability(std::size_t p) const { return std::norm(amplitudes_.at(p)); }
  std::vector<double> probabilities() const;

 private:
  int num_spins_;
  std::vector<Amplitude> amplitudes_;
};

struct IntegratorConfig {
  /// Steps per period of the fastest effective oscillation in a pulse.
  int steps_per_period = 96;
  /// Allowed drift of sum |c_p|^2 across one pulse.
  double norm_tolerance = 1e-9;
  /// Allowed distance of the input norm from 1. Looser than norm_tolerance
  /// because per-pulse drift accumulates over a sequence.
  double input_norm_tolerance = 1e-6;
  /// Record a trace sample every this many steps; no trace when unset.
  std::optional<std::size_t> trace_stride;
  /// Basis states whose probabilities are traced.
  std::vector<std::size_t> traced_states;

  void validate() const;
};

struct TraceSample {
  double t;
  std::vector<double> probabilities;
};

struct TimeTrace {
  std::vector<std::size_t> states;
  std::vector<TraceSample> samples;
};

/// CSV with header `t,prob_p<index>...`, one column per traced state in the
/// order given by `trace.states`.
void write_trace_csv(std::ostream& out, const TimeTrace& trace);

struct Evolution {
  StateVector state;
  std::optional<TimeTrace> trace;
};

/// Right-hand side dc/dt of the interaction-picture equation of motion at
/// absolute time t. Every single-flip coupling in `table` contributes.
std::vector<Amplitude> derivative(const StateVector& state, double t, const Pulse& pulse,
                                  const TransitionTable& table);

/// Largest effective precession rate sqrt(detuning^2 + rabi^2) over the
/// table's transitions during `pulse`.
double max_oscillation_frequency(const Pulse& pulse, const TransitionTable& table);

/// Number of fixed RK4 steps used for `pulse`.
std::size_t step_count(const Pulse& pulse, const TransitionTable& table, const IntegratorConfig& config);

/// Integrates one pulse from t_start to t_start + duration with the classical
/// fixed-step fourth-order Runge-Kutta scheme. Throws IntegrationError when
/// the norm drifts by more than config.norm_tolerance.
Evolution evolve_pulse(const StateVector& state, const Pulse& pulse, double t_start,
                       const TransitionTable& table, const IntegratorConfig& config);

Evolution evolve_sequence(const StateVector& state, const PulseSequence& sequence,
                          const TransitionTable& table, const IntegratorConfig& config);

}  // namespace isingshor

#endif  // ISINGSHOR_DYNAMICS_ENGINE_HPP_
