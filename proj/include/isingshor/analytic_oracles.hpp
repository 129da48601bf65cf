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

#ifndef ISINGSHOR_ANALYTIC_ORACLES_HPP_
#define ISINGSHOR_ANALYTIC_ORACLES_HPP_

#include <complex>

#include "isingshor/chain_model.hpp"
#include "isingshor/dynamics_engine.hpp"
#include "isingshor/pulse_program.hpp"

namespace isingshor {

/// Amplitudes of an isolated transition after one pulse. Exact only up to a
/// phase per amplitude, so compare probabilities.
struct TwoLevelResult {
  std::complex<double> c_upper;
  std::complex<double> c_lower;
};

/// A Rabi frequency for which a transition detuned by `detuning` precesses by
/// exactly 2*pi*k during a pulse of the given kind.
struct TwoPiKDesign {
  double rabi;
  int k;
  double detuning;
  PulseKind pulse_kind;
};

/// sqrt(rabi^2 + detuning^2).
double effective_rabi(double rabi, double detuning);

/// Closed-form solution for the pair (upper, lower) driven off resonance,
/// detuning = E_upper - E_lower - pulse frequency.
TwoLevelResult two_level_step(std::complex<double> c_upper, std::complex<double> c_lower, double rabi,
                              double detuning, double duration);

/// Ideal selective rotation: every transition whose gap matches the pulse
/// frequency (to 1e-9 * frequency_step) is rotated by rabi * duration, all
/// other amplitudes are left alone. Throws DomainError if nothing matches.
StateVector resonant_propagate(const StateVector& state, const Pulse& pulse, const ChainParams& params,
                               const TransitionTable& table);

/// pi pulse:   rabi = |detuning| / sqrt(4k^2 - 1)
/// pi/2 pulse: rabi = |detuning| / sqrt(16k^2 - 1)
TwoPiKDesign design_rabi(double detuning_abs, PulseKind pulse_kind, int k);

/// design_rabi for the nearest non-resonant transition in a chain, |detuning| = 2J.
double design_rabi_for_chain(double ising_constant, PulseKind pulse_kind, int k);

}  // namespace isingshor

#endif  // ISINGSHOR_ANALYTIC_ORACLES_HPP_
