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

#include "isingshor/analytic_oracles.hpp"

#include <cmath>

#include "isingshor/errors.hpp"

namespace isingshor {

double effective_rabi(double rabi, double detuning) { return std::hypot(rabi, detuning); }

TwoLevelResult two_level_step(std::complex<double> c_upper, std::complex<double> c_lower, double rabi,
                              double detuning, double duration) {
  if (!(rabi > 0.0)) throw DomainError("rabi must be positive");
  if (!(duration > 0.0)) throw DomainError("duration must be positive");
  const double omega_e = effective_rabi(rabi, detuning);
  const double cs = std::cos(omega_e * duration / 2.0);
  const double sn = std::sin(omega_e * duration / 2.0);
  const std::complex<double> i(0.0, 1.0);
  const std::complex<double> mix = i * (rabi / omega_e) * sn;
  return {c_upper * (cs - i * (detuning / omega_e) * sn) + c_lower * mix,
          c_lower * (cs + i * (detuning / omega_e) * sn) + c_upper * mix};
}

StateVector resonant_propagate(const StateVector& state, const Pulse& pulse, const ChainParams& params,
                               const TransitionTable& table) {
  pulse.validate();
  if (table.energies.size() != state.dimension()) {
    throw DomainError("state dimension does not match the transition table");
  }
  const double tol = 1e-9 * params.frequency_step;
  const double half = pulse.angle() / 2.0;
  const std::complex<double> i(0.0, 1.0);
  const std::complex<double> raise = i * std::polar(1.0, -pulse.phase) * std::sin(half);
  const std::complex<double> lower = i * std::polar(1.0, pulse.phase) * std::sin(half);
  const double cs = std::cos(half);

  StateVector out = state;
  bool matched = false;
  for (const Transition& e : table.entries) {
    if (std::abs(e.gap - pulse.frequency) > tol) continue;
    matched = true;
    const auto g = e.lower.index();
    const auto x = e.upper.index();
    const std::complex<double> a0 = out[g];
    const std::complex<double> a1 = out[x];
    out[g] = cs * a0 + lower * a1;
    out[x] = cs * a1 + raise * a0;
  }
  if (!matched) throw DomainError("pulse frequency matches no transition of the chain");
  return out;
}

TwoPiKDesign design_rabi(double detuning_abs, PulseKind pulse_kind, int k) {
  if (k < 1) throw DomainError("2*pi*k design needs k >= 1");
  if (!(detuning_abs > 0.0)) throw DomainError("detuning must be positive");
  const double kk = static_cast<double>(k);
  double denom = 0.0;
  switch (pulse_kind) {
    case PulseKind::pi:
      denom = 4.0 * kk * kk - 1.0;
      break;
    case PulseKind::half_pi:
      denom = 16.0 * kk * kk - 1.0;
      break;
    case PulseKind::custom:
      throw DomainError("2*pi*k design needs a half_pi or pi pulse");
  }
  return {detuning_abs / std::sqrt(denom), k, detuning_abs, pulse_kind};
}

double design_rabi_for_chain(double ising_constant, PulseKind pulse_kind, int k) {
  if (!(ising_constant > 0.0)) throw DomainError("ising constant must be positive");
  return design_rabi(2.0 * ising_constant, pulse_kind, k).rabi;
}

}  // namespace isingshor
