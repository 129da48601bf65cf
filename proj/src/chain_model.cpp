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

#include "isingshor/chain_model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "isingshor/errors.hpp"

namespace isingshor {
namespace {

void check_spin(const ChainParams& params, int spin) {
  if (spin < 0 || spin >= params.num_spins) {
    std::ostringstream msg;
    msg << "spin index " << spin << " outside [0, " << params.num_spins << ")";
    throw DomainError(msg.str());
  }
}

void check_state(const ChainParams& params, BasisState state) {
  if (state.index() >= params.dimension()) {
    std::ostringstream msg;
    msg << "basis state " << state.index() << " outside [0, " << params.dimension() << ")";
    throw DomainError(msg.str());
  }
}

double spin_z(BasisState state, int spin) { return state.excited(spin) ? -0.5 : 0.5; }

}  // namespace

void ChainParams::validate() const {
  if (num_spins < 2 || num_spins > kMaxSpins) {
    throw DomainError("num_spins must lie in [2, " + std::to_string(kMaxSpins) + "]");
  }
  if (!std::isfinite(base_frequency)) throw DomainError("base_frequency must be finite");
  if (!(frequency_step > 0.0) || !std::isfinite(frequency_step)) {
    throw DomainError("frequency_step must be positive");
  }
  if (!(ising_constant >= 0.0) || !std::isfinite(ising_constant)) {
    throw DomainError("ising_constant must be non-negative");
  }
}

std::vector<std::string> ChainParams::warnings() const {
  std::vector<std::string> out;
  if (frequency_step <= 2.0 * ising_constant) {
    std::ostringstream msg;
    msg << "frequency_step " << frequency_step << " <= 2J = " << 2.0 * ising_constant
        << ": conditional frequencies of neighbouring spins may coincide";
    out.push_back(msg.str());
  }
  return out;
}

double spin_frequency(const ChainParams& params, int spin) {
  check_spin(params, spin);
  return params.base_frequency + spin * params.frequency_step;
}

double basis_energy(const ChainParams& params, BasisState state) {
  check_state(params, state);
  double zeeman = 0.0;
  double ising = 0.0;
  for (int k = 0; k < params.num_spins; ++k) {
    zeeman += spin_frequency(params, k) * spin_z(state, k);
    if (k + 1 < params.num_spins) ising += spin_z(state, k) * spin_z(state, k + 1);
  }
  return -zeeman - 2.0 * params.ising_constant * ising;
}

double transition_frequency(const ChainParams& params, BasisState state, int spin) {
  check_spin(params, spin);
  check_state(params, state);
  const double gap = basis_energy(params, state.with_spin(spin, true)) -
                     basis_energy(params, state.with_spin(spin, false));
  if (!(gap > 0.0)) {
    std::ostringstream msg;
    msg << "non-positive transition frequency " << gap << " for spin " << spin
        << " in state " << state.index() << " (ising constant too large for base frequency)";
    throw DomainError(msg.str());
  }
  return gap;
}

std::vector<double> resonant_frequency_catalog(const ChainParams& params, int spin) {
  check_spin(params, spin);
  std::vector<double> freqs;
  // Only the neighbours matter; enumerate their four (or two) settings.
  for (int left = 0; left < 2; ++left) {
    for (int right = 0; right < 2; ++right) {
      BasisState state(0);
      if (spin > 0) state = state.with_spin(spin - 1, left != 0);
      else if (left != 0) continue;
      if (spin + 1 < params.num_spins) state = state.with_spin(spin + 1, right != 0);
      else if (right != 0) continue;
      freqs.push_back(transition_frequency(params, state, spin));
    }
  }
  std::sort(freqs.begin(), freqs.end());
  const double tol = 1e-9 * std::max(1.0, params.frequency_step);
  freqs.erase(std::unique(freqs.begin(), freqs.end(),
                          [tol](double a, double b) { return std::abs(a - b) <= tol; }),
              freqs.end());
  return freqs;
}

TransitionTable build_transition_table(const ChainParams& params) {
  params.validate();
  TransitionTable table;
  const std::size_t dim = params.dimension();
  table.energies.reserve(dim);
  for (std::size_t p = 0; p < dim; ++p) table.energies.push_back(basis_energy(params, BasisState(p)));

  table.entries.reserve(static_cast<std::size_t>(params.num_spins) * dim / 2);
  for (std::size_t p = 0; p < dim; ++p) {
    const BasisState lower(p);
    for (int k = 0; k < params.num_spins; ++k) {
      if (lower.excited(k)) continue;
      const BasisState upper = lower.flipped(k);
      transition_frequency(params, lower, k);  // positivity check
      table.entries.push_back(
          {upper, lower, k, table.energies[upper.index()] - table.energies[lower.index()]});
    }
  }
  return table;
}

}  // namespace isingshor
