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

#ifndef ISINGSHOR_CHAIN_MODEL_HPP_
#define ISINGSHOR_CHAIN_MODEL_HPP_

#include <compare>
#include <cstddef>
#include <string>
#include <vector>

namespace isingshor {

inline constexpr int kMaxSpins = 10;

/// Static constants of a uniform Ising chain, in angular-frequency units with
/// hbar = 1. Spin k precesses at base_frequency + k * frequency_step and
/// neighbours couple through -2J I^z_k I^z_{k+1}.
struct ChainParams {
  int num_spins = 4;
  double base_frequency = 100.0;
  double frequency_step = 10.0;
  double ising_constant = 1.0;

  /// Throws DomainError on a structurally invalid chain.
  void validate() const;
  /// Non-fatal configuration concerns, e.g. frequency_step <= 2J.
  std::vector<std::string> warnings() const;

  std::size_t dimension() const { return std::size_t{1} << num_spins; }
};

/// Computational basis state. Bit k holds spin k (0 = ground, 1 = excited),
/// spin 0 is the least-significant bit.
class BasisState {
 public:
  constexpr explicit BasisState(std::size_t index) : index_(index) {}

  constexpr std::size_t index() const { return index_; }
  constexpr bool excited(int spin) const { return ((index_ >> spin) & 1U) != 0; }
  constexpr BasisState flipped(int spin) const { return BasisState(index_ ^ (std::size_t{1} << spin)); }
  constexpr BasisState with_spin(int spin, bool excited) const {
    const std::size_t mask = std::size_t{1} << spin;
    return BasisState(excited ? (index_ | mask) : (index_ & ~mask));
  }

  friend constexpr auto operator<=>(const BasisState&, const BasisState&) = default;

 private:
  std::size_t index_;
};

/// A single-spin-flip coupling with E(upper) > E(lower).
struct Transition {
  BasisState upper;
  BasisState lower;
  int spin;
  double gap;
};

struct TransitionTable {
  std::vector<Transition> entries;
  std::vector<double> energies;
};

double spin_frequency(const ChainParams& params, int spin);

/// Diagonal energy E_p with I^z = +1/2 for a ground bit and -1/2 for an
/// excited bit.
double basis_energy(const ChainParams& params, BasisState state);

/// Excitation frequency of `spin` given the neighbour configuration in
/// `state`; the value of `state`'s own bit for `spin` is ignored.
double transition_frequency(const ChainParams& params, BasisState state, int spin);

/// Distinct transition frequencies of `spin` over all neighbour
/// configurations, ascending.
std::vector<double> resonant_frequency_catalog(const ChainParams& params, int spin);

TransitionTable build_transition_table(const ChainParams& params);

}  // namespace isingshor

#endif  // ISINGSHOR_CHAIN_MODEL_HPP_
