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

#ifndef ISINGSHOR_SHOR_PIPELINE_HPP_
#define ISINGSHOR_SHOR_PIPELINE_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "isingshor/chain_model.hpp"
#include "isingshor/dynamics_engine.hpp"
#include "isingshor/pulse_program.hpp"

namespace isingshor {

/// Factoring problem layout: x register in the high bits, y register in the
/// low bits of the basis index.
struct ShorSpec {
  std::int64_t modulus = 4;
  std::int64_t base = 3;
  int x_qubits = 2;
  int y_qubits = 2;

  void validate() const;
  std::size_t x_states() const { return std::size_t{1} << x_qubits; }
};

struct MeasurementDistribution {
  /// |c_p|^2 for every basis state.
  std::vector<double> probabilities;
  /// Probability of each x after marginalizing y and bit-reversing x.
  std::vector<double> x_distribution;
};

/// Required state of a neighbouring spin for a conditional pulse.
enum class Neighbor { none, ground, excited };

/// One entry of the built-in protocol. The pulse frequency is the
/// transition frequency of `spin` with its neighbours as given.
struct ProtocolStep {
  int spin;
  Neighbor left;   // spin - 1
  Neighbor right;  // spin + 1
  PulseKind kind;
  double phase;
  std::string_view role;
};

/// The 16-pulse protocol for N = 4, q = 3 on a four-spin chain
/// (spins 0,1 = y register, spins 2,3 = x register).
std::span<const ProtocolStep> shor4_protocol();

/// Builds the protocol on `params` with the given Rabi frequencies and
/// verifies it under the resonant oracle. Throws CompilationError if the
/// verification fails.
PulseSequence compile_shor4(const ChainParams& params, double rabi_half_pi, double rabi_pi);

/// Reverses the lowest `width` bits of `value`.
std::size_t reverse_bits(std::size_t value, int width);

MeasurementDistribution measure(const StateVector& state, const ShorSpec& spec);

/// Period from the peak spacing of an x distribution; x = 0 always counts as
/// a peak. Throws ExtractionError on fewer than two peaks or a spacing that
/// does not divide `x_states`.
int extract_period(std::span<const double> x_distribution, std::size_t x_states,
                   double peak_threshold = 0.1);

/// Nontrivial factor from gcd(q^(T/2) -/+ 1, N). Throws ExtractionError for
/// odd T or when both gcds are trivial.
std::int64_t extract_factor(std::int64_t modulus, std::int64_t base, std::int64_t period);

struct ShorRun {
  PulseSequence sequence;
  StateVector final_state;
  MeasurementDistribution distribution;
  int period;
  std::int64_t factor;
};

/// Compile, evolve from |0>, measure, and post-process.
ShorRun run_shor(const ChainParams& params, double rabi_half_pi, double rabi_pi,
                 const IntegratorConfig& config);
/// Same, with a caller-supplied pulse sequence.
ShorRun run_shor(const ChainParams& params, const PulseSequence& sequence, const IntegratorConfig& config);

}  // namespace isingshor

#endif  // ISINGSHOR_SHOR_PIPELINE_HPP_
