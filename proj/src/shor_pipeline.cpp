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

#include "isingshor/shor_pipeline.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include "isingshor/analytic_oracles.hpp"
#include "isingshor/errors.hpp"

namespace isingshor {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr auto G = Neighbor::ground;
constexpr auto E = Neighbor::excited;
constexpr auto N = Neighbor::none;
constexpr auto H = PulseKind::half_pi;
constexpr auto P = PulseKind::pi;

// Spin 0 = y0, 1 = y1, 2 = x0, 3 = x1. The Fourier transform runs without
// the final swap, so x is read bit-reversed.
//
// Phases of the pi pulses (and of the a0 Hadamards) do not change the ideal
// outcome; their values fix the non-resonant error spectrum.
constexpr std::array<ProtocolStep, 16> kShor4Protocol{{
    {2, G, G, H, kPi / 2, "x0 superposition"},
    {3, G, N, H, kPi / 2, "x1 superposition | x0=0"},
    {3, E, N, H, kPi / 2, "x1 superposition | x0=1"},
    {0, N, G, P, 0.0, "y0 := 1 | y1=0"},
    {0, N, E, P, kPi / 2, "y0 := 1 | y1=1"},
    {1, E, E, P, kPi, "y1 ^= x0 | y0=1"},
    {3, G, N, H, kPi / 2, "Hadamard x1 | x0=0 (rotation)"},
    {3, G, N, P, 3 * kPi / 2, "Hadamard x1 | x0=0 (flip)"},
    {3, E, N, H, kPi / 2, "Hadamard x1 | x0=1 (rotation)"},
    {3, E, N, P, kPi / 2, "Hadamard x1 | x0=1 (flip)"},
    {3, E, N, P, kPi / 2, "controlled phase pi/2 (1 of 2)"},
    {3, E, N, P, kPi / 4, "controlled phase pi/2 (2 of 2)"},
    {2, G, G, H, kPi, "Hadamard x0 | y1=0,x1=0 (rotation)"},
    {2, E, G, H, 0.0, "Hadamard x0 | y1=1,x1=0 (rotation)"},
    {2, G, G, P, kPi / 2, "Hadamard x0 | y1=0,x1=0 (flip)"},
    {2, E, G, P, 0.0, "Hadamard x0 | y1=1,x1=0 (flip)"},
}};

BasisState neighbor_state(const ProtocolStep& step) {
  BasisState s(0);
  if (step.left == E) s = s.with_spin(step.spin - 1, true);
  if (step.right == E) s = s.with_spin(step.spin + 1, true);
  return s;
}

PulseSequence build(const ChainParams& params, double rabi_half_pi, double rabi_pi) {
  PulseSequence seq;
  for (const ProtocolStep& step : kShor4Protocol) {
    const double freq = transition_frequency(params, neighbor_state(step), step.spin);
    seq.push_back(make_pulse(step.kind, freq, step.phase, step.kind == H ? rabi_half_pi : rabi_pi));
  }
  return seq;
}

bool catalogs_disjoint(const ChainParams& params) {
  const double tol = 1e-9 * params.frequency_step;
  for (int a = 0; a < params.num_spins; ++a) {
    for (int b = a + 1; b < params.num_spins; ++b) {
      for (double fa : resonant_frequency_catalog(params, a)) {
        for (double fb : resonant_frequency_catalog(params, b)) {
          if (std::abs(fa - fb) <= tol) return false;
        }
      }
    }
  }
  return true;
}

void verify_protocol(const ChainParams& params, double rabi_half_pi, double rabi_pi) {
  ChainParams reference = params;
  if (!catalogs_disjoint(reference)) reference.frequency_step = 10.0 * reference.ising_constant;
  if (!(reference.ising_constant > 0.0) || !catalogs_disjoint(reference)) {
    throw CompilationError("conditional pulses need a chain with J > 0 and separable spin frequencies");
  }
  const TransitionTable table = build_transition_table(reference);
  const PulseSequence seq = build(reference, rabi_half_pi, rabi_pi);
  StateVector state(reference.num_spins);
  for (const Pulse& p : seq.pulses()) state = resonant_propagate(state, p, reference, table);
  for (std::size_t p = 0; p < state.dimension(); ++p) {
    const double expected = (p == 1 || p == 3 || p == 5 || p == 7) ? 0.25 : 0.0;
    if (std::abs(state.probability(p) - expected) > 1e-12) {
      std::ostringstream msg;
      msg << "protocol self-check failed: P(" << p << ") = " << state.probability(p);
      throw CompilationError(msg.str());
    }
  }
}

// Keeps products of residues inside 63 bits.
constexpr std::int64_t kMaxModulus = std::int64_t{1} << 31;

std::int64_t mod_pow(std::int64_t base, std::int64_t exp, std::int64_t mod) {
  std::int64_t result = 1 % mod;
  base %= mod;
  if (base < 0) base += mod;
  while (exp > 0) {
    if (exp & 1) result = result * base % mod;
    base = base * base % mod;
    exp >>= 1;
  }
  return result;
}

}  // namespace

void ShorSpec::validate() const {
  if (modulus < 2) throw DomainError("modulus must be >= 2");
  if (base < 2 || base >= modulus) throw DomainError("base must lie in [2, N)");
  if (std::gcd(base, modulus) != 1) throw DomainError("base must be coprime to the modulus");
  if (x_qubits < 1 || y_qubits < 1 || x_qubits + y_qubits > kMaxSpins) {
    throw DomainError("invalid register sizes");
  }
}

std::span<const ProtocolStep> shor4_protocol() { return kShor4Protocol; }

PulseSequence compile_shor4(const ChainParams& params, double rabi_half_pi, double rabi_pi) {
  params.validate();
  if (params.num_spins != 4) throw DomainError("the Shor protocol needs a four-spin chain");
  if (!(rabi_half_pi > 0.0) || !(rabi_pi > 0.0)) throw DomainError("Rabi frequencies must be positive");
  verify_protocol(params, rabi_half_pi, rabi_pi);
  return build(params, rabi_half_pi, rabi_pi);
}

std::size_t reverse_bits(std::size_t value, int width) {
  std::size_t out = 0;
  for (int i = 0; i < width; ++i) {
    out = (out << 1) | ((value >> i) & 1U);
  }
  return out;
}

MeasurementDistribution measure(const StateVector& state, const ShorSpec& spec) {
  spec.validate();
  if (state.num_spins() != spec.x_qubits + spec.y_qubits) {
    throw DomainError("state size does not match the register layout");
  }
  MeasurementDistribution out;
  out.probabilities = state.probabilities();
  out.x_distribution.assign(spec.x_states(), 0.0);
  for (std::size_t p = 0; p < out.probabilities.size(); ++p) {
    out.x_distribution[reverse_bits(p >> spec.y_qubits, spec.x_qubits)] += out.probabilities[p];
  }
  return out;
}

int extract_period(std::span<const double> x_distribution, std::size_t x_states, double peak_threshold) {
  if (x_distribution.size() != x_states || x_states == 0) {
    throw ExtractionError("x distribution size does not match the register");
  }
  std::size_t spacing = 0;
  std::size_t peaks = 1;  // x = 0
  for (std::size_t x = 1; x < x_states; ++x) {
    if (x_distribution[x] >= peak_threshold) {
      spacing = std::gcd(spacing, x);
      ++peaks;
    }
  }
  if (peaks < 2) throw ExtractionError("fewer than two peaks in the x distribution");
  if (x_states % spacing != 0) throw ExtractionError("peak spacing does not divide the register size");
  return static_cast<int>(x_states / spacing);
}

std::int64_t extract_factor(std::int64_t modulus, std::int64_t base, std::int64_t period) {
  if (modulus < 2) throw DomainError("modulus must be >= 2");
  if (modulus > kMaxModulus) throw DomainError("modulus too large");
  if (period < 1) throw ExtractionError("period must be positive");
  if (period % 2 != 0) throw ExtractionError("odd period " + std::to_string(period));
  const std::int64_t r = mod_pow(base, period / 2, modulus);
  for (const std::int64_t candidate : {(r - 1 + modulus) % modulus, (r + 1) % modulus}) {
    const std::int64_t g = std::gcd(candidate, modulus);
    if (g > 1 && g < modulus) return g;
  }
  throw ExtractionError("only trivial factors for period " + std::to_string(period));
}

ShorRun run_shor(const ChainParams& params, double rabi_half_pi, double rabi_pi,
                 const IntegratorConfig& config) {
  return run_shor(params, compile_shor4(params, rabi_half_pi, rabi_pi), config);
}

ShorRun run_shor(const ChainParams& params, const PulseSequence& sequence, const IntegratorConfig& config) {
  const ShorSpec spec;
  const TransitionTable table = build_transition_table(params);
  Evolution evo = evolve_sequence(StateVector(params.num_spins), sequence, table, config);
  MeasurementDistribution dist = measure(evo.state, spec);
  const int period = extract_period(dist.x_distribution, spec.x_states());
  const std::int64_t factor = extract_factor(spec.modulus, spec.base, period);
  return {sequence, std::move(evo.state), std::move(dist), period, factor};
}

}  // namespace isingshor
