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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "isingshor/errors.hpp"

namespace isingshor {
namespace {

constexpr double kPi = std::numbers::pi;
const std::complex<double> kI(0.0, 1.0);

ChainParams chain(int spins = 4) {
  ChainParams p;
  p.num_spins = spins;
  return p;
}

TEST(EffectiveRabi, Values) {
  EXPECT_DOUBLE_EQ(effective_rabi(0.1, 0.0), 0.1);
  EXPECT_DOUBLE_EQ(effective_rabi(3.0, 4.0), 5.0);
  const double rabi = 2 / std::sqrt(15.0);
  EXPECT_NEAR(effective_rabi(rabi, 2.0), 8 / std::sqrt(15.0), 1e-15);
  EXPECT_NEAR(effective_rabi(rabi, 2.0) * (kPi / 2) / rabi, 2 * kPi, 1e-12);
}

TEST(TwoLevelStep, ResonantPiTransfersFully) {
  const TwoLevelResult r = two_level_step(1.0, 0.0, 0.1, 0.0, kPi / 0.1);
  EXPECT_NEAR(std::abs(r.c_upper), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(r.c_lower - kI), 0.0, 1e-12);
}

TEST(TwoLevelStep, ResonantHalfPiSplitsEvenly) {
  const TwoLevelResult r = two_level_step(1.0, 0.0, 0.1, 0.0, kPi / 0.2);
  EXPECT_NEAR(std::abs(r.c_upper - 1 / std::sqrt(2.0)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(r.c_lower - kI / std::sqrt(2.0)), 0.0, 1e-12);
}

TEST(TwoLevelStep, FullPrecessionReturns) {
  const double rabi = 0.3;
  const double detuning = std::sqrt(std::pow(2 * kPi / 5.0, 2) - rabi * rabi);
  const TwoLevelResult r = two_level_step(1.0, 0.0, rabi, detuning, 5.0);
  EXPECT_NEAR(std::abs(r.c_upper + 1.0), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(r.c_lower), 0.0, 1e-12);
}

TEST(TwoLevelStep, PreservesPairNorm) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int n = 0; n < 200; ++n) {
    const std::complex<double> a(u(rng), u(rng));
    const std::complex<double> b(u(rng), u(rng));
    const TwoLevelResult r = two_level_step(a, b, 0.01 + std::abs(u(rng)), 5 * u(rng), 0.01 + 20 * std::abs(u(rng)));
    EXPECT_NEAR(std::norm(r.c_upper) + std::norm(r.c_lower), std::norm(a) + std::norm(b), 1e-12);
  }
}

TEST(TwoLevelStep, RejectsNonPositiveInputs) {
  EXPECT_THROW(two_level_step(1.0, 0.0, 0.0, 1.0, 1.0), DomainError);
  EXPECT_THROW(two_level_step(1.0, 0.0, 1.0, 1.0, 0.0), DomainError);
}

TEST(ResonantPropagate, FirstPulsePreparesEqualSuperposition) {
  const ChainParams p = chain();
  const TransitionTable t = build_transition_table(p);
  const Pulse pulse = make_pulse(PulseKind::half_pi, spin_frequency(p, 2) + 2.0, kPi / 2, 0.1);
  const StateVector s = resonant_propagate(StateVector(4), pulse, p, t);
  EXPECT_NEAR(std::abs(s[0] - 1 / std::sqrt(2.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(s[4] - 1 / std::sqrt(2.0)), 0.0, 1e-15);
  EXPECT_NEAR(s.norm_squared(), 1.0, 1e-15);
}

TEST(ResonantPropagate, OnlyMatchingPairsRotate) {
  const ChainParams p = chain();
  const TransitionTable t = build_transition_table(p);
  StateVector s(4, std::vector<Amplitude>(16, 0.25));
  // w3 - J: spin 3 flips only where spin 2 is excited.
  const Pulse pulse = make_pulse(PulseKind::pi, spin_frequency(p, 3) - 1.0, 0.0, 0.1);
  const StateVector out = resonant_propagate(s, pulse, p, t);
  for (std::size_t q = 0; q < 16; ++q) {
    const bool moved = BasisState(q).excited(2);
    if (!moved) EXPECT_EQ(out[q], s[q]) << q;
  }
  EXPECT_NEAR(std::abs(out[4] - kI * 0.25), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(out[12] - kI * 0.25), 0.0, 1e-15);
}

TEST(ResonantPropagate, DoublePiIsMinusIdentity) {
  const ChainParams p = chain();
  const TransitionTable t = build_transition_table(p);
  std::vector<Amplitude> a(16);
  for (std::size_t q = 0; q < 16; ++q) a[q] = std::polar(0.25, 0.37 * q);
  const StateVector s(4, a);
  const Pulse pulse = make_pulse(PulseKind::pi, spin_frequency(p, 1), 0.0, 0.1);
  const StateVector twice = resonant_propagate(resonant_propagate(s, pulse, p, t), pulse, p, t);
  for (std::size_t q = 0; q < 16; ++q) {
    const bool addressed = BasisState(q).excited(0) != BasisState(q).excited(2);
    EXPECT_NEAR(std::abs(twice[q] - (addressed ? -s[q] : s[q])), 0.0, 1e-15) << q;
  }
}

TEST(ResonantPropagate, ZeroAngleIsIdentity) {
  const ChainParams p = chain();
  const TransitionTable t = build_transition_table(p);
  Pulse pulse = make_custom_pulse(spin_frequency(p, 3) + 1.0, 0.4, 0.1, 1e-300);
  const StateVector s = resonant_propagate(StateVector(4), pulse, p, t);
  EXPECT_NEAR(std::abs(s[0] - 1.0), 0.0, 1e-15);
}

TEST(ResonantPropagate, UnmatchedFrequencyIsDomainError) {
  const ChainParams p = chain();
  const Pulse pulse = make_pulse(PulseKind::pi, 105.0, 0.0, 0.1);
  EXPECT_THROW(resonant_propagate(StateVector(4), pulse, p, build_transition_table(p)), DomainError);
}

TEST(DesignRabi, ClosedForms) {
  EXPECT_NEAR(design_rabi(2.0, PulseKind::pi, 1).rabi, 1.1547005383792515, 1e-15);
  EXPECT_NEAR(design_rabi(2.0, PulseKind::half_pi, 1).rabi, 0.5163977794943222, 1e-15);
  EXPECT_NEAR(design_rabi(1.0, PulseKind::pi, 1).rabi, 1 / std::sqrt(3.0), 1e-15);
  const TwoPiKDesign d = design_rabi(2.0, PulseKind::half_pi, 3);
  EXPECT_EQ(d.k, 3);
  EXPECT_DOUBLE_EQ(d.detuning, 2.0);
  EXPECT_EQ(d.pulse_kind, PulseKind::half_pi);
}

TEST(DesignRabi, Errors) {
  EXPECT_THROW(design_rabi(2.0, PulseKind::pi, 0), DomainError);
  EXPECT_THROW(design_rabi(0.0, PulseKind::pi, 1), DomainError);
  EXPECT_THROW(design_rabi(2.0, PulseKind::custom, 1), DomainError);
  EXPECT_THROW(design_rabi_for_chain(0.0, PulseKind::pi, 1), DomainError);
}

TEST(DesignRabi, ChainValues) {
  const double expected[] = {0.5164, 0.2520, 0.1672, 0.1252, 0.1001};
  for (int k = 1; k <= 5; ++k) {
    EXPECT_NEAR(design_rabi_for_chain(1.0, PulseKind::half_pi, k), expected[k - 1], 5e-5) << k;
  }
  EXPECT_NEAR(design_rabi_for_chain(1.0, PulseKind::pi, 1), 2 / std::sqrt(3.0), 1e-15);
  EXPECT_NEAR(design_rabi_for_chain(2.0, PulseKind::half_pi, 1), 4 / std::sqrt(15.0), 1e-15);
}

TEST(DesignRabi, PrecessionIsWholeTurns) {
  for (PulseKind kind : {PulseKind::half_pi, PulseKind::pi}) {
    for (int k = 1; k <= 8; ++k) {
      const TwoPiKDesign d = design_rabi(1.7, kind, k);
      const double tau = nominal_angle(kind) / d.rabi;
      EXPECT_NEAR(effective_rabi(d.rabi, d.detuning) * tau, 2 * kPi * k, 1e-9);
      const TwoLevelResult r = two_level_step(1.0, 0.0, d.rabi, d.detuning, tau);
      EXPECT_NEAR(std::norm(r.c_upper), 1.0, 1e-12);
    }
  }
}

TEST(DesignRabi, HalfPiDesignNestsInPiCondition) {
  for (int k = 1; k <= 6; ++k) {
    EXPECT_NEAR(design_rabi(2.0, PulseKind::half_pi, k).rabi, design_rabi(2.0, PulseKind::pi, 2 * k).rabi, 1e-15);
  }
}

}  // namespace
}  // namespace isingshor
