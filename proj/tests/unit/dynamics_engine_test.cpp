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

#include "isingshor/dynamics_engine.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "exact_propagator.hpp"
#include "isingshor/analytic_oracles.hpp"
#include "isingshor/errors.hpp"
#include "isingshor/shor_pipeline.hpp"

namespace isingshor {
namespace {

constexpr double kPi = std::numbers::pi;
const Amplitude kI(0.0, 1.0);

ChainParams chain(double w0, double dw, double j, int spins) {
  ChainParams p;
  p.num_spins = spins;
  p.base_frequency = w0;
  p.frequency_step = dw;
  p.ising_constant = j;
  return p;
}

StateVector random_state(int spins, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::vector<Amplitude> a(std::size_t{1} << spins);
  double n = 0.0;
  for (auto& x : a) {
    x = {g(rng), g(rng)};
    n += std::norm(x);
  }
  for (auto& x : a) x /= std::sqrt(n);
  return StateVector(spins, std::move(a));
}

TEST(StateVector, Construction) {
  const StateVector g(4);
  EXPECT_EQ(g.dimension(), 16U);
  EXPECT_DOUBLE_EQ(g.probability(0), 1.0);
  EXPECT_DOUBLE_EQ(g.norm_squared(), 1.0);
  const StateVector b = StateVector::basis(3, BasisState(5));
  EXPECT_DOUBLE_EQ(b.probability(5), 1.0);
  EXPECT_DOUBLE_EQ(b.probability(0), 0.0);
  EXPECT_THROW(StateVector(2, std::vector<Amplitude>(3)), DomainError);
  EXPECT_THROW(StateVector::basis(2, BasisState(4)), DomainError);
  EXPECT_THROW(StateVector(kMaxSpins + 1), DomainError);
}

TEST(IntegratorConfig, Validation) {
  IntegratorConfig c;
  EXPECT_NO_THROW(c.validate());
  c.steps_per_period = 0;
  EXPECT_THROW(c.validate(), DomainError);
  c = {};
  c.norm_tolerance = 0.0;
  EXPECT_THROW(c.validate(), DomainError);
  c = {};
  c.input_norm_tolerance = -1.0;
  EXPECT_THROW(c.validate(), DomainError);
  c = {};
  c.trace_stride = 0;
  EXPECT_THROW(c.validate(), DomainError);
}

TEST(Derivative, ZeroDriveGivesZero) {
  const ChainParams p = chain(100, 10, 1, 4);
  const Pulse off{122.0, 0.3, 0.0, 1.0, PulseKind::custom};
  for (const Amplitude& d : derivative(random_state(4, 1), 2.5, off, build_transition_table(p))) {
    EXPECT_EQ(d, Amplitude{});
  }
}

TEST(Derivative, GroundStateAtTimeZero) {
  const ChainParams p = chain(100, 10, 1, 4);
  const double rabi = 0.1;
  const Pulse pulse = make_pulse(PulseKind::half_pi, 122.0, kPi / 2, rabi);
  const auto d = derivative(StateVector(4), 0.0, pulse, build_transition_table(p));
  const Amplitude expected = kI * (rabi / 2) * std::exp(-kI * (kPi / 2));
  // Every single-flip partner of |0> is driven; at t = 0 the detuning phase is 1.
  for (std::size_t q : {1U, 2U, 4U, 8U}) {
    EXPECT_NEAR(std::abs(d[q] - expected), 0.0, 1e-15) << q;
  }
  for (std::size_t q : {0U, 3U, 5U, 6U, 7U, 9U, 10U, 11U, 12U, 13U, 14U, 15U}) EXPECT_EQ(d[q], Amplitude{}) << q;
}

TEST(Derivative, GeneratorIsAntiHermitian) {
  const ChainParams p = chain(100, 10, 1, 4);
  const TransitionTable t = build_transition_table(p);
  const Pulse pulse = make_pulse(PulseKind::pi, 111.0, 0.7, 0.4);
  for (unsigned seed = 0; seed < 5; ++seed) {
    const StateVector s = random_state(4, seed);
    const auto d = derivative(s, 3.3 * seed, pulse, t);
    double rate = 0.0;
    for (std::size_t q = 0; q < s.dimension(); ++q) rate += 2.0 * std::real(std::conj(s[q]) * d[q]);
    EXPECT_NEAR(rate, 0.0, 1e-14);
  }
}

TEST(StepCount, ResolvesFastestOscillation) {
  const ChainParams p = chain(100, 10, 1, 4);
  const TransitionTable t = build_transition_table(p);
  const Pulse pulse = make_pulse(PulseKind::pi, 122.0, 0.0, 0.1);
  // Largest |gap - f| is spin 0 at w0 - J.
  EXPECT_NEAR(max_oscillation_frequency(pulse, t), std::hypot(122.0 - 99.0, 0.1), 1e-12);
  IntegratorConfig c;
  const std::size_t n = step_count(pulse, t, c);
  const double h = pulse.duration / static_cast<double>(n);
  EXPECT_LE(h, 2 * kPi / max_oscillation_frequency(pulse, t) / c.steps_per_period + 1e-15);
  c.steps_per_period *= 2;
  EXPECT_GE(step_count(pulse, t, c), 2 * n - 1);
}

TEST(EvolvePulse, TinyPulseIsNearIdentity) {
  const ChainParams p = chain(100, 10, 1, 3);
  const StateVector s = random_state(3, 7);
  const Pulse pulse = make_custom_pulse(121.0, 0.0, 0.1, 1e-6);
  const Evolution e = evolve_pulse(s, pulse, 0.0, build_transition_table(p), {});
  for (std::size_t q = 0; q < s.dimension(); ++q) EXPECT_NEAR(std::abs(e.state[q] - s[q]), 0.0, 1e-7);
}

TEST(EvolvePulse, MatchesExactPropagatorOnRandomPulses) {
  const ChainParams p = chain(50, 6, 1.5, 3);
  const TransitionTable t = build_transition_table(p);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  StateVector s = random_state(3, 3);
  double t0 = 0.0;
  for (int n = 0; n < 6; ++n) {
    const auto catalog = resonant_frequency_catalog(p, n % 3);
    const Pulse pulse = make_custom_pulse(catalog[n % catalog.size()] + 0.2 * (u(rng) - 0.5), 2 * kPi * u(rng),
                                          0.05 + 0.5 * u(rng), 1.0 + 8.0 * u(rng));
    const StateVector ref = testing::exact_pulse(s, pulse, t0, p);
    s = evolve_pulse(s, pulse, t0, t, {}).state;
    for (std::size_t q = 0; q < s.dimension(); ++q) EXPECT_NEAR(std::abs(s[q] - ref[q]), 0.0, 1e-8) << n << ' ' << q;
    t0 += pulse.duration;
  }
}

TEST(EvolvePulse, IsolatedTransitionMatchesTwoLevelFormula) {
  // Spin 1 is a thousand units away, so only the spin-0 pair |00> <-> |01> is near resonance.
  const ChainParams p = chain(100, 1000, 1, 2);
  const double detuning = 0.3;
  const double gap = transition_frequency(p, BasisState(0), 0);
  const Pulse pulse = make_custom_pulse(gap - detuning, 0.4, 0.2, 11.0);
  const Evolution e = evolve_pulse(StateVector(2), pulse, 0.0, build_transition_table(p), {});
  const TwoLevelResult r = two_level_step(0.0, 1.0, pulse.rabi, detuning, pulse.duration);
  EXPECT_NEAR(e.state.probability(1), std::norm(r.c_upper), 1e-6);
  EXPECT_NEAR(e.state.probability(0), std::norm(r.c_lower), 1e-6);
}

TEST(EvolvePulse, WeakResonantPulseMatchesRotationRule) {
  const ChainParams p = chain(100, 10, 1, 2);
  const TransitionTable t = build_transition_table(p);
  const Pulse pulse = make_pulse(PulseKind::half_pi, transition_frequency(p, BasisState(0), 0), 0.0, 0.05);
  const StateVector dyn = evolve_pulse(StateVector(2), pulse, 0.0, t, {}).state;
  const StateVector ideal = resonant_propagate(StateVector(2), pulse, p, t);
  for (std::size_t q = 0; q < 4; ++q) EXPECT_NEAR(dyn.probability(q), ideal.probability(q), 1e-3);
}

TEST(EvolvePulse, RejectsUnnormalizedInput) {
  const ChainParams p = chain(100, 10, 1, 2);
  StateVector s(2);
  s[0] = 2.0;
  EXPECT_THROW(evolve_pulse(s, make_pulse(PulseKind::pi, 101, 0, 0.1), 0.0, build_transition_table(p), {}),
               DomainError);
}

TEST(EvolvePulse, CoarseSteppingIsIntegrationError) {
  const ChainParams p = chain(100, 10, 1, 4);
  IntegratorConfig c;
  c.steps_per_period = 1;
  const Pulse pulse = make_pulse(PulseKind::pi, 122.0, 0.0, 0.1);
  EXPECT_THROW(evolve_pulse(random_state(4, 2), pulse, 0.0, build_transition_table(p), c), IntegrationError);
}

TEST(EvolvePulse, TraceSampling) {
  const ChainParams p = chain(100, 10, 1, 2);
  IntegratorConfig c;
  c.trace_stride = 10;
  c.traced_states = {0, 1};
  const Pulse pulse = make_pulse(PulseKind::pi, 101.0, 0.0, 0.5);
  const Evolution e = evolve_pulse(StateVector(2), pulse, 4.0, build_transition_table(p), c);
  ASSERT_TRUE(e.trace);
  const auto& s = e.trace->samples;
  ASSERT_GE(s.size(), 3U);
  EXPECT_DOUBLE_EQ(s.front().t, 4.0);
  EXPECT_DOUBLE_EQ(s.front().probabilities[0], 1.0);
  EXPECT_DOUBLE_EQ(s.back().t, 4.0 + pulse.duration);
  for (std::size_t i = 1; i < s.size(); ++i) EXPECT_GT(s[i].t, s[i - 1].t);
  EXPECT_DOUBLE_EQ(s.back().probabilities[1], e.state.probability(1));

  c.traced_states = {4};
  EXPECT_THROW(evolve_pulse(StateVector(2), pulse, 0.0, build_transition_table(p), c), DomainError);
}

TEST(EvolveSequence, EmptySequenceReturnsInput) {
  const ChainParams p = chain(100, 10, 1, 3);
  const StateVector s = random_state(3, 5);
  IntegratorConfig c;
  c.trace_stride = 1;
  c.traced_states = {0};
  const Evolution e = evolve_sequence(s, PulseSequence{}, build_transition_table(p), c);
  for (std::size_t q = 0; q < s.dimension(); ++q) EXPECT_EQ(e.state[q], s[q]);
  ASSERT_TRUE(e.trace);
  ASSERT_EQ(e.trace->samples.size(), 1U);
  EXPECT_DOUBLE_EQ(e.trace->samples[0].t, 0.0);
}

PulseSequence short_program(const ChainParams& p, double rabi) {
  PulseSequence seq;
  seq.push_back(make_pulse(PulseKind::half_pi, transition_frequency(p, BasisState(0), 2), kPi / 2, rabi));
  seq.push_back(make_pulse(PulseKind::half_pi, transition_frequency(p, BasisState(0), 3), kPi / 2, rabi));
  seq.push_back(make_pulse(PulseKind::pi, transition_frequency(p, BasisState(0), 0), 0.0, rabi));
  return seq;
}

TEST(EvolveSequence, TraceIsContinuousAcrossPulses) {
  const ChainParams p = chain(100, 10, 1, 4);
  const PulseSequence seq = short_program(p, 0.5);
  IntegratorConfig c;
  c.trace_stride = 50;
  c.traced_states = {0, 4};
  const Evolution e = evolve_sequence(StateVector(4), seq, build_transition_table(p), c);
  ASSERT_TRUE(e.trace);
  const auto& s = e.trace->samples;
  EXPECT_DOUBLE_EQ(s.front().t, 0.0);
  EXPECT_NEAR(s.back().t, seq.total_duration(), 1e-12);
  for (std::size_t i = 1; i < s.size(); ++i) EXPECT_GT(s[i].t, s[i - 1].t);

  std::ostringstream csv;
  write_trace_csv(csv, *e.trace);
  EXPECT_EQ(csv.str().substr(0, csv.str().find('\n')), "t,prob_p0,prob_p4");
}

TEST(EvolveSequence, NormConservedAfterEveryPulse) {
  const ChainParams p = chain(100, 10, 1, 4);
  const PulseSequence seq = compile_shor4(p, 0.25, 0.25);
  const TransitionTable t = build_transition_table(p);
  StateVector s(4);
  for (std::size_t n = 0; n < seq.size(); ++n) {
    const double before = s.norm_squared();
    s = evolve_pulse(s, seq[n], seq.start_time(n), t, {}).state;
    EXPECT_NEAR(s.norm_squared(), before, 1e-9) << n;
  }
}

TEST(EvolveSequence, StepHalvingConverges) {
  const ChainParams p = chain(100, 10, 1, 4);
  const PulseSequence seq = short_program(p, 0.25);
  const TransitionTable t = build_transition_table(p);
  IntegratorConfig fine;
  fine.steps_per_period = 128;
  const StateVector a = evolve_sequence(StateVector(4), seq, t, {}).state;
  const StateVector b = evolve_sequence(StateVector(4), seq, t, fine).state;
  for (std::size_t q = 0; q < 16; ++q) EXPECT_NEAR(a.probability(q), b.probability(q), 1e-8);
}

TEST(EvolveSequence, GlobalFrequencyOffsetInvariance) {
  const ChainParams p = chain(100, 10, 1, 4);
  const ChainParams shifted = chain(200, 10, 1, 4);
  const PulseSequence a = short_program(p, 0.25);
  PulseSequence b;
  for (Pulse q : a.pulses()) {
    q.frequency += 100.0;
    b.push_back(q);
  }
  const StateVector sa = evolve_sequence(StateVector(4), a, build_transition_table(p), {}).state;
  const StateVector sb = evolve_sequence(StateVector(4), b, build_transition_table(shifted), {}).state;
  for (std::size_t q = 0; q < 16; ++q) EXPECT_NEAR(std::abs(sa[q]), std::abs(sb[q]), 1e-9);
}

TEST(EvolveSequence, CommonPhaseShiftLeavesProbabilities) {
  const ChainParams p = chain(100, 10, 1, 4);
  const PulseSequence a = short_program(p, 0.25);
  PulseSequence b;
  for (Pulse q : a.pulses()) {
    q.phase += 0.9;
    b.push_back(q);
  }
  const TransitionTable t = build_transition_table(p);
  const StateVector sa = evolve_sequence(StateVector(4), a, t, {}).state;
  const StateVector sb = evolve_sequence(StateVector(4), b, t, {}).state;
  for (std::size_t q = 0; q < 16; ++q) EXPECT_NEAR(sa.probability(q), sb.probability(q), 1e-9);
}

TEST(EvolveSequence, Deterministic) {
  const ChainParams p = chain(100, 10, 1, 4);
  const PulseSequence seq = short_program(p, 0.25);
  const TransitionTable t = build_transition_table(p);
  const StateVector a = evolve_sequence(StateVector(4), seq, t, {}).state;
  const StateVector b = evolve_sequence(StateVector(4), seq, t, {}).state;
  for (std::size_t q = 0; q < 16; ++q) EXPECT_EQ(a[q], b[q]);
}

}  // namespace
}  // namespace isingshor
