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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>

#include "isingshor/errors.hpp"

namespace isingshor {
namespace {

// Phasors advanced by recurrence are re-seeded from std::polar this often.
constexpr std::size_t kResyncInterval = 128;

struct Coupling {
  std::uint32_t upper;
  std::uint32_t lower;
  std::uint32_t phasor;
};

// Couplings of one pulse with the distinct detunings factored out so each
// exp(i(detuning * t - phase)) is evaluated once per stage.
struct PulseKernel {
  std::vector<Coupling> couplings;
  std::vector<double> detunings;
};

PulseKernel make_kernel(const Pulse& pulse, const TransitionTable& table) {
  PulseKernel kernel;
  kernel.couplings.reserve(table.entries.size());
  for (const Transition& e : table.entries) {
    const double detuning = e.gap - pulse.frequency;
    auto it = std::find(kernel.detunings.begin(), kernel.detunings.end(), detuning);
    const auto slot = static_cast<std::uint32_t>(it - kernel.detunings.begin());
    if (it == kernel.detunings.end()) kernel.detunings.push_back(detuning);
    kernel.couplings.push_back({static_cast<std::uint32_t>(e.upper.index()),
                                static_cast<std::uint32_t>(e.lower.index()), slot});
  }
  return kernel;
}

void check_compatible(const StateVector& state, const TransitionTable& table) {
  if (table.energies.size() != state.dimension()) {
    throw DomainError("state dimension does not match the transition table");
  }
}

// out = d/dt c for phasors z_j = exp(i(detuning_j t - phase)).
void apply_rhs(const PulseKernel& kernel, Amplitude drive, const std::vector<Amplitude>& z,
               const Amplitude* in, Amplitude* out, std::size_t dim) {
  std::fill(out, out + dim, Amplitude{});
  for (const Coupling& c : kernel.couplings) {
    const Amplitude zz = z[c.phasor];
    out[c.upper] += drive * zz * in[c.lower];
    out[c.lower] += drive * std::conj(zz) * in[c.upper];
  }
}

void record(TimeTrace& trace, double t, const std::vector<Amplitude>& c) {
  TraceSample sample{t, {}};
  sample.probabilities.reserve(trace.states.size());
  for (std::size_t p : trace.states) sample.probabilities.push_back(std::norm(c[p]));
  trace.samples.push_back(std::move(sample));
}

}  // namespace

StateVector::StateVector(int num_spins) : StateVector(num_spins, {}) {}

StateVector::StateVector(int num_spins, std::vector<Amplitude> amplitudes)
    : num_spins_(num_spins), amplitudes_(std::move(amplitudes)) {
  if (num_spins < 1 || num_spins > kMaxSpins) throw DomainError("unsupported number of spins");
  const std::size_t dim = std::size_t{1} << num_spins;
  if (amplitudes_.empty()) {
    amplitudes_.assign(dim, Amplitude{});
    amplitudes_[0] = 1.0;
  } else if (amplitudes_.size() != dim) {
    throw DomainError("amplitude count does not match 2^num_spins");
  }
}

StateVector StateVector::basis(int num_spins, BasisState state) {
  StateVector out(num_spins);
  if (state.index() >= out.dimension()) throw DomainError("basis state out of range");
  out[0] = 0.0;
  out[state.index()] = 1.0;
  return out;
}

double StateVector::norm_squared() const {
  double sum = 0.0;
  for (const Amplitude& a : amplitudes_) sum += std::norm(a);
  return sum;
}

std::vector<double> StateVector::probabilities() const {
  std::vector<double> out;
  out.reserve(amplitudes_.size());
  for (const Amplitude& a : amplitudes_) out.push_back(std::norm(a));
  return out;
}

void IntegratorConfig::validate() const {
  if (steps_per_period < 1) throw DomainError("steps_per_period must be >= 1");
  if (!(norm_tolerance > 0.0)) throw DomainError("norm_tolerance must be positive");
  if (!(input_norm_tolerance > 0.0)) throw DomainError("input_norm_tolerance must be positive");
  if (trace_stride && *trace_stride == 0) throw DomainError("trace_stride must be >= 1");
}

void write_trace_csv(std::ostream& out, const TimeTrace& trace) {
  const auto old_precision = out.precision(std::numeric_limits<double>::max_digits10);
  out << 't';
  for (std::size_t p : trace.states) out << ",prob_p" << p;
  out << '\n';
  for (const TraceSample& s : trace.samples) {
    out << s.t;
    for (double v : s.probabilities) out << ',' << v;
    out << '\n';
  }
  out.precision(old_precision);
}

std::vector<Amplitude> derivative(const StateVector& state, double t, const Pulse& pulse,
                                  const TransitionTable& table) {
  check_compatible(state, table);
  std::vector<Amplitude> out(state.dimension());
  const Amplitude drive(0.0, pulse.rabi / 2.0);
  for (const Transition& e : table.entries) {
    const Amplitude z = std::polar(1.0, (e.gap - pulse.frequency) * t - pulse.phase);
    out[e.upper.index()] += drive * z * state[e.lower.index()];
    out[e.lower.index()] += drive * std::conj(z) * state[e.upper.index()];
  }
  return out;
}

double max_oscillation_frequency(const Pulse& pulse, const TransitionTable& table) {
  double f = pulse.rabi;
  for (const Transition& e : table.entries) f = std::max(f, std::hypot(e.gap - pulse.frequency, pulse.rabi));
  return f;
}

std::size_t step_count(const Pulse& pulse, const TransitionTable& table, const IntegratorConfig& config) {
  const double period = 2.0 * std::numbers::pi / max_oscillation_frequency(pulse, table);
  const double h_target = period / config.steps_per_period;
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(pulse.duration / h_target)));
}

Evolution evolve_pulse(const StateVector& state, const Pulse& pulse, double t_start,
                       const TransitionTable& table, const IntegratorConfig& config) {
  config.validate();
  pulse.validate();
  check_compatible(state, table);
  const double norm_in = state.norm_squared();
  if (std::abs(norm_in - 1.0) > config.input_norm_tolerance) {
    std::ostringstream msg;
    msg << "input state is not normalized (|c|^2 = " << norm_in << ")";
    throw DomainError(msg.str());
  }

  const PulseKernel kernel = make_kernel(pulse, table);
  const std::size_t steps = step_count(pulse, table, config);
  const double h = pulse.duration / static_cast<double>(steps);
  const Amplitude drive(0.0, pulse.rabi / 2.0);
  const std::size_t dim = state.dimension();
  const std::size_t nph = kernel.detunings.size();

  std::vector<Amplitude> c(state.amplitudes().begin(), state.amplitudes().end());
  std::vector<Amplitude> k1(dim), k2(dim), k3(dim), k4(dim), tmp(dim);
  std::vector<Amplitude> z0(nph), zh(nph), z1(nph), half_step(nph);
  for (std::size_t j = 0; j < nph; ++j) half_step[j] = std::polar(1.0, kernel.detunings[j] * h / 2.0);
  auto seed_phasors = [&](std::size_t step) {
    const double t = t_start + static_cast<double>(step) * h;
    for (std::size_t j = 0; j < nph; ++j) z0[j] = std::polar(1.0, kernel.detunings[j] * t - pulse.phase);
  };
  seed_phasors(0);

  std::optional<TimeTrace> trace;
  if (config.trace_stride) {
    trace.emplace();
    trace->states = config.traced_states;
    for (std::size_t p : trace->states) {
      if (p >= dim) throw DomainError("traced state out of range");
    }
    record(*trace, t_start, c);
  }

  for (std::size_t s = 0; s < steps; ++s) {
    if (s != 0 && s % kResyncInterval == 0) seed_phasors(s);
    for (std::size_t j = 0; j < nph; ++j) {
      zh[j] = z0[j] * half_step[j];
      z1[j] = zh[j] * half_step[j];
    }
    apply_rhs(kernel, drive, z0, c.data(), k1.data(), dim);
    for (std::size_t i = 0; i < dim; ++i) tmp[i] = c[i] + (h / 2.0) * k1[i];
    apply_rhs(kernel, drive, zh, tmp.data(), k2.data(), dim);
    for (std::size_t i = 0; i < dim; ++i) tmp[i] = c[i] + (h / 2.0) * k2[i];
    apply_rhs(kernel, drive, zh, tmp.data(), k3.data(), dim);
    for (std::size_t i = 0; i < dim; ++i) tmp[i] = c[i] + h * k3[i];
    apply_rhs(kernel, drive, z1, tmp.data(), k4.data(), dim);
    for (std::size_t i = 0; i < dim; ++i) c[i] += (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    std::swap(z0, z1);

    if (trace) {
      const std::size_t done = s + 1;
      if (done % *config.trace_stride == 0 || done == steps) {
        const double t = done == steps ? t_start + pulse.duration : t_start + static_cast<double>(done) * h;
        record(*trace, t, c);
      }
    }
  }

  StateVector out(state.num_spins(), std::move(c));
  const double norm_out = out.norm_squared();
  if (std::abs(norm_out - norm_in) > config.norm_tolerance) {
    std::ostringstream msg;
    msg << "norm drift " << std::abs(norm_out - norm_in) << " exceeds tolerance " << config.norm_tolerance
        << " (" << steps << " steps; increase steps_per_period)";
    throw IntegrationError(msg.str());
  }
  return {std::move(out), std::move(trace)};
}

Evolution evolve_sequence(const StateVector& state, const PulseSequence& sequence,
                          const TransitionTable& table, const IntegratorConfig& config) {
  config.validate();
  Evolution result{state, std::nullopt};
  if (config.trace_stride) {
    result.trace.emplace();
    result.trace->states = config.traced_states;
  }
  for (std::size_t i = 0; i < sequence.size(); ++i) {
    Evolution step = evolve_pulse(result.state, sequence[i], sequence.start_time(i), table, config);
    result.state = std::move(step.state);
    if (result.trace && step.trace) {
      auto& samples = step.trace->samples;
      // The first sample repeats the previous pulse's final time.
      const auto first = result.trace->samples.empty() ? samples.begin() : samples.begin() + 1;
      result.trace->samples.insert(result.trace->samples.end(), std::make_move_iterator(first),
                                   std::make_move_iterator(samples.end()));
    }
  }
  if (result.trace && result.trace->samples.empty()) {
    // Empty sequence: report the initial state only.
    std::vector<Amplitude> c(state.amplitudes().begin(), state.amplitudes().end());
    for (std::size_t p : result.trace->states) {
      if (p >= state.dimension()) throw DomainError("traced state out of range");
    }
    record(*result.trace, 0.0, c);
  }
  return result;
}

}  // namespace isingshor
