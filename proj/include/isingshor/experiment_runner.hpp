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

#ifndef ISINGSHOR_EXPERIMENT_RUNNER_HPP_
#define ISINGSHOR_EXPERIMENT_RUNNER_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "isingshor/chain_model.hpp"
#include "isingshor/dynamics_engine.hpp"
#include "isingshor/pulse_program.hpp"

namespace isingshor {

/// Basis states that carry probability 1/4 after an ideal run.
inline constexpr std::array<std::size_t, 4> kResonantStates{1, 3, 5, 7};

enum class ExperimentKind { single_run, sweep_rabi, sweep_detuning, trace, phase_noise, duration_noise, minimal_time };

std::string_view to_string(ExperimentKind kind);

struct RabiSettings {
  double half_pi = 0.1;
  double pi = 0.1;
};

/// `points` evenly spaced values from start to stop inclusive.
struct SweepGrid {
  double start = 0.1;
  double stop = 0.1;
  int points = 1;

  std::vector<double> values() const;
};

struct ExperimentSpec {
  ExperimentKind kind = ExperimentKind::single_run;
  ChainParams params;
  RabiSettings rabi;
  SweepGrid grid;
  /// Explicit grid; takes precedence over `grid` when non-empty.
  std::vector<double> grid_values;
  /// Noise half-widths: radians for phase noise, time units for duration noise.
  std::vector<double> epsilons{0.0};
  std::uint64_t seed = 0;
  int trials = 20;
  /// Worker threads for independent jobs; 0 picks the hardware concurrency.
  int threads = 0;
  std::size_t traced_state = 3;
  std::size_t trace_stride = 16;
  IntegratorConfig integrator;
  /// Replaces the compiled protocol when set.
  std::optional<PulseSequence> sequence;

  void validate() const;
  std::vector<double> grid_points() const;
};

struct RowSummary {
  double min_resonant = 0.0;
  double max_resonant = 0.0;
  /// max over the resonant states of |P - 1/4|
  double max_resonant_deviation = 0.0;
  /// Total probability outside the resonant states.
  double total_error = 0.0;
  std::size_t max_error_state = 0;
  double max_error_prob = 0.0;
};

RowSummary summarize(std::span<const double> probabilities);

struct ResultRow {
  /// Rabi frequency, frequency step, or noise half-width, depending on the kind.
  double variable = 0.0;
  /// Trial index for noise rows; empty for trial means and other kinds.
  std::optional<int> trial;
  std::vector<double> probabilities;
  RowSummary summary;
  /// sweep_detuning only: deviation more than 3x the widest-spacing row.
  bool significant = false;
};

struct ExperimentResult {
  ExperimentKind kind = ExperimentKind::single_run;
  std::vector<ResultRow> rows;
  std::optional<TimeTrace> trace;
  /// trace only: end times of the last three pulses.
  std::vector<double> markers;
  std::map<std::string, double> metadata;
};

/// Uniform draw on [lo, hi] from one 64-bit output using its top 53 bits.
double uniform_from_bits(std::uint64_t bits, double lo, double hi);

/// Adds an independent uniform offset in [-epsilon, epsilon] to every phase,
/// drawn in pulse order from mt19937_64 seeded with `seed`.
PulseSequence perturb_phases(const PulseSequence& sequence, double epsilon, std::uint64_t seed);

/// Same for durations; Rabi frequencies are kept, so perturbed pulses become
/// custom. Throws DomainError unless 0 <= epsilon < shortest duration.
PulseSequence perturb_durations(const PulseSequence& sequence, double epsilon, std::uint64_t seed);

ExperimentResult run_single(const ExperimentSpec& spec);
ExperimentResult sweep_rabi(const ExperimentSpec& spec);
ExperimentResult sweep_detuning(const ExperimentSpec& spec);
ExperimentResult run_trace(const ExperimentSpec& spec);
ExperimentResult run_noise_study(const ExperimentSpec& spec);
ExperimentResult run_minimal_time(const ExperimentSpec& spec);
/// Dispatches on spec.kind.
ExperimentResult run_experiment(const ExperimentSpec& spec);

/// Largest |a(t) - b(t)| over `samples` evenly spaced times in [t_begin, t_end]
/// for the first traced state, with linear interpolation between samples.
double trace_distance(const TimeTrace& a, const TimeTrace& b, double t_begin, double t_end,
                      std::size_t samples = 2001);

void emit_csv(const ExperimentResult& result, std::ostream& out);
void emit_csv(const ExperimentResult& result, const std::filesystem::path& path);
/// Human-readable summary.
void emit_text(const ExperimentResult& result, std::ostream& out);

}  // namespace isingshor

#endif  // ISINGSHOR_EXPERIMENT_RUNNER_HPP_
