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

#ifndef ISINGSHOR_PULSE_PROGRAM_HPP_
#define ISINGSHOR_PULSE_PROGRAM_HPP_

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string_view>
#include <vector>

namespace isingshor {

enum class PulseKind { half_pi, pi, custom };

std::string_view to_string(PulseKind kind);
/// Accepts "half_pi", "pi" or "custom"; throws DomainError otherwise.
PulseKind parse_pulse_kind(std::string_view text);
/// pi/2 or pi. Throws DomainError for custom pulses.
double nominal_angle(PulseKind kind);

/// A rectangular RF pulse. The carrier is exp[i(frequency * t + phase)] in
/// absolute time, so the phase is not reset at the start of the pulse.
struct Pulse {
  double frequency = 0.0;
  double phase = 0.0;
  double rabi = 0.0;
  double duration = 0.0;
  PulseKind kind = PulseKind::custom;

  double angle() const { return rabi * duration; }
  void validate() const;
};

Pulse make_pulse(PulseKind kind, double frequency, double phase, double rabi);
Pulse make_custom_pulse(double frequency, double phase, double rabi, double duration);

/// Back-to-back pulses on a global clock starting at t = 0.
class PulseSequence {
 public:
  PulseSequence() = default;
  explicit PulseSequence(std::vector<Pulse> pulses);

  const std::vector<Pulse>& pulses() const { return pulses_; }
  const std::vector<double>& start_times() const { return start_times_; }
  std::size_t size() const { return pulses_.size(); }
  bool empty() const { return pulses_.empty(); }
  const Pulse& operator[](std::size_t i) const { return pulses_[i]; }

  double start_time(std::size_t i) const { return start_times_.at(i); }
  double end_time(std::size_t i) const { return start_times_.at(i) + pulses_.at(i).duration; }
  double total_duration() const { return total_duration_; }

  void push_back(const Pulse& pulse);

 private:
  std::vector<Pulse> pulses_;
  std::vector<double> start_times_;
  double total_duration_ = 0.0;
};

PulseSequence append(PulseSequence sequence, const Pulse& pulse);

/// Replaces each pulse's Rabi frequency by the kind-matching value and
/// recomputes its duration so the rotation angle is unchanged.
PulseSequence rescale_rabi(const PulseSequence& sequence, double rabi_half_pi, double rabi_pi);

// Plain-text pulse table: one pulse per line,
//   kind frequency phase rabi duration
// whitespace separated, '#' starts a comment. For half_pi and pi pulses the
// duration may be written as '-' to derive it from the Rabi frequency.
void write_pulse_table(std::ostream& out, const PulseSequence& sequence);
PulseSequence read_pulse_table(std::istream& in);
PulseSequence load_pulse_table(const std::filesystem::path& path);
void save_pulse_table(const std::filesystem::path& path, const PulseSequence& sequence);

}  // namespace isingshor

#endif  // ISINGSHOR_PULSE_PROGRAM_HPP_
