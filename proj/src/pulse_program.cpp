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

#include "isingshor/pulse_program.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>

#include "isingshor/errors.hpp"

namespace isingshor {
namespace {

constexpr double kAngleTolerance = 1e-12;

double parse_double(const std::string& token, std::size_t line) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(token, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != token.size()) {
    throw DomainError("pulse table line " + std::to_string(line) + ": cannot parse number '" +
                      token + "'");
  }
  return value;
}

}  // namespace

std::string_view to_string(PulseKind kind) {
  switch (kind) {
    case PulseKind::half_pi:
      return "half_pi";
    case PulseKind::pi:
      return "pi";
    case PulseKind::custom:
      return "custom";
  }
  return "custom";
}

PulseKind parse_pulse_kind(std::string_view text) {
  if (text == "half_pi") return PulseKind::half_pi;
  if (text == "pi") return PulseKind::pi;
  if (text == "custom") return PulseKind::custom;
  throw DomainError("unknown pulse kind '" + std::string(text) + "'");
}

double nominal_angle(PulseKind kind) {
  switch (kind) {
    case PulseKind::half_pi:
      return std::numbers::pi / 2.0;
    case PulseKind::pi:
      return std::numbers::pi;
    case PulseKind::custom:
      break;
  }
  throw DomainError("custom pulses have no nominal rotation angle");
}

void Pulse::validate() const {
  if (!(rabi > 0.0) || !std::isfinite(rabi)) throw DomainError("pulse Rabi frequency must be positive");
  if (!(duration > 0.0) || !std::isfinite(duration)) throw DomainError("pulse duration must be positive");
  if (!std::isfinite(frequency) || !std::isfinite(phase)) {
    throw DomainError("pulse frequency and phase must be finite");
  }
  if (kind != PulseKind::custom && std::abs(angle() - nominal_angle(kind)) >= kAngleTolerance) {
    std::ostringstream msg;
    msg << std::setprecision(17) << to_string(kind) << " pulse has rotation angle " << angle();
    throw DomainError(msg.str());
  }
}

Pulse make_pulse(PulseKind kind, double frequency, double phase, double rabi) {
  if (kind == PulseKind::custom) throw DomainError("make_pulse needs half_pi or pi; use make_custom_pulse");
  if (!(rabi > 0.0)) throw DomainError("pulse Rabi frequency must be positive");
  Pulse pulse{frequency, phase, rabi, nominal_angle(kind) / rabi, kind};
  pulse.validate();
  return pulse;
}

Pulse make_custom_pulse(double frequency, double phase, double rabi, double duration) {
  Pulse pulse{frequency, phase, rabi, duration, PulseKind::custom};
  pulse.validate();
  return pulse;
}

PulseSequence::PulseSequence(std::vector<Pulse> pulses) {
  pulses_.reserve(pulses.size());
  for (const Pulse& p : pulses) push_back(p);
}

void PulseSequence::push_back(const Pulse& pulse) {
  pulse.validate();
  start_times_.push_back(total_duration_);
  pulses_.push_back(pulse);
  total_duration_ += pulse.duration;
}

PulseSequence append(PulseSequence sequence, const Pulse& pulse) {
  sequence.push_back(pulse);
  return sequence;
}

PulseSequence rescale_rabi(const PulseSequence& sequence, double rabi_half_pi, double rabi_pi) {
  if (!(rabi_half_pi > 0.0) || !(rabi_pi > 0.0)) throw DomainError("Rabi frequencies must be positive");
  PulseSequence out;
  for (const Pulse& p : sequence.pulses()) {
    if (p.kind == PulseKind::custom) throw DomainError("cannot rescale a custom pulse");
    const double rabi = p.kind == PulseKind::half_pi ? rabi_half_pi : rabi_pi;
    out.push_back(make_pulse(p.kind, p.frequency, p.phase, rabi));
  }
  return out;
}

void write_pulse_table(std::ostream& out, const PulseSequence& sequence) {
  out << "# kind frequency phase rabi duration\n";
  const auto old_precision = out.precision(std::numeric_limits<double>::max_digits10);
  for (const Pulse& p : sequence.pulses()) {
    out << to_string(p.kind) << ' ' << p.frequency << ' ' << p.phase << ' ' << p.rabi << ' '
        << p.duration << '\n';
  }
  out.precision(old_precision);
}

PulseSequence read_pulse_table(std::istream& in) {
  PulseSequence sequence;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string kind_text, freq, phase, rabi, duration, extra;
    if (!(fields >> kind_text)) continue;
    if (!(fields >> freq >> phase >> rabi >> duration) || (fields >> extra)) {
      throw DomainError("pulse table line " + std::to_string(line_no) + ": expected 5 fields");
    }
    const PulseKind kind = parse_pulse_kind(kind_text);
    const double f = parse_double(freq, line_no);
    const double ph = parse_double(phase, line_no);
    const double r = parse_double(rabi, line_no);
    try {
      if (duration == "-") {
        sequence.push_back(make_pulse(kind, f, ph, r));
      } else {
        sequence.push_back(Pulse{f, ph, r, parse_double(duration, line_no), kind});
      }
    } catch (const DomainError& e) {
      throw DomainError("pulse table line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return sequence;
}

PulseSequence load_pulse_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open pulse table " + path.string());
  return read_pulse_table(in);
}

void save_pulse_table(const std::filesystem::path& path, const PulseSequence& sequence) {
  std::ofstream out(path);
  if (!out) throw DomainError("cannot write pulse table " + path.string());
  write_pulse_table(out, sequence);
  if (!out) throw DomainError("write failed for pulse table " + path.string());
}

}  // namespace isingshor
