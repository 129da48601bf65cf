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

#include "isingshor/experiment_runner.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <stdexcept>
#include <functional>
#include <iomanip>
#include <limits>
#include <mutex>
#include <ostream>
#include <random>
#include <thread>

#include "isingshor/analytic_oracles.hpp"
#include "isingshor/errors.hpp"
#include "isingshor/shor_pipeline.hpp"

namespace isingshor {
namespace {

// Runs job(i) for i in [0, n) on up to `threads` workers. Results land in
// input order, so the output does not depend on scheduling. The first
// exception thrown by any job is rethrown.
template <typename T>
std::vector<T> parallel_map(std::size_t n, int threads, const std::function<T(std::size_t)>& job) {
  std::vector<std::optional<T>> slots(n);
  std::size_t workers = threads > 0 ? static_cast<std::size_t>(threads)
                                    : std::max(1U, std::thread::hardware_concurrency());
  workers = std::min(workers, n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) slots[i].emplace(job(i));
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < n; i = next++) {
          try {
            slots[i].emplace(job(i));
          } catch (...) {
            std::lock_guard lock(error_mutex);
            if (!error) error = std::current_exception();
          }
        }
      });
    }
    pool.clear();
    if (error) std::rethrow_exception(error);
  }
  std::vector<T> out;
  out.reserve(n);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

PulseSequence base_sequence(const ExperimentSpec& spec, const ChainParams& params) {
  if (spec.sequence) return *spec.sequence;
  return compile_shor4(params, spec.rabi.half_pi, spec.rabi.pi);
}

StateVector simulate(const ChainParams& params, const PulseSequence& seq, const IntegratorConfig& config) {
  const TransitionTable table = build_transition_table(params);
  return evolve_sequence(StateVector(params.num_spins), seq, table, config).state;
}

ResultRow make_row(double variable, std::vector<double> probabilities, std::optional<int> trial = {}) {
  ResultRow row;
  row.variable = variable;
  row.trial = trial;
  row.summary = summarize(probabilities);
  row.probabilities = std::move(probabilities);
  return row;
}

void check_kind(const ExperimentSpec& spec, std::initializer_list<ExperimentKind> kinds) {
  spec.validate();
  if (std::find(kinds.begin(), kinds.end(), spec.kind) == kinds.end()) {
    throw DomainError("experiment kind " + std::string(to_string(spec.kind)) + " does not match the operation");
  }
}

double interpolate(const TimeTrace& trace, double t) {
  const auto& s = trace.samples;
  auto it = std::lower_bound(s.begin(), s.end(), t, [](const TraceSample& a, double v) { return a.t < v; });
  if (it == s.begin()) return it->probabilities.at(0);
  if (it == s.end()) return s.back().probabilities.at(0);
  const TraceSample& hi = *it;
  const TraceSample& lo = *(it - 1);
  if (hi.t == lo.t) return hi.probabilities.at(0);
  const double w = (t - lo.t) / (hi.t - lo.t);
  return (1.0 - w) * lo.probabilities.at(0) + w * hi.probabilities.at(0);
}

}  // namespace

std::string_view to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::single_run: return "single_run";
    case ExperimentKind::sweep_rabi: return "sweep_rabi";
    case ExperimentKind::sweep_detuning: return "sweep_detuning";
    case ExperimentKind::trace: return "trace";
    case ExperimentKind::phase_noise: return "phase_noise";
    case ExperimentKind::duration_noise: return "duration_noise";
    case ExperimentKind::minimal_time: return "minimal_time";
  }
  return "unknown";
}

std::vector<double> SweepGrid::values() const {
  if (points < 1) throw DomainError("grid needs at least one point");
  if (!std::isfinite(start) || !std::isfinite(stop)) throw DomainError("grid bounds must be finite");
  std::vector<double> out(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) {
    out[i] = points == 1 ? start : start + (stop - start) * i / (points - 1);
  }
  return out;
}

void ExperimentSpec::validate() const {
  params.validate();
  integrator.validate();
  if (!(rabi.half_pi > 0.0) || !(rabi.pi > 0.0)) throw DomainError("Rabi frequencies must be positive");
  if (grid_values.empty() && grid.points < 1) throw DomainError("grid needs at least one point");
  for (double e : epsilons) {
    if (!(e >= 0.0) || !std::isfinite(e)) throw DomainError("epsilon must be >= 0");
  }
  if (trials < 1) throw DomainError("trials must be >= 1");
  if (threads < 0) throw DomainError("threads must be >= 0");
  if (trace_stride < 1) throw DomainError("trace stride must be >= 1");
  if (traced_state >= params.dimension()) throw DomainError("traced state out of range");
}

std::vector<double> ExperimentSpec::grid_points() const {
  return grid_values.empty() ? grid.values() : grid_values;
}

RowSummary summarize(std::span<const double> probabilities) {
  RowSummary s;
  s.min_resonant = std::numeric_limits<double>::infinity();
  s.max_resonant = -std::numeric_limits<double>::infinity();
  for (std::size_t p = 0; p < probabilities.size(); ++p) {
    const double prob = probabilities[p];
    if (std::find(kResonantStates.begin(), kResonantStates.end(), p) != kResonantStates.end()) {
      s.min_resonant = std::min(s.min_resonant, prob);
      s.max_resonant = std::max(s.max_resonant, prob);
      s.max_resonant_deviation = std::max(s.max_resonant_deviation, std::abs(prob - 0.25));
    } else {
      s.total_error += prob;
      if (prob > s.max_error_prob) {
        s.max_error_prob = prob;
        s.max_error_state = p;
      }
    }
  }
  return s;
}

double uniform_from_bits(std::uint64_t bits, double lo, double hi) {
  return lo + (hi - lo) * (static_cast<double>(bits >> 11) * 0x1.0p-53);
}

PulseSequence perturb_phases(const PulseSequence& sequence, double epsilon, std::uint64_t seed) {
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) throw DomainError("epsilon must be >= 0");
  if (epsilon == 0.0) return sequence;
  std::mt19937_64 rng(seed);
  PulseSequence out;
  for (Pulse p : sequence.pulses()) {
    p.phase += uniform_from_bits(rng(), -epsilon, epsilon);
    out.push_back(p);
  }
  return out;
}

PulseSequence perturb_durations(const PulseSequence& sequence, double epsilon, std::uint64_t seed) {
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) throw DomainError("epsilon must be >= 0");
  if (epsilon == 0.0) return sequence;
  for (const Pulse& p : sequence.pulses()) {
    if (epsilon >= p.duration) throw DomainError("epsilon must stay below every pulse duration");
  }
  std::mt19937_64 rng(seed);
  PulseSequence out;
  for (const Pulse& p : sequence.pulses()) {
    const double tau = p.duration + uniform_from_bits(rng(), -epsilon, epsilon);
    out.push_back(make_custom_pulse(p.frequency, p.phase, p.rabi, tau));
  }
  return out;
}

ExperimentResult run_single(const ExperimentSpec& spec) {
  check_kind(spec, {ExperimentKind::single_run});
  const ShorRun run = run_shor(spec.params, base_sequence(spec, spec.params), spec.integrator);
  ExperimentResult result;
  result.kind = spec.kind;
  result.rows.push_back(make_row(spec.rabi.pi, run.final_state.probabilities()));
  result.metadata["period"] = run.period;
  result.metadata["factor"] = static_cast<double>(run.factor);
  result.metadata["total_duration"] = run.sequence.total_duration();
  return result;
}

ExperimentResult sweep_rabi(const ExperimentSpec& spec) {
  check_kind(spec, {ExperimentKind::sweep_rabi});
  const PulseSequence base = base_sequence(spec, spec.params);
  const std::vector<double> grid = spec.grid_points();
  ExperimentResult result;
  result.kind = spec.kind;
  result.rows = parallel_map<ResultRow>(grid.size(), spec.threads, [&](std::size_t i) {
    const PulseSequence seq = rescale_rabi(base, grid[i], grid[i]);
    return make_row(grid[i], simulate(spec.params, seq, spec.integrator).probabilities());
  });
  return result;
}

ExperimentResult sweep_detuning(const ExperimentSpec& spec) {
  check_kind(spec, {ExperimentKind::sweep_detuning});
  const std::vector<double> grid = spec.grid_points();
  ExperimentResult result;
  result.kind = spec.kind;
  result.rows = parallel_map<ResultRow>(grid.size(), spec.threads, [&](std::size_t i) {
    ChainParams params = spec.params;
    params.frequency_step = grid[i];
    params.validate();
    return make_row(grid[i], simulate(params, base_sequence(spec, params), spec.integrator).probabilities());
  });
  const auto widest = std::max_element(result.rows.begin(), result.rows.end(),
                                       [](const ResultRow& a, const ResultRow& b) { return a.variable < b.variable; });
  const double reference = widest->summary.max_resonant_deviation;
  for (ResultRow& row : result.rows) row.significant = row.summary.max_resonant_deviation > 3.0 * reference;
  result.metadata["reference_delta_omega"] = widest->variable;
  result.metadata["reference_deviation"] = reference;
  return result;
}

ExperimentResult run_trace(const ExperimentSpec& spec) {
  check_kind(spec, {ExperimentKind::trace});
  const PulseSequence seq = base_sequence(spec, spec.params);
  IntegratorConfig config = spec.integrator;
  config.trace_stride = spec.trace_stride;
  config.traced_states = {spec.traced_state};
  const TransitionTable table = build_transition_table(spec.params);
  Evolution evo = evolve_sequence(StateVector(spec.params.num_spins), seq, table, config);
  ExperimentResult result;
  result.kind = spec.kind;
  result.rows.push_back(make_row(spec.params.frequency_step, evo.state.probabilities()));
  result.trace = std::move(evo.trace);
  for (std::size_t i = seq.size() >= 3 ? seq.size() - 3 : 0; i < seq.size(); ++i) {
    result.markers.push_back(seq.end_time(i));
  }
  result.metadata["traced_state"] = static_cast<double>(spec.traced_state);
  result.metadata["total_duration"] = seq.total_duration();
  return result;
}

ExperimentResult run_noise_study(const ExperimentSpec& spec) {
  check_kind(spec, {ExperimentKind::phase_noise, ExperimentKind::duration_noise});
  const PulseSequence base = base_sequence(spec, spec.params);
  const bool phase = spec.kind == ExperimentKind::phase_noise;
  const std::size_t trials = static_cast<std::size_t>(spec.trials);
  const std::size_t jobs = spec.epsilons.size() * trials;
  // Validate every epsilon before any work starts.
  for (double e : spec.epsilons) {
    if (phase) {
      perturb_phases(base, e, spec.seed);
    } else {
      perturb_durations(base, e, spec.seed);
    }
  }
  const std::vector<ResultRow> per_trial = parallel_map<ResultRow>(jobs, spec.threads, [&](std::size_t j) {
    const double eps = spec.epsilons[j / trials];
    const int trial = static_cast<int>(j % trials);
    const std::uint64_t seed = spec.seed + static_cast<std::uint64_t>(trial);
    const PulseSequence seq = phase ? perturb_phases(base, eps, seed) : perturb_durations(base, eps, seed);
    return make_row(eps, simulate(spec.params, seq, spec.integrator).probabilities(), trial);
  });
  ExperimentResult result;
  result.kind = spec.kind;
  for (std::size_t e = 0; e < spec.epsilons.size(); ++e) {
    std::vector<double> mean(spec.params.dimension(), 0.0);
    for (std::size_t t = 0; t < trials; ++t) {
      const ResultRow& row = per_trial[e * trials + t];
      for (std::size_t p = 0; p < mean.size(); ++p) mean[p] += row.probabilities[p];
      result.rows.push_back(row);
    }
    for (double& m : mean) m /= static_cast<double>(trials);
    result.rows.push_back(make_row(spec.epsilons[e], std::move(mean)));
  }
  return result;
}

ExperimentResult run_minimal_time(const ExperimentSpec& spec) {
  check_kind(spec, {ExperimentKind::minimal_time});
  const double j = spec.params.ising_constant;
  const double rabi_half = design_rabi_for_chain(j, PulseKind::half_pi, 1);
  const double rabi_pi = design_rabi_for_chain(j, PulseKind::pi, 1);
  const PulseSequence seq = spec.sequence ? rescale_rabi(*spec.sequence, rabi_half, rabi_pi)
                                          : compile_shor4(spec.params, rabi_half, rabi_pi);
  ExperimentResult result;
  result.kind = spec.kind;
  result.rows.push_back(make_row(rabi_pi, simulate(spec.params, seq, spec.integrator).probabilities()));
  result.metadata["rabi_half_pi"] = rabi_half;
  result.metadata["rabi_pi"] = rabi_pi;
  result.metadata["total_duration"] = seq.total_duration();
  result.metadata["uniform_0.1_duration"] = rescale_rabi(seq, 0.1, 0.1).total_duration();
  result.metadata["uniform_0.25_duration"] = rescale_rabi(seq, 0.25, 0.25).total_duration();
  return result;
}

ExperimentResult run_experiment(const ExperimentSpec& spec) {
  switch (spec.kind) {
    case ExperimentKind::single_run: return run_single(spec);
    case ExperimentKind::sweep_rabi: return sweep_rabi(spec);
    case ExperimentKind::sweep_detuning: return sweep_detuning(spec);
    case ExperimentKind::trace: return run_trace(spec);
    case ExperimentKind::phase_noise:
    case ExperimentKind::duration_noise: return run_noise_study(spec);
    case ExperimentKind::minimal_time: return run_minimal_time(spec);
  }
  throw DomainError("unknown experiment kind");
}

double trace_distance(const TimeTrace& a, const TimeTrace& b, double t_begin, double t_end, std::size_t samples) {
  if (a.samples.empty() || b.samples.empty()) throw DomainError("empty trace");
  if (samples < 2 || !(t_end >= t_begin)) throw DomainError("invalid comparison window");
  double gap = 0.0;
  for (std::size_t i = 0; i < samples; ++i) {
    const double t = t_begin + (t_end - t_begin) * static_cast<double>(i) / static_cast<double>(samples - 1);
    gap = std::max(gap, std::abs(interpolate(a, t) - interpolate(b, t)));
  }
  return gap;
}

namespace {

std::string bits_of(std::size_t p, std::size_t dimension) {
  std::string s;
  for (std::size_t mask = dimension >> 1; mask > 0; mask >>= 1) s += (p & mask) ? '1' : '0';
  return s;
}

void probability_header(std::ostream& out, std::size_t dim) {
  for (std::size_t p = 0; p < dim; ++p) out << ",p" << p;
}

void probability_cells(std::ostream& out, const ResultRow& row) {
  for (double v : row.probabilities) out << ',' << v;
}

}  // namespace

void emit_csv(const ExperimentResult& result, std::ostream& out) {
  const auto old_precision = out.precision(std::numeric_limits<double>::max_digits10);
  const std::size_t dim = result.rows.empty() ? 16 : result.rows.front().probabilities.size();
  switch (result.kind) {
    case ExperimentKind::single_run:
    case ExperimentKind::minimal_time:
      out << "p,bits,probability\n";
      for (const ResultRow& row : result.rows) {
        for (std::size_t p = 0; p < row.probabilities.size(); ++p) {
          out << p << ',' << bits_of(p, row.probabilities.size()) << ',' << row.probabilities[p] << '\n';
        }
      }
      break;
    case ExperimentKind::sweep_rabi:
      out << "rabi,p1,p3,p5,p7,max_err_state,max_err_prob\n";
      for (const ResultRow& row : result.rows) {
        out << row.variable;
        for (std::size_t p : kResonantStates) out << ',' << row.probabilities[p];
        out << ',' << row.summary.max_error_state << ',' << row.summary.max_error_prob << '\n';
      }
      break;
    case ExperimentKind::sweep_detuning:
      out << "delta_omega";
      probability_header(out, dim);
      out << ",max_resonant_deviation,max_err_state,max_err_prob,significant\n";
      for (const ResultRow& row : result.rows) {
        out << row.variable;
        probability_cells(out, row);
        out << ',' << row.summary.max_resonant_deviation << ',' << row.summary.max_error_state << ','
            << row.summary.max_error_prob << ',' << (row.significant ? 1 : 0) << '\n';
      }
      break;
    case ExperimentKind::trace:
      if (result.trace) {
        write_trace_csv(out, *result.trace);
      } else {
        const auto it = result.metadata.find("traced_state");
        out << "t,prob_p" << (it == result.metadata.end() ? 3 : static_cast<std::size_t>(it->second)) << '\n';
      }
      break;
    case ExperimentKind::phase_noise:
    case ExperimentKind::duration_noise:
      out << "epsilon,trial";
      probability_header(out, dim);
      out << ",total_err,max_err_state,max_err_prob\n";
      for (const ResultRow& row : result.rows) {
        out << row.variable << ',';
        if (row.trial) {
          out << *row.trial;
        } else {
          out << "mean";
        }
        probability_cells(out, row);
        out << ',' << row.summary.total_error << ',' << row.summary.max_error_state << ','
            << row.summary.max_error_prob << '\n';
      }
      break;
  }
  out.precision(old_precision);
}

void emit_csv(const ExperimentResult& result, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  emit_csv(result, out);
  out.flush();
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

void emit_text(const ExperimentResult& result, std::ostream& out) {
  out << "experiment: " << to_string(result.kind) << '\n';
  for (const auto& [key, value] : result.metadata) out << "  " << key << " = " << value << '\n';
  if (result.kind == ExperimentKind::trace && result.trace) {
    out << "  samples = " << result.trace->samples.size() << '\n';
    for (double m : result.markers) out << "  pulse end at t = " << m << '\n';
  }
  for (const ResultRow& row : result.rows) {
    out << "row " << row.variable;
    if (row.trial) out << " trial " << *row.trial;
    out << ":";
    for (std::size_t p : kResonantStates) {
      if (p < row.probabilities.size()) out << " P" << p << "=" << row.probabilities[p];
    }
    out << "  max error |" << row.summary.max_error_state << "> = " << row.summary.max_error_prob
        << "  total error = " << row.summary.total_error;
    if (row.significant) out << "  [significant]";
    out << '\n';
  }
}

}  // namespace isingshor
