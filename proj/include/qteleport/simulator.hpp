#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "qteleport/circuit.hpp"
#include "qteleport/dsl.hpp"
#include "qteleport/rng.hpp"
#include "qteleport/state.hpp"

namespace qteleport {

/// Monte-Carlo error parameters: a per-gate-application depolarizing
/// probability (uniform random Pauli per involved qubit) and an
/// independent classical flip per recorded measurement bit.
struct NoiseModel {
  double depolarizing_p = 0.0;
  double readout_flip_q = 0.0;

  bool in_range() const {
    return depolarizing_p >= 0.0 && depolarizing_p <= 1.0 && readout_flip_q >= 0.0 &&
           readout_flip_q <= 1.0;
  }
};

struct RunConfig {
  std::uint64_t shots = 8192;
  std::uint64_t seed = 0;
  std::optional<NoiseModel> noise;
};

/// Shot counts per classical bitstring. Keys render classical bit 0
/// first (leftmost character).
struct Histogram {
  std::uint64_t shots = 0;
  int n_bits = 0;
  std::map<std::string, std::uint64_t> counts;

  double frequency(const std::string& key) const {
    if (shots == 0) return 0.0;
    auto it = counts.find(key);
    return it == counts.end() ? 0.0 : static_cast<double>(it->second) / static_cast<double>(shots);
  }
};

/// Z-basis measurement: outcome 1 iff u >= P(qubit = 0), state collapsed
/// and renormalized. Deterministic in (state, qubit, u).
inline std::pair<int, StateVector> measure_collapse(StateVector state, int qubit, double u) {
  const double p0 = probability_of_zero(state, qubit);
  const int outcome = (u >= p0) ? 1 : 0;
  return project_qubit(std::move(state), qubit, outcome);
}

/// Applies the gate iff the recorded classical value matches.
inline StateVector conditional_apply(StateVector state, GateName gate, int target,
                                     int classical_bit_value, int required_value) {
  if (gate_arity(gate) != 1)
    throw std::invalid_argument("conditional gates must be single-qubit");
  if (classical_bit_value != required_value) return state;
  return apply_1q(std::move(state), standard_gate(gate), target);
}

/// With probability p per listed qubit, applies a uniformly random Pauli
/// from {X, Y, Z}; identity otherwise. `rng` yields uniforms in [0, 1).
template <typename Rng>
StateVector apply_noise(StateVector state, std::span<const int> targets, double p, Rng&& rng) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("depolarizing probability out of range");
  if (p == 0.0) return state;
  static constexpr GateName paulis[3] = {GateName::X, GateName::Y, GateName::Z};
  for (int qubit : targets) {
    const double u = rng();
    if (u >= p) continue;
    const int pick = std::min(2, static_cast<int>(rng() * 3.0));
    state = apply_1q(std::move(state), standard_gate(paulis[pick]), qubit);
  }
  return state;
}

namespace detail {

inline void require_valid(const Circuit& circuit) {
  if (ValidationReport report = validate(circuit); !report.ok())
    throw std::invalid_argument("malformed circuit: " + report.error->to_string());
}

inline void require_valid(const RunConfig& cfg) {
  if (cfg.shots < 1) throw std::invalid_argument("shots must be at least 1");
  if (cfg.noise && !cfg.noise->in_range())
    throw std::invalid_argument("noise probabilities must lie in [0, 1]");
}

inline std::string render_bits(const std::vector<int>& bits) {
  std::string key(bits.size(), '0');
  for (std::size_t i = 0; i < bits.size(); ++i) key[i] = bits[i] ? '1' : '0';
  return key;
}

/// One trajectory: gates in order, noise and measurement randomness from
/// the shot's own counter-based stream. Returns the final state; the
/// recorded classical bits land in `bits`.
inline StateVector run_trajectory(const Circuit& circuit, std::uint64_t seed, std::uint64_t shot,
                                  const std::optional<NoiseModel>& noise, std::vector<int>& bits) {
  RandomStream stream(seed, shot);
  auto uniform = [&stream]() { return stream.uniform(); };
  const double p = noise ? noise->depolarizing_p : 0.0;
  const double q = noise ? noise->readout_flip_q : 0.0;

  StateVector state(circuit.n_qubits);
  bits.assign(static_cast<std::size_t>(circuit.n_classical_bits), 0);
  for (const Instruction& ins : circuit.instructions) {
    switch (ins.kind) {
      case Instruction::Kind::Gate1: {
        state = apply_1q(std::move(state), standard_gate(ins.gate), ins.target);
        const int targets[1] = {ins.target};
        if (p > 0.0) state = apply_noise(std::move(state), targets, p, uniform);
        break;
      }
      case Instruction::Kind::Cnot: {
        state = apply_cnot(std::move(state), ins.control, ins.target);
        const int targets[2] = {ins.control, ins.target};
        if (p > 0.0) state = apply_noise(std::move(state), targets, p, uniform);
        break;
      }
      case Instruction::Kind::Measure: {
        auto [outcome, collapsed] = measure_collapse(std::move(state), ins.target, stream.uniform());
        state = std::move(collapsed);
        if (q > 0.0 && stream.uniform() < q) outcome ^= 1;
        bits[static_cast<std::size_t>(ins.classical_bit)] = outcome;
        break;
      }
      case Instruction::Kind::ConditionalGate1: {
        const int value = bits[static_cast<std::size_t>(ins.classical_bit)];
        if (value == ins.required_value) {
          state = apply_1q(std::move(state), standard_gate(ins.gate), ins.target);
          const int targets[1] = {ins.target};
          if (p > 0.0) state = apply_noise(std::move(state), targets, p, uniform);
        }
        break;
      }
    }
  }
  return state;
}

}  // namespace detail

/// Runs every trajectory serially, in shot order, handing the recorded
/// bits and final state to the sink. Useful for estimators that need
/// more than counts.
template <typename Sink>
void for_each_trajectory(const Circuit& circuit, const RunConfig& cfg, Sink&& sink) {
  detail::require_valid(circuit);
  detail::require_valid(cfg);
  std::vector<int> bits;
  for (std::uint64_t shot = 0; shot < cfg.shots; ++shot) {
    StateVector state = detail::run_trajectory(circuit, cfg.seed, shot, cfg.noise, bits);
    sink(shot, bits, state);
  }
}

/// Samples cfg.shots independent trajectories. Shot s draws all of its
/// randomness from stream (seed, s), so the histogram is bit-identical
/// across runs and for any worker count.
inline Histogram run_shots(const Circuit& circuit, const RunConfig& cfg, int workers = 1) {
  detail::require_valid(circuit);
  detail::require_valid(cfg);
  if (workers < 1) throw std::invalid_argument("worker count must be at least 1");
  const std::uint64_t shots = cfg.shots;
  const auto worker_count = static_cast<std::uint64_t>(workers) > shots
                                ? static_cast<int>(shots)
                                : workers;

  std::vector<std::map<std::string, std::uint64_t>> partials(static_cast<std::size_t>(worker_count));
  auto run_range = [&](std::uint64_t begin, std::uint64_t end,
                       std::map<std::string, std::uint64_t>& local) {
    std::vector<int> bits;
    for (std::uint64_t shot = begin; shot < end; ++shot) {
      detail::run_trajectory(circuit, cfg.seed, shot, cfg.noise, bits);
      ++local[detail::render_bits(bits)];
    }
  };

  if (worker_count == 1) {
    run_range(0, shots, partials[0]);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(worker_count));
    const std::uint64_t chunk = (shots + worker_count - 1) / worker_count;
    for (int w = 0; w < worker_count; ++w) {
      const std::uint64_t begin = chunk * static_cast<std::uint64_t>(w);
      const std::uint64_t end = std::min(shots, begin + chunk);
      pool.emplace_back(run_range, begin, end, std::ref(partials[static_cast<std::size_t>(w)]));
    }
    for (std::thread& t : pool) t.join();
  }

  Histogram h;
  h.shots = shots;
  h.n_bits = circuit.n_classical_bits;
  for (const auto& local : partials)
    for (const auto& [key, count] : local) h.counts[key] += count;
  return h;
}

/// Exact run by measurement-branch enumeration. Returns the joint
/// distribution over classical bitstrings; `final_state` is engaged only
/// when the circuit contains no measurement.
struct AnalyticBranch {
  double probability = 1.0;
  std::vector<int> classical_bits;
  StateVector state;
};

struct AnalyticResult {
  std::vector<AnalyticBranch> branches;
  std::vector<double> classical_probabilities;  // indexed with bit 0 as the top bit
  std::optional<StateVector> final_state;
};

inline AnalyticResult run_analytic(const Circuit& circuit, StateVector initial) {
  detail::require_valid(circuit);
  if (initial.n_qubits() != circuit.n_qubits)
    throw std::invalid_argument("initial state size does not match circuit");
  if (circuit.n_classical_bits > 20)
    throw std::invalid_argument("analytic mode enumerates at most 20 classical bits");

  // Branches below this weight are numerically extinct and dropped.
  constexpr double kBranchCutoff = 1e-12;

  std::vector<AnalyticBranch> branches;
  branches.push_back(AnalyticBranch{
      1.0, std::vector<int>(static_cast<std::size_t>(circuit.n_classical_bits), 0),
      std::move(initial)});

  for (const Instruction& ins : circuit.instructions) {
    switch (ins.kind) {
      case Instruction::Kind::Gate1:
        for (AnalyticBranch& br : branches)
          br.state = apply_1q(std::move(br.state), standard_gate(ins.gate), ins.target);
        break;
      case Instruction::Kind::Cnot:
        for (AnalyticBranch& br : branches)
          br.state = apply_cnot(std::move(br.state), ins.control, ins.target);
        break;
      case Instruction::Kind::Measure: {
        std::vector<AnalyticBranch> next;
        next.reserve(branches.size() * 2);
        for (AnalyticBranch& br : branches) {
          const double p0 = probability_of_zero(br.state, ins.target);
          for (int outcome = 0; outcome < 2; ++outcome) {
            const double p = outcome == 0 ? p0 : 1.0 - p0;
            const double weight = br.probability * p;
            if (weight <= kBranchCutoff) continue;
            auto [bit, collapsed] = project_qubit(br.state, ins.target, outcome);
            auto bits = br.classical_bits;
            bits[static_cast<std::size_t>(ins.classical_bit)] = bit;
            next.push_back(AnalyticBranch{weight, std::move(bits), std::move(collapsed)});
          }
        }
        branches = std::move(next);
        break;
      }
      case Instruction::Kind::ConditionalGate1:
        for (AnalyticBranch& br : branches)
          br.state = conditional_apply(std::move(br.state), ins.gate, ins.target,
                                       br.classical_bits[static_cast<std::size_t>(ins.classical_bit)],
                                       ins.required_value);
        break;
    }
  }

  AnalyticResult result;
  result.classical_probabilities.assign(std::size_t{1} << circuit.n_classical_bits, 0.0);
  for (const AnalyticBranch& br : branches) {
    std::uint64_t index = 0;
    for (std::size_t i = 0; i < br.classical_bits.size(); ++i)
      index = (index << 1) | static_cast<std::uint64_t>(br.classical_bits[i]);
    result.classical_probabilities[index] += br.probability;
  }
  if (!circuit.has_measurement() && branches.size() == 1)
    result.final_state = branches.front().state;
  result.branches = std::move(branches);
  return result;
}

inline AnalyticResult run_analytic(const Circuit& circuit) {
  return run_analytic(circuit, StateVector(circuit.n_qubits));
}

/// Keeps only the shots whose recorded bits match every constraint
/// (classical bit index -> required value). Keys keep their full width.
inline Histogram post_select(const Histogram& h, const std::map<int, int>& constraints) {
  for (const auto& [bit, value] : constraints) {
    if (bit < 0 || bit >= h.n_bits) throw std::out_of_range("unknown classical bit index");
    if (value != 0 && value != 1) throw std::invalid_argument("constraint value must be 0 or 1");
  }
  Histogram out;
  out.n_bits = h.n_bits;
  for (const auto& [key, count] : h.counts) {
    bool keep = true;
    for (const auto& [bit, value] : constraints)
      if (key[static_cast<std::size_t>(bit)] != static_cast<char>('0' + value)) {
        keep = false;
        break;
      }
    if (keep) {
      out.counts[key] = count;
      out.shots += count;
    }
  }
  return out;
}

}  // namespace qteleport
