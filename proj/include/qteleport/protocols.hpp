#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <stdexcept>
#include <string>

#include "qteleport/density.hpp"
#include "qteleport/simulator.hpp"

namespace qteleport {

/// Alice's two Z-basis results (sender qubit, then her Bell-pair qubit).
struct AliceOutcome {
  int m_i = 0;
  int m_A = 0;

  auto operator<=>(const AliceOutcome&) const = default;
};

inline std::string outcome_key(AliceOutcome o) {
  return std::string{static_cast<char>('0' + o.m_i), static_cast<char>('0' + o.m_A)};
}

inline constexpr std::array<AliceOutcome, 4> all_alice_outcomes = {
    AliceOutcome{0, 0}, AliceOutcome{0, 1}, AliceOutcome{1, 0}, AliceOutcome{1, 1}};

/// The gate Bob must apply for each outcome pair so that his qubit ends
/// in the sender's state (up to a global phase).
constexpr GateName correction_gate(AliceOutcome o) {
  if (o.m_i == 0) return o.m_A == 0 ? GateName::I : GateName::X;
  return o.m_A == 0 ? GateName::Z : GateName::Y;
}

/// Sender-state preparation: H, T, H, S on one qubit. The resulting
/// state is cos(pi/8)|0> + sin(pi/8)|1> times a global phase of pi/8,
/// i.e. a Bloch vector tilted pi/4 from +z.
inline Circuit prep_circuit() {
  Circuit c;
  c.n_qubits = 1;
  c.gate1(GateName::H, 0).gate1(GateName::T, 0).gate1(GateName::H, 0).gate1(GateName::S, 0);
  return c;
}

/// H then CNOT: (|00> + |11>)/sqrt(2).
inline Circuit bell_circuit() {
  Circuit c;
  c.n_qubits = 2;
  c.gate1(GateName::H, 0).cnot(0, 1);
  return c;
}

/// H then a CNOT chain: (|0...0> + |1...1>)/sqrt(2) on 3 to 5 qubits.
inline Circuit ghz_circuit(int n_qubits) {
  if (n_qubits < 3 || n_qubits > 5)
    throw std::out_of_range("ghz circuit supports 3 to 5 qubits");
  Circuit c;
  c.n_qubits = n_qubits;
  c.gate1(GateName::H, 0);
  for (int q = 0; q + 1 < n_qubits; ++q) c.cnot(q, q + 1);
  return c;
}

/// Appends `measure q -> q` for every qubit. Intended for the gate-only
/// protocol circuits above.
inline Circuit with_measure_all(Circuit c) {
  for (int q = 0; q < c.n_qubits; ++q) c.measure(q, q);
  return c;
}

enum class TeleportMode { Postselect, Feedforward };

constexpr std::string_view to_string(TeleportMode mode) {
  return mode == TeleportMode::Postselect ? "postselect" : "feedforward";
}

namespace detail {

/// Everything after state preparation: Bell pair on qubits 1 and 2,
/// entangling CNOT, Hadamard, Alice's measurements, and (in feedforward
/// mode) Bob's conditioned corrections. Bob's qubit is not yet read out.
inline Circuit teleport_tail(TeleportMode mode) {
  Circuit c;
  c.n_qubits = 3;
  c.gate1(GateName::H, 1).cnot(1, 2);
  c.cnot(0, 1).gate1(GateName::H, 0);
  c.measure(0, 0).measure(1, 1);
  if (mode == TeleportMode::Feedforward) {
    // X for m_A = 1, Z for m_i = 1; together they realize I/X/Z/Y up to phase.
    c.conditional(GateName::X, 2, 1, 1);
    c.conditional(GateName::Z, 2, 0, 1);
  }
  return c;
}

inline Circuit prepend_prep(Circuit tail) {
  Circuit c;
  c.n_qubits = tail.n_qubits;
  c.gate1(GateName::H, 0).gate1(GateName::T, 0).gate1(GateName::H, 0).gate1(GateName::S, 0);
  for (const Instruction& ins : tail.instructions) c.instructions.push_back(ins);
  c.n_classical_bits = tail.n_classical_bits;
  return c;
}

}  // namespace detail

/// Full protocol circuit on qubits (0, 1, 2) = (sender, Alice, Bob):
/// prep on 0, Bell pair on 1-2, CNOT 0->1, H on 0, Alice's measurements,
/// then either in-circuit corrections (feedforward) or none (postselect,
/// corrections are applied classically in analysis). Bob is measured
/// into classical bit 2 either way.
inline Circuit teleport_circuit(TeleportMode mode) {
  Circuit c = detail::prepend_prep(detail::teleport_tail(mode));
  c.measure(2, 2);
  return c;
}

/// The sender state without its global phase; the reference for fidelity
/// and theory populations.
inline StateVector prep_state_theory() {
  using std::numbers::pi;
  return StateVector::from_amplitudes({std::cos(pi / 8), std::sin(pi / 8)});
}

inline double theory_p_alpha() {
  const double c = std::cos(std::numbers::pi / 8);
  return c * c;
}

inline double theory_p_beta() { return 1.0 - theory_p_alpha(); }

/// Bob's exact mixed state after a feedforward run on an arbitrary
/// injected sender state (enumerating Alice's outcomes; his qubit is
/// not measured).
inline DensityMatrix teleport_bob_density(const StateVector& sender) {
  if (sender.n_qubits() != 1) throw std::invalid_argument("sender state must be one qubit");
  const Circuit tail = detail::teleport_tail(TeleportMode::Feedforward);
  const AnalyticResult result = run_analytic(tail, tensor(sender, StateVector(2)));
  DensityMatrix bob = DensityMatrix::zeros(1);
  for (const AnalyticBranch& br : result.branches)
    bob.add_weighted(br.probability, reduced_qubit_density(br.state, 2));
  return bob;
}

inline double teleport_fidelity_analytic(const StateVector& sender) {
  return fidelity_pure(sender, teleport_bob_density(sender));
}

/// Monte-Carlo fidelity of the feedforward protocol under cfg's noise:
/// Bob's reduced state, averaged over trajectories just before readout,
/// scored against the ideal sender state.
inline double teleport_fidelity_mc(const RunConfig& cfg) {
  const Circuit core = detail::prepend_prep(detail::teleport_tail(TeleportMode::Feedforward));
  const StateVector target = prep_state_theory();
  DensityMatrix bob = DensityMatrix::zeros(1);
  const double weight = 1.0 / static_cast<double>(cfg.shots);
  for_each_trajectory(core, cfg, [&](std::uint64_t, const std::vector<int>&, const StateVector& s) {
    bob.add_weighted(weight, reduced_qubit_density(s, 2));
  });
  return fidelity_pure(target, bob);
}

/// Shot statistics of the prepared sender state plus its analytic Bloch
/// vector (the theory fields never include noise).
struct PrepReport {
  std::uint64_t shots = 0;
  double p0 = 0.0;
  double p1 = 0.0;
  double theory_p0 = 0.0;
  double theory_p1 = 0.0;
  BlochVector bloch;
};

inline PrepReport run_prep_experiment(const RunConfig& cfg, int workers = 1) {
  PrepReport report;
  const Histogram h = run_shots(with_measure_all(prep_circuit()), cfg, workers);
  report.shots = h.shots;
  report.p0 = h.frequency("0");
  report.p1 = h.frequency("1");
  report.theory_p0 = theory_p_alpha();
  report.theory_p1 = theory_p_beta();
  const AnalyticResult ideal = run_analytic(prep_circuit());
  report.bloch = bloch_vector(density_from_state(*ideal.final_state));
  return report;
}

/// Per-outcome conditional populations of Bob's qubit. `p_alpha` is the
/// frequency of the Bob reading that the outcome's correction maps to
/// |0>: the raw 0 for I/Z, the relabeled 1 for X/Y in postselect mode.
struct OutcomeStats {
  std::uint64_t count = 0;
  double p_alpha = 0.0;
  double p_beta = 0.0;
  GateName correction = GateName::I;
};

struct TeleportReport {
  TeleportMode mode = TeleportMode::Postselect;
  std::uint64_t shots = 0;
  std::map<AliceOutcome, OutcomeStats> per_outcome;
  double fidelity_analytic = 0.0;
  double theory_p_alpha = 0.0;
  double theory_p_beta = 0.0;
};

namespace detail {

/// Bob's bit value that lands on |0> after the outcome's correction.
inline int alpha_label_bit(TeleportMode mode, AliceOutcome outcome) {
  if (mode == TeleportMode::Feedforward) return 0;
  const GateName g = correction_gate(outcome);
  return (g == GateName::X || g == GateName::Y) ? 1 : 0;
}

template <typename WeightFn>
TeleportReport assemble_teleport_report(TeleportMode mode, std::uint64_t shots,
                                        WeightFn&& weight_of) {
  TeleportReport report;
  report.mode = mode;
  report.shots = shots;
  report.theory_p_alpha = theory_p_alpha();
  report.theory_p_beta = theory_p_beta();
  report.fidelity_analytic = teleport_fidelity_analytic(prep_state_theory());
  for (AliceOutcome outcome : all_alice_outcomes) {
    const std::string key = outcome_key(outcome);
    const double w0 = weight_of(key + "0");
    const double w1 = weight_of(key + "1");
    OutcomeStats stats;
    stats.correction = correction_gate(outcome);
    stats.count = static_cast<std::uint64_t>(std::llround(w0 + w1));
    const double total = w0 + w1;
    if (total > 0.0) {
      const double w_alpha = alpha_label_bit(mode, outcome) == 0 ? w0 : w1;
      stats.p_alpha = w_alpha / total;
      stats.p_beta = (total - w_alpha) / total;
    }
    report.per_outcome[outcome] = stats;
  }
  return report;
}

}  // namespace detail

/// Runs the teleport circuit for cfg.shots shots and conditions Bob's
/// statistics on each Alice outcome.
inline TeleportReport run_teleport_experiment(TeleportMode mode, const RunConfig& cfg,
                                              int workers = 1) {
  const Histogram h = run_shots(teleport_circuit(mode), cfg, workers);
  TeleportReport report = detail::assemble_teleport_report(
      mode, h.shots, [&h](const std::string& key) {
        auto it = h.counts.find(key);
        return it == h.counts.end() ? 0.0 : static_cast<double>(it->second);
      });
  return report;
}

/// Exact-probability variant: per-outcome populations from the analytic
/// joint distribution (counts are zero, shots is zero).
inline TeleportReport run_teleport_experiment_analytic(TeleportMode mode) {
  const AnalyticResult result = run_analytic(teleport_circuit(mode));
  return detail::assemble_teleport_report(mode, 0, [&result](const std::string& key) {
    std::uint64_t index = 0;
    for (char c : key) index = (index << 1) | static_cast<std::uint64_t>(c - '0');
    return result.classical_probabilities[index];
  });
}

}  // namespace qteleport
