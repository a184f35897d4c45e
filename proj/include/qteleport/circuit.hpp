#pragma once

#include <compare>
#include <vector>

#include "qteleport/gates.hpp"

namespace qteleport {

/// One circuit step: a gate application, a measurement into a classical
/// bit, or a gate conditioned on a previously measured classical bit.
struct Instruction {
  enum class Kind { Gate1, Cnot, Measure, ConditionalGate1 };

  Kind kind = Kind::Gate1;
  GateName gate = GateName::I;  // Gate1 / ConditionalGate1
  int target = 0;               // gate target, cnot target, or measured qubit
  int control = 0;              // Cnot only
  int classical_bit = 0;        // Measure destination / ConditionalGate1 source
  int required_value = 0;       // ConditionalGate1 only

  static Instruction gate1(GateName g, int target) {
    return Instruction{Kind::Gate1, g, target, 0, 0, 0};
  }
  static Instruction cnot(int control, int target) {
    return Instruction{Kind::Cnot, GateName::CNOT, target, control, 0, 0};
  }
  static Instruction measure(int qubit, int classical_bit) {
    return Instruction{Kind::Measure, GateName::I, qubit, 0, classical_bit, 0};
  }
  static Instruction conditional(GateName g, int target, int classical_bit, int required_value) {
    return Instruction{Kind::ConditionalGate1, g, target, 0, classical_bit, required_value};
  }

  friend bool operator==(const Instruction&, const Instruction&) = default;
};

/// Ordered instruction list over n qubits and a classical bit register.
struct Circuit {
  int n_qubits = 0;
  int n_classical_bits = 0;
  std::vector<Instruction> instructions;

  Circuit& gate1(GateName g, int target) {
    instructions.push_back(Instruction::gate1(g, target));
    return *this;
  }
  Circuit& cnot(int control, int target) {
    instructions.push_back(Instruction::cnot(control, target));
    return *this;
  }
  Circuit& measure(int qubit, int classical_bit) {
    instructions.push_back(Instruction::measure(qubit, classical_bit));
    if (classical_bit + 1 > n_classical_bits) n_classical_bits = classical_bit + 1;
    return *this;
  }
  Circuit& conditional(GateName g, int target, int classical_bit, int required_value) {
    instructions.push_back(Instruction::conditional(g, target, classical_bit, required_value));
    return *this;
  }

  bool has_measurement() const {
    for (const Instruction& ins : instructions)
      if (ins.kind == Instruction::Kind::Measure) return true;
    return false;
  }

  friend bool operator==(const Circuit&, const Circuit&) = default;
};

}  // namespace qteleport
