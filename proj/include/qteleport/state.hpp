#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qteleport/gates.hpp"

namespace qteleport {

/// Qubit 0 is the leftmost tensor factor: basis index k holds qubit q's
/// value in bit (n-1-q), so the bitstring "q0 q1 ... q_{n-1}" reads off
/// the index most-significant-bit first.
constexpr std::uint64_t qubit_bit(int n_qubits, int qubit) {
  return std::uint64_t{1} << (n_qubits - 1 - qubit);
}

/// Dense 2^n complex amplitude vector of an n-qubit pure state.
class StateVector {
 public:
  /// |0...0> on n qubits.
  explicit StateVector(int n_qubits) : n_qubits_(n_qubits) {
    if (n_qubits < 1 || n_qubits > 24)
      throw std::invalid_argument("state must have between 1 and 24 qubits");
    amps_.assign(std::uint64_t{1} << n_qubits, cplx{0.0, 0.0});
    amps_[0] = 1.0;
  }

  static StateVector basis(int n_qubits, std::uint64_t index) {
    StateVector s(n_qubits);
    if (index >= s.dim()) throw std::invalid_argument("basis index out of range");
    s.amps_[0] = 0.0;
    s.amps_[index] = 1.0;
    return s;
  }

  /// Builds a state from raw amplitudes; the length must be a power of
  /// two, every entry finite, and the norm 1 within 1e-10.
  static StateVector from_amplitudes(std::vector<cplx> amps) {
    int n = 0;
    while ((std::uint64_t{1} << n) < amps.size()) ++n;
    if (amps.empty() || (std::uint64_t{1} << n) != amps.size())
      throw std::invalid_argument("amplitude count must be a power of two");
    StateVector s(n == 0 ? 1 : n);
    if (n == 0) throw std::invalid_argument("amplitude count must be at least 2");
    for (const cplx& a : amps)
      if (!std::isfinite(a.real()) || !std::isfinite(a.imag()))
        throw std::invalid_argument("amplitudes must be finite");
    s.amps_ = std::move(amps);
    if (std::abs(s.norm() - 1.0) > 1e-10)
      throw std::invalid_argument("state is not normalized (norm = " + std::to_string(s.norm()) + ")");
    return s;
  }

  int n_qubits() const { return n_qubits_; }
  std::uint64_t dim() const { return amps_.size(); }
  cplx amp(std::uint64_t index) const { return amps_[index]; }
  const std::vector<cplx>& amplitudes() const { return amps_; }

  double norm() const {
    double sum = 0.0;
    for (const cplx& a : amps_) sum += std::norm(a);
    return std::sqrt(sum);
  }

  friend StateVector tensor(const StateVector& a, const StateVector& b);
  friend StateVector apply_1q(StateVector state, const Gate& gate, int target);
  friend StateVector apply_cnot(StateVector state, int control, int target);
  friend std::pair<int, StateVector> project_qubit(StateVector state, int qubit, int outcome);

 private:
  int n_qubits_;
  std::vector<cplx> amps_;
};

/// Kronecker product; a's qubits become the leftmost factors.
inline StateVector tensor(const StateVector& a, const StateVector& b) {
  StateVector out(a.n_qubits() + b.n_qubits());
  const std::uint64_t bd = b.dim();
  for (std::uint64_t j = 0; j < a.dim(); ++j)
    for (std::uint64_t k = 0; k < bd; ++k)
      out.amps_[j * bd + k] = a.amp(j) * b.amp(k);
  return out;
}

/// Applies a one-qubit gate to the target tensor factor with a strided
/// in-place sweep: O(2^n) time, O(1) extra space.
inline StateVector apply_1q(StateVector state, const Gate& gate, int target) {
  if (gate.arity() != 1) throw std::invalid_argument("apply_1q requires a one-qubit gate");
  if (target < 0 || target >= state.n_qubits())
    throw std::out_of_range("target qubit out of range");
  const std::uint64_t bit = qubit_bit(state.n_qubits(), target);
  const cplx u00 = gate.at(0, 0), u01 = gate.at(0, 1);
  const cplx u10 = gate.at(1, 0), u11 = gate.at(1, 1);
  auto& amps = state.amps_;
  for (std::uint64_t block = 0; block < amps.size(); block += bit << 1) {
    for (std::uint64_t low = 0; low < bit; ++low) {
      const std::uint64_t i0 = block | low;
      const std::uint64_t i1 = i0 | bit;
      const cplx a0 = amps[i0];
      const cplx a1 = amps[i1];
      amps[i0] = u00 * a0 + u01 * a1;
      amps[i1] = u10 * a0 + u11 * a1;
    }
  }
  return state;
}

/// Swaps the amplitude pairs whose control bit is set and that differ
/// only in the target bit.
inline StateVector apply_cnot(StateVector state, int control, int target) {
  if (control == target) throw std::invalid_argument("cnot control equals target");
  if (control < 0 || control >= state.n_qubits() || target < 0 || target >= state.n_qubits())
    throw std::out_of_range("cnot qubit out of range");
  const std::uint64_t cbit = qubit_bit(state.n_qubits(), control);
  const std::uint64_t tbit = qubit_bit(state.n_qubits(), target);
  auto& amps = state.amps_;
  for (std::uint64_t k = 0; k < amps.size(); ++k)
    if ((k & cbit) && !(k & tbit)) std::swap(amps[k], amps[k | tbit]);
  return state;
}

/// |amp_k|^2 for every basis index.
inline std::vector<double> probabilities(const StateVector& state) {
  std::vector<double> probs(state.dim());
  for (std::uint64_t k = 0; k < state.dim(); ++k) probs[k] = std::norm(state.amp(k));
  return probs;
}

/// Probability that the given qubit reads 0 in the Z basis.
inline double probability_of_zero(const StateVector& state, int qubit) {
  if (qubit < 0 || qubit >= state.n_qubits()) throw std::out_of_range("qubit out of range");
  const std::uint64_t bit = qubit_bit(state.n_qubits(), qubit);
  double p0 = 0.0;
  for (std::uint64_t k = 0; k < state.dim(); ++k)
    if (!(k & bit)) p0 += std::norm(state.amp(k));
  return p0;
}

/// Projects the qubit onto the given outcome and renormalizes. Returns
/// the outcome probability together with the collapsed state.
inline std::pair<int, StateVector> project_qubit(StateVector state, int qubit, int outcome) {
  const std::uint64_t bit = qubit_bit(state.n_qubits(), qubit);
  double p = 0.0;
  for (std::uint64_t k = 0; k < state.dim(); ++k)
    if (((k & bit) != 0) == (outcome != 0)) p += std::norm(state.amp(k));
  if (p <= 0.0) throw std::logic_error("projection onto a zero-probability outcome");
  const double scale = 1.0 / std::sqrt(p);
  auto& amps = state.amps_;
  for (std::uint64_t k = 0; k < amps.size(); ++k) {
    if (((k & bit) != 0) == (outcome != 0))
      amps[k] *= scale;
    else
      amps[k] = 0.0;
  }
  return {outcome, std::move(state)};
}

inline cplx inner_product(const StateVector& a, const StateVector& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("inner product dimension mismatch");
  cplx acc = 0.0;
  for (std::uint64_t k = 0; k < a.dim(); ++k) acc += std::conj(a.amp(k)) * b.amp(k);
  return acc;
}

/// True iff |<a|b>| >= 1 - tol, i.e. the states differ only by a global
/// phase (never silently stripped elsewhere).
inline bool equal_up_to_global_phase(const StateVector& a, const StateVector& b, double tol) {
  return std::abs(inner_product(a, b)) >= 1.0 - tol;
}

}  // namespace qteleport
