#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "qteleport/gates.hpp"
#include "qteleport/state.hpp"

namespace qteleport {

/// (Tr rho X, Tr rho Y, Tr rho Z); norm 1 iff the state is pure.
struct BlochVector {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  double norm() const { return std::sqrt(x * x + y * y + z * z); }
};

/// Dense 2^n x 2^n density matrix, row-major.
class DensityMatrix {
 public:
  static DensityMatrix zeros(int n_qubits) {
    DensityMatrix rho;
    rho.n_qubits_ = n_qubits;
    rho.elems_.assign((std::uint64_t{1} << n_qubits) * (std::uint64_t{1} << n_qubits), cplx{0.0, 0.0});
    return rho;
  }

  int n_qubits() const { return n_qubits_; }
  std::uint64_t dim() const { return std::uint64_t{1} << n_qubits_; }
  cplx at(std::uint64_t row, std::uint64_t col) const { return elems_[row * dim() + col]; }
  cplx& at(std::uint64_t row, std::uint64_t col) { return elems_[row * dim() + col]; }

  double trace_real() const {
    double tr = 0.0;
    for (std::uint64_t k = 0; k < dim(); ++k) tr += at(k, k).real();
    return tr;
  }

  /// Tr rho^2; 1 for pure states.
  double purity() const {
    double acc = 0.0;
    for (const cplx& e : elems_) acc += std::norm(e);
    return acc;
  }

  /// Largest deviation from Hermitian symmetry, for validity checks.
  double hermiticity_defect() const {
    double worst = 0.0;
    for (std::uint64_t r = 0; r < dim(); ++r)
      for (std::uint64_t c = 0; c < dim(); ++c)
        worst = std::max(worst, std::abs(at(r, c) - std::conj(at(c, r))));
    return worst;
  }

  /// Accumulates w * rho into this matrix (mixture assembly).
  void add_weighted(double weight, const DensityMatrix& rho) {
    if (rho.n_qubits_ != n_qubits_) throw std::invalid_argument("density matrix size mismatch");
    for (std::uint64_t k = 0; k < elems_.size(); ++k) elems_[k] += weight * rho.elems_[k];
  }

 private:
  int n_qubits_ = 0;
  std::vector<cplx> elems_;
};

/// rho = |psi><psi|.
inline DensityMatrix density_from_state(const StateVector& state) {
  DensityMatrix rho = DensityMatrix::zeros(state.n_qubits());
  for (std::uint64_t r = 0; r < state.dim(); ++r)
    for (std::uint64_t c = 0; c < state.dim(); ++c)
      rho.at(r, c) = state.amp(r) * std::conj(state.amp(c));
  return rho;
}

namespace detail {

// Widens an (n-1)-bit index by inserting value v at the kept qubit's bit position.
inline std::uint64_t insert_bit(std::uint64_t rest, int bit_pos, std::uint64_t v) {
  const std::uint64_t low = rest & ((std::uint64_t{1} << bit_pos) - 1);
  const std::uint64_t high = rest >> bit_pos;
  return (high << (bit_pos + 1)) | (v << bit_pos) | low;
}

}  // namespace detail

/// Traces out every qubit except `keep`, returning its 2x2 reduced state.
inline DensityMatrix partial_trace(const DensityMatrix& rho, int keep) {
  if (keep < 0 || keep >= rho.n_qubits()) throw std::out_of_range("kept qubit out of range");
  const int bit_pos = rho.n_qubits() - 1 - keep;
  const std::uint64_t rest_dim = rho.dim() >> 1;
  DensityMatrix out = DensityMatrix::zeros(1);
  for (std::uint64_t a = 0; a < 2; ++a)
    for (std::uint64_t b = 0; b < 2; ++b) {
      cplx acc = 0.0;
      for (std::uint64_t rest = 0; rest < rest_dim; ++rest)
        acc += rho.at(detail::insert_bit(rest, bit_pos, a), detail::insert_bit(rest, bit_pos, b));
      out.at(a, b) = acc;
    }
  return out;
}

/// Reduced 2x2 state of one qubit, taken directly from the statevector.
inline DensityMatrix reduced_qubit_density(const StateVector& state, int qubit) {
  if (qubit < 0 || qubit >= state.n_qubits()) throw std::out_of_range("qubit out of range");
  const int bit_pos = state.n_qubits() - 1 - qubit;
  const std::uint64_t rest_dim = state.dim() >> 1;
  DensityMatrix out = DensityMatrix::zeros(1);
  for (std::uint64_t a = 0; a < 2; ++a)
    for (std::uint64_t b = 0; b < 2; ++b) {
      cplx acc = 0.0;
      for (std::uint64_t rest = 0; rest < rest_dim; ++rest)
        acc += state.amp(detail::insert_bit(rest, bit_pos, a)) *
               std::conj(state.amp(detail::insert_bit(rest, bit_pos, b)));
      out.at(a, b) = acc;
    }
  return out;
}

inline double trace_with_gate(const DensityMatrix& rho, const Gate& g) {
  cplx acc = 0.0;
  for (int j = 0; j < 2; ++j)
    for (int k = 0; k < 2; ++k) acc += rho.at(j, k) * g.at(k, j);
  return acc.real();
}

inline BlochVector bloch_vector(const DensityMatrix& rho) {
  if (rho.n_qubits() != 1) throw std::invalid_argument("bloch_vector needs a one-qubit density matrix");
  return BlochVector{trace_with_gate(rho, standard_gate(GateName::X)),
                     trace_with_gate(rho, standard_gate(GateName::Y)),
                     trace_with_gate(rho, standard_gate(GateName::Z))};
}

/// F = <theory| rho |theory> for a pure target state.
inline double fidelity_pure(const StateVector& theory, const DensityMatrix& rho) {
  if (theory.dim() != rho.dim()) throw std::invalid_argument("fidelity dimension mismatch");
  cplx acc = 0.0;
  for (std::uint64_t r = 0; r < rho.dim(); ++r)
    for (std::uint64_t c = 0; c < rho.dim(); ++c)
      acc += std::conj(theory.amp(r)) * rho.at(r, c) * theory.amp(c);
  return acc.real();
}

}  // namespace qteleport
