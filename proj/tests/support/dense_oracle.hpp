#pragma once

// Independent reference implementation used to cross-check the strided
// simulator kernels: gates are embedded into full 2^n x 2^n matrices by
// Kronecker products (qubit 0 = leftmost factor) and applied by plain
// matrix-vector multiplication. Deliberately naive.

#include <cstddef>
#include <vector>

#include "qteleport/gates.hpp"

namespace oracle {

using qteleport::cplx;

struct Matrix {
  std::size_t dim = 0;
  std::vector<cplx> a;  // row-major

  cplx& at(std::size_t r, std::size_t c) { return a[r * dim + c]; }
  cplx at(std::size_t r, std::size_t c) const { return a[r * dim + c]; }
};

inline Matrix identity(std::size_t dim) {
  Matrix m{dim, std::vector<cplx>(dim * dim, cplx{0.0, 0.0})};
  for (std::size_t i = 0; i < dim; ++i) m.at(i, i) = 1.0;
  return m;
}

inline Matrix kron(const Matrix& x, const Matrix& y) {
  Matrix m{x.dim * y.dim, std::vector<cplx>(x.dim * y.dim * x.dim * y.dim, cplx{0.0, 0.0})};
  for (std::size_t xr = 0; xr < x.dim; ++xr)
    for (std::size_t xc = 0; xc < x.dim; ++xc)
      for (std::size_t yr = 0; yr < y.dim; ++yr)
        for (std::size_t yc = 0; yc < y.dim; ++yc)
          m.at(xr * y.dim + yr, xc * y.dim + yc) = x.at(xr, xc) * y.at(yr, yc);
  return m;
}

inline Matrix from_gate_2x2(const qteleport::Gate& g) {
  Matrix m{2, std::vector<cplx>(4)};
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) m.at(static_cast<std::size_t>(r), static_cast<std::size_t>(c)) = g.at(r, c);
  return m;
}

/// I x ... x U x ... x I with U at `target` (qubit 0 leftmost).
inline Matrix embed_1q(const qteleport::Gate& g, int n_qubits, int target) {
  Matrix m = identity(1);
  for (int q = 0; q < n_qubits; ++q)
    m = kron(m, q == target ? from_gate_2x2(g) : identity(2));
  return m;
}

/// |0><0|_c x I + |1><1|_c x X_t, both embedded over n qubits.
inline Matrix embed_cnot(int n_qubits, int control, int target) {
  Matrix p0{2, {cplx{1, 0}, {}, {}, {}}};
  Matrix p1{2, {{}, {}, {}, cplx{1, 0}}};
  Matrix x{2, {{}, cplx{1, 0}, cplx{1, 0}, {}}};

  Matrix term0 = identity(1);
  Matrix term1 = identity(1);
  for (int q = 0; q < n_qubits; ++q) {
    term0 = kron(term0, q == control ? p0 : identity(2));
    term1 = kron(term1, q == control ? p1 : (q == target ? x : identity(2)));
  }
  Matrix m{term0.dim, term0.a};
  for (std::size_t i = 0; i < m.a.size(); ++i) m.a[i] += term1.a[i];
  return m;
}

inline std::vector<cplx> apply(const Matrix& m, const std::vector<cplx>& v) {
  std::vector<cplx> out(m.dim, cplx{0.0, 0.0});
  for (std::size_t r = 0; r < m.dim; ++r)
    for (std::size_t c = 0; c < m.dim; ++c) out[r] += m.at(r, c) * v[c];
  return out;
}

}  // namespace oracle
