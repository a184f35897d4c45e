#pragma once

#include <array>
#include <cctype>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qteleport {

using cplx = std::complex<double>;

/// The fixed gate set: identity, the three Paulis, Hadamard, the two
/// phase gates and the controlled-NOT.
enum class GateName { I, X, Y, Z, H, S, T, CNOT };

inline constexpr std::array<GateName, 8> all_gate_names = {
    GateName::I, GateName::X, GateName::Y, GateName::Z,
    GateName::H, GateName::S, GateName::T, GateName::CNOT};

constexpr int gate_arity(GateName name) {
  return name == GateName::CNOT ? 2 : 1;
}

constexpr std::string_view mnemonic(GateName name) {
  switch (name) {
    case GateName::I: return "i";
    case GateName::X: return "x";
    case GateName::Y: return "y";
    case GateName::Z: return "z";
    case GateName::H: return "h";
    case GateName::S: return "s";
    case GateName::T: return "t";
    case GateName::CNOT: return "cx";
  }
  return "?";
}

/// Case-insensitive mnemonic lookup ("H" and "h" both name Hadamard).
inline std::optional<GateName> gate_from_mnemonic(std::string_view text) {
  std::string lower;
  lower.reserve(text.size());
  for (char c : text) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  for (GateName g : all_gate_names)
    if (lower == mnemonic(g)) return g;
  return std::nullopt;
}

/// A named unitary with its dense row-major matrix: 2x2 for one-qubit
/// gates, 4x4 for CNOT. Construction rejects non-unitary matrices.
class Gate {
 public:
  Gate(GateName name, int arity, std::array<cplx, 16> matrix)
      : name_(name), arity_(arity), matrix_(matrix) {
    if (arity != 1 && arity != 2) throw std::invalid_argument("gate arity must be 1 or 2");
    if (unitarity_defect() > 1e-12)
      throw std::invalid_argument("gate matrix is not unitary (max |U^dag U - 1| = " +
                                  std::to_string(unitarity_defect()) + ")");
  }

  GateName name() const { return name_; }
  int arity() const { return arity_; }
  int dim() const { return arity_ == 1 ? 2 : 4; }
  cplx at(int row, int col) const { return matrix_[static_cast<std::size_t>(row * dim() + col)]; }

  /// Max-norm distance of U^dag U from the identity.
  double unitarity_defect() const {
    const int d = dim();
    double worst = 0.0;
    for (int r = 0; r < d; ++r) {
      for (int c = 0; c < d; ++c) {
        cplx acc = 0.0;
        for (int k = 0; k < d; ++k) acc += std::conj(at(k, r)) * at(k, c);
        if (r == c) acc -= 1.0;
        worst = std::max(worst, std::abs(acc));
      }
    }
    return worst;
  }

 private:
  GateName name_;
  int arity_;
  std::array<cplx, 16> matrix_;
};

namespace detail {

inline Gate make_1q(GateName name, cplx m00, cplx m01, cplx m10, cplx m11) {
  return Gate(name, 1, {m00, m01, m10, m11});
}

inline Gate make_standard(GateName name) {
  using std::numbers::pi;
  const double rs2 = 1.0 / std::numbers::sqrt2;
  const cplx i{0.0, 1.0};
  switch (name) {
    case GateName::I: return make_1q(name, 1, 0, 0, 1);
    case GateName::X: return make_1q(name, 0, 1, 1, 0);
    case GateName::Y: return make_1q(name, 0, -i, i, 0);
    case GateName::Z: return make_1q(name, 1, 0, 0, -1);
    case GateName::H: return make_1q(name, rs2, rs2, rs2, -rs2);
    case GateName::S: return make_1q(name, 1, 0, 0, i);
    case GateName::T: return make_1q(name, 1, 0, 0, std::polar(1.0, pi / 4));
    case GateName::CNOT:
      return Gate(name, 2,
                  {1, 0, 0, 0,
                   0, 1, 0, 0,
                   0, 0, 0, 1,
                   0, 0, 1, 0});
  }
  throw std::invalid_argument("unknown gate name");
}

}  // namespace detail

/// The exact matrix for one of the eight supported gates.
inline const Gate& standard_gate(GateName name) {
  static const std::array<Gate, 8> gates = {
      detail::make_standard(GateName::I), detail::make_standard(GateName::X),
      detail::make_standard(GateName::Y), detail::make_standard(GateName::Z),
      detail::make_standard(GateName::H), detail::make_standard(GateName::S),
      detail::make_standard(GateName::T), detail::make_standard(GateName::CNOT)};
  switch (name) {
    case GateName::I: return gates[0];
    case GateName::X: return gates[1];
    case GateName::Y: return gates[2];
    case GateName::Z: return gates[3];
    case GateName::H: return gates[4];
    case GateName::S: return gates[5];
    case GateName::T: return gates[6];
    case GateName::CNOT: return gates[7];
  }
  throw std::invalid_argument("unknown gate name");
}

}  // namespace qteleport
