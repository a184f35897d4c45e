#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cmath>
#include <complex>
#include <numbers>

#include "qteleport/gates.hpp"

using namespace qteleport;

namespace {

using Mat2 = std::array<cplx, 4>;

Mat2 as_mat2(const Gate& g) { return {g.at(0, 0), g.at(0, 1), g.at(1, 0), g.at(1, 1)}; }

Mat2 mul(const Mat2& a, const Mat2& b) {
  return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
          a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
}

void require_close(const Mat2& got, const Mat2& want, double tol) {
  for (int k = 0; k < 4; ++k) {
    CAPTURE(k);
    REQUIRE(std::abs(got[static_cast<std::size_t>(k)] - want[static_cast<std::size_t>(k)]) <= tol);
  }
}

}  // namespace

TEST_CASE("one-qubit matrices have their textbook entries") {
  const double r = 1.0 / std::numbers::sqrt2;
  const cplx i{0.0, 1.0};
  require_close(as_mat2(standard_gate(GateName::I)), {1, 0, 0, 1}, 0.0);
  require_close(as_mat2(standard_gate(GateName::X)), {0, 1, 1, 0}, 0.0);
  require_close(as_mat2(standard_gate(GateName::Y)), {0, -i, i, 0}, 0.0);
  require_close(as_mat2(standard_gate(GateName::Z)), {1, 0, 0, -1}, 0.0);
  require_close(as_mat2(standard_gate(GateName::H)), {r, r, r, -r}, 0.0);
  require_close(as_mat2(standard_gate(GateName::S)), {1, 0, 0, i}, 0.0);
  require_close(as_mat2(standard_gate(GateName::T)),
                {1, 0, 0, std::polar(1.0, std::numbers::pi / 4)}, 0.0);
}

TEST_CASE("controlled-NOT permutes exactly the |10> and |11> rows") {
  const Gate& cx = standard_gate(GateName::CNOT);
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) {
      const int want = (r == 2 && c == 3) || (r == 3 && c == 2) || (r == c && r < 2) ? 1 : 0;
      REQUIRE(cx.at(r, c) == cplx(want, 0.0));
    }
}

TEST_CASE("every standard gate is unitary to 1e-12") {
  for (GateName g : all_gate_names) {
    CAPTURE(mnemonic(g));
    REQUIRE(standard_gate(g).unitarity_defect() <= 1e-12);
    REQUIRE(standard_gate(g).arity() == gate_arity(g));
  }
}

TEST_CASE("a 1/sqrt2-scaled controlled-NOT is rejected as non-unitary") {
  // Sub-normalized matrices cannot be accepted: probabilities would leak.
  const double r = 1.0 / std::numbers::sqrt2;
  std::array<cplx, 16> scaled{};
  scaled[0] = scaled[5] = scaled[11] = scaled[14] = r;
  REQUIRE_THROWS_AS(Gate(GateName::CNOT, 2, scaled), std::invalid_argument);
}

TEST_CASE("gate algebra: H^2 = I, S^2 = Z, T^2 = S, HZH = X") {
  const Mat2 h = as_mat2(standard_gate(GateName::H));
  const Mat2 s = as_mat2(standard_gate(GateName::S));
  const Mat2 t = as_mat2(standard_gate(GateName::T));
  const Mat2 z = as_mat2(standard_gate(GateName::Z));
  require_close(mul(h, h), as_mat2(standard_gate(GateName::I)), 1e-15);
  require_close(mul(s, s), z, 1e-15);
  require_close(mul(t, t), s, 1e-15);
  require_close(mul(h, mul(z, h)), as_mat2(standard_gate(GateName::X)), 1e-15);
}

TEST_CASE("mnemonics round-trip and ignore case") {
  for (GateName g : all_gate_names) {
    REQUIRE(gate_from_mnemonic(mnemonic(g)) == g);
  }
  REQUIRE(gate_from_mnemonic("CX") == GateName::CNOT);
  REQUIRE(gate_from_mnemonic("H") == GateName::H);
  REQUIRE(gate_from_mnemonic("tdg") == std::nullopt);
  REQUIRE(gate_from_mnemonic("") == std::nullopt);
}

TEST_CASE("malformed gate definitions are rejected") {
  std::array<cplx, 16> id{};
  id[0] = id[5] = 1.0;  // valid 2x2 identity in the top-left corner
  REQUIRE_THROWS_AS(Gate(GateName::I, 3, id), std::invalid_argument);
  std::array<cplx, 16> shrunk{};
  shrunk[0] = 0.5;
  shrunk[5] = 1.0;
  REQUIRE_THROWS_AS(Gate(GateName::I, 1, shrunk), std::invalid_argument);
}
