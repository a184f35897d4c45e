#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "qteleport/rng.hpp"
#include "qteleport/state.hpp"

namespace testsupport {

/// Haar-ish random pure state from a seeded stream; good enough for
/// property tests that only need coverage of generic amplitudes.
inline qteleport::StateVector random_state(int n_qubits, qteleport::RandomStream& rng) {
  std::vector<qteleport::cplx> amps(std::size_t{1} << n_qubits);
  double norm = 0.0;
  for (auto& a : amps) {
    a = {2.0 * rng.uniform() - 1.0, 2.0 * rng.uniform() - 1.0};
    norm += std::norm(a);
  }
  if (norm == 0.0) {
    amps[0] = 1.0;
    norm = 1.0;
  }
  const double scale = 1.0 / std::sqrt(norm);
  for (auto& a : amps) a *= scale;
  return qteleport::StateVector::from_amplitudes(std::move(amps));
}

}  // namespace testsupport
