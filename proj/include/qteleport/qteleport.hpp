#pragma once

// Umbrella header: the full statevector simulator, circuit language,
// teleportation protocol drivers, and report/plot plumbing.

#include "qteleport/gates.hpp"
#include "qteleport/state.hpp"
#include "qteleport/density.hpp"
#include "qteleport/rng.hpp"
#include "qteleport/circuit.hpp"
#include "qteleport/dsl.hpp"
#include "qteleport/simulator.hpp"
#include "qteleport/protocols.hpp"
#include "qteleport/report.hpp"
#include "qteleport/plot.hpp"
