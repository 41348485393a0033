#pragma once

#include <functional>

#include "skewlab/system.hpp"

namespace skewlab {

// A circle map and its derivative, both in [0,1) coordinates.
struct CircleMap {
  std::function<double(double)> f;
  std::function<double(double)> deriv;
};

// z -> g(z + shift); diagnostics scan artificial shifts through this.
CircleMap shifted_fiber_map(const FiberSpec& fib, double shift);

// Fiber dynamics over a frozen base point: z -> g(z + r(x)). The origin is
// fixed by every integer matrix, so over x = 0 this is the return map of the
// invariant circle {(0,0)} x T of the delta = 0 system.
CircleMap fixed_fiber_map(const SystemSpec& s, double x = 0.0);

// Birkhoff average of the lift displacement along the orbit of z0, reported
// in [0,1).
double rotation_number(const CircleMap& map, double z0, long n);

struct OrbitCount {
  int count = 0;      // attracting periodic orbits found
  int period = 0;     // their common minimal period, 0 when none were found
  bool exact = true;  // false when the search bound was hit; count is then a
                      // lower bound only
};

// Finds periodic orbits through sign changes of the iterated-map displacement
// on a grid, refines them by bisection, and classifies stability with the
// chain-rule derivative. Periods are tried in increasing order; for a circle
// homeomorphism the first period admitting fixed points is the minimal period
// of every periodic orbit, so the scan stops there.
OrbitCount count_attracting_orbits(const CircleMap& map, int max_period = 8,
                                   int n_grid = 4096);

}  // namespace skewlab
