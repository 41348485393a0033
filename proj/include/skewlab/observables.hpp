#pragma once

#include <functional>
#include <string>
#include <vector>

#include "skewlab/torus.hpp"

namespace skewlab {

struct Observable {
  std::string name;
  std::function<double(const Point3&)> fn;
};

// Bounded continuous test functions for Birkhoff averages, addressed by name:
//   one, cos_x, cos_y, cos_z, sin_x, sin_y, sin_z, sin_xy, sin_xyz, cos_xz,
//   indicator_iminus:R  (fiber distance from z_a = 0 at most radius R)
// Throws ConfigError for anything else.
Observable builtin_observable(const std::string& name);

std::vector<std::string> builtin_observable_names();

}  // namespace skewlab
