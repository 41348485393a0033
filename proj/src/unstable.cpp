#include "skewlab/unstable.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "skewlab/errors.hpp"

namespace skewlab {

UnstableDirection unstable_direction(const SystemSpec& s, const Point3& p,
                                     int n_back, double tol) {
  if (s.delta != 0.0) {
    throw Error("unstable_direction: needs the exact backward orbit (delta = 0)");
  }
  EigenData eig = eigendata(s.anosov);

  std::vector<Point3> back(static_cast<std::size_t>(n_back) + 5);
  Point3 q = p;
  for (auto& b : back) {
    q = coupled_inverse(s, q);
    b = q;
  }

  // back[i] = F^{-(i+1)}(p); pushing a vector through the map at back[i]
  // lands it at F^{-i}(p).
  auto slope_from_depth = [&](int depth) {
    double sl = 0.0;
    for (int i = depth - 1; i >= 0; --i) {
      const Point3& b = back[static_cast<std::size_t>(i)];
      double zs = wrap_unit(b.z + rotation_eval(s.rotation, b.x));
      double gp = fiber_deriv(s.fiber, zs);
      sl = (gp * rotation_deriv(s.rotation, b.x) * eig.beta + gp * sl) / eig.alpha_u;
    }
    return sl;
  };

  double shallow = slope_from_depth(n_back);
  double deep = slope_from_depth(n_back + 5);
  double gap = std::abs(deep - shallow);
  if (gap > tol) {
    throw NonConvergence("unstable_direction: slope gap " + std::to_string(gap) +
                         " above tolerance at depth " + std::to_string(n_back));
  }

  UnstableDirection out;
  out.slope = deep;
  out.n_back_used = n_back + 5;
  out.cauchy_gap = gap;
  double nrm = std::hypot(1.0, deep);
  out.e = {eig.du.x / nrm, eig.du.y / nrm, deep / nrm};
  return out;
}

}  // namespace skewlab
