#include "skewlab/circle_diag.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "skewlab/torus.hpp"

namespace skewlab {

CircleMap shifted_fiber_map(const FiberSpec& fib, double shift) {
  CircleMap m;
  m.f = [fib, shift](double z) { return fiber_eval(fib, wrap_unit(z + shift)); };
  m.deriv = [fib, shift](double z) { return fiber_deriv(fib, wrap_unit(z + shift)); };
  return m;
}

CircleMap fixed_fiber_map(const SystemSpec& s, double x) {
  return shifted_fiber_map(s.fiber, rotation_eval(s.rotation, wrap_unit(x)));
}

double rotation_number(const CircleMap& map, double z0, long n) {
  double z = wrap_unit(z0);
  double sum = 0.0;
  for (long i = 0; i < n; ++i) {
    double zn = map.f(z);
    sum += lift_delta(zn, z);
    z = zn;
  }
  return wrap_unit(sum / static_cast<double>(n));
}

namespace {

double iterate_displacement(const CircleMap& map, int q, double z) {
  double w = z;
  double disp = 0.0;
  for (int i = 0; i < q; ++i) {
    double wn = map.f(w);
    disp += lift_delta(wn, w);
    w = wn;
  }
  return disp;
}

double iterate_deriv(const CircleMap& map, int q, double z) {
  double w = z;
  double prod = 1.0;
  for (int i = 0; i < q; ++i) {
    prod *= map.deriv(w);
    w = map.f(w);
  }
  return prod;
}

}  // namespace

OrbitCount count_attracting_orbits(const CircleMap& map, int max_period, int n_grid) {
  OrbitCount out;
  for (int q = 1; q <= max_period; ++q) {
    std::vector<double> d(n_grid);
    for (int i = 0; i < n_grid; ++i) {
      d[i] = iterate_displacement(map, q, i / static_cast<double>(n_grid));
    }
    // A fixed point of map^q sits where the displacement crosses zero. Both
    // bracket ends must have small displacement, otherwise a wrap of the lift
    // could masquerade as a crossing.
    std::vector<double> roots;
    for (int i = 0; i < n_grid; ++i) {
      double da = d[i];
      double db = d[(i + 1) % n_grid];
      if (std::abs(da) > 0.25 || std::abs(db) > 0.25) continue;
      if (da == 0.0) {
        roots.push_back(i / static_cast<double>(n_grid));
        continue;
      }
      if ((da < 0.0) == (db < 0.0)) continue;
      double lo = i / static_cast<double>(n_grid);
      double hi = (i + 1) / static_cast<double>(n_grid);
      double flo = da;
      for (int it = 0; it < 60; ++it) {
        double mid = 0.5 * (lo + hi);
        double fm = iterate_displacement(map, q, wrap_unit(mid));
        if ((fm < 0.0) == (flo < 0.0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      roots.push_back(wrap_unit(0.5 * (lo + hi)));
    }
    if (roots.empty()) continue;

    std::sort(roots.begin(), roots.end());
    std::vector<double> uniq;
    for (double rt : roots) {
      if (!uniq.empty() && std::abs(lift_delta(rt, uniq.back())) < 1e-9) continue;
      uniq.push_back(rt);
    }
    if (uniq.size() >= 2 && std::abs(lift_delta(uniq.front(), uniq.back())) < 1e-9) {
      uniq.pop_back();
    }

    int attracting = 0;
    for (double rt : uniq) {
      if (iterate_deriv(map, q, rt) < 1.0) ++attracting;
    }
    out.period = q;
    out.count = attracting / q;
    out.exact = (attracting % q == 0);
    return out;
  }
  // Nothing periodic up to the bound; zero is only a lower bound (the true
  // rotation number may be rational with a longer period).
  out.exact = false;
  return out;
}

}  // namespace skewlab
