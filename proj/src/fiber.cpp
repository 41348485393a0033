#include "skewlab/fiber.hpp"

#include <cmath>
#include <string>

#include "skewlab/errors.hpp"
#include "skewlab/torus.hpp"

namespace skewlab {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kTwoPi = 2.0 * kPi;

void check_par(double par, const char* who) {
  if (!(par > 0.0 && par < 1.0))
    throw ConfigError(std::string(who) + ": parameter must lie in (0, 1), got " +
                      std::to_string(par));
}
}  // namespace

FiberSpec sine_fiber(double kappa) {
  check_par(kappa, "sine_fiber");
  return {FiberFamily::Sine, kappa, 0.0, 0.5, 1.0 - kappa, 1.0 + kappa};
}

FiberSpec projective_fiber(double lam) {
  check_par(lam, "projective_fiber");
  return {FiberFamily::Projective, lam, 0.0, 0.5, lam, 1.0 / lam};
}

double fiber_eval(const FiberSpec& f, double z) {
  z = wrap_unit(z);
  switch (f.family) {
    case FiberFamily::Sine:
      return wrap_unit(z - f.par / kTwoPi * std::sin(kTwoPi * z));
    case FiberFamily::Projective: {
      // Branch-safe: for z in [0,1) the angle pi*z lies in [0, pi), so
      // atan2(par*sin, cos) lands in [0, pi) and divides back to [0, 1).
      const double s = std::sin(kPi * z), c = std::cos(kPi * z);
      return wrap_unit(std::atan2(f.par * s, c) / kPi);
    }
  }
  return 0.0;
}

double fiber_deriv(const FiberSpec& f, double z) {
  switch (f.family) {
    case FiberFamily::Sine:
      return 1.0 - f.par * std::cos(kTwoPi * z);
    case FiberFamily::Projective: {
      const double s = std::sin(kPi * z), c = std::cos(kPi * z);
      return f.par / (c * c + f.par * f.par * s * s);
    }
  }
  return 1.0;
}

double fiber_lift(const FiberSpec& f, double z) {
  switch (f.family) {
    case FiberFamily::Sine:
      return z - f.par / kTwoPi * std::sin(kTwoPi * z);
    case FiberFamily::Projective: {
      const double base = std::floor(z);
      const double u = z - base;
      const double s = std::sin(kPi * u), c = std::cos(kPi * u);
      // atan2 stays in [0, pi] for u in [0, 1), so v <= 1 and base + v is the
      // continuous degree-one lift.
      const double v = std::atan2(f.par * s, c) / kPi;
      return base + v;
    }
  }
  return z;
}

double fiber_inverse(const FiberSpec& f, double z) {
  z = wrap_unit(z);
  // g fixes 0, so on [0, 1] the lift runs from 0 to 1 and brackets z.
  double lo = 0.0, hi = 1.0, w = 0.5;
  for (int it = 0; it < 100; ++it) {
    const double err = fiber_lift(f, w) - z;
    if (std::fabs(err) < 1e-13) return wrap_unit(w);
    if (err > 0)
      hi = w;
    else
      lo = w;
    const double cand = w - err / fiber_deriv(f, w);
    w = (cand > lo && cand < hi) ? cand : 0.5 * (lo + hi);
  }
  throw NonConvergence("fiber_inverse: tolerance 1e-13 not met in 100 iterations");
}

}  // namespace skewlab
