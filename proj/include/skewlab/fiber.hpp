#pragma once

namespace skewlab {

// Degree-one circle diffeomorphisms with one attracting fixed point z_a = 0
// and one repelling fixed point z_r = 1/2.
//
//   Sine:       g(z) = z - (par/2pi) sin(2pi z),      g'(z) = 1 - par cos(2pi z)
//   Projective: tan(pi g(z)) = par tan(pi z),          g'(z) = par / (cos^2(pi z) + par^2 sin^2(pi z))
//
// par lies in (0,1) for both families.
enum class FiberFamily { Sine, Projective };

struct FiberSpec {
  FiberFamily family = FiberFamily::Sine;
  double par = 0.5;
  double z_a = 0.0;      // attracting fixed point, derivative lam_min there
  double z_r = 0.5;      // repelling fixed point, derivative lam_max there
  double lam_min = 0.5;  // min of g' over the circle
  double lam_max = 1.5;  // max of g' over the circle
};

FiberSpec sine_fiber(double kappa);
FiberSpec projective_fiber(double lam);

double fiber_eval(const FiberSpec& f, double z);   // value in [0, 1)
double fiber_deriv(const FiberSpec& f, double z);

// Degree-one lift fixing the integers: monotone on all of R,
// lift(z + 1) = lift(z) + 1, lift(0) = 0.
double fiber_lift(const FiberSpec& f, double z);

// Solves g(w) = z for w in [0, 1) by Newton with a bisection safeguard
// (start at the interval midpoint, tolerance 1e-13, at most 100 iterations).
// Throws NonConvergence if the tolerance is not met.
double fiber_inverse(const FiberSpec& f, double z);

}  // namespace skewlab
