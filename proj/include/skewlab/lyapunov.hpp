#pragma once

#include <array>
#include <vector>

#include "skewlab/system.hpp"

namespace skewlab {

struct UnstableCurve;

struct LyapunovEstimate {
  std::array<double, 3> exponents{};  // descending
  std::array<double, 3> stderrs{};    // batch-means standard errors
  long n = 0;                         // averaged iterates (transient excluded)
};

// QR cocycle iteration: push an orthonormal triple through the Jacobian,
// re-orthonormalize each step, and average the log diagonal factors after the
// transient. Standard errors come from 20 batch means.
LyapunovEstimate lyapunov_spectrum_qr(const SystemSpec& s, const Point3& p0,
                                      long n, long n_transient);

// Direct central sum (1/n) sum log g'(z_i + r(x_i)) along the orbit; the
// fiber line is invariant for delta = 0, so this is the middle exponent.
double central_exponent(const SystemSpec& s, const Point3& p0, long n,
                        long n_transient = 0);

// Finite-time central exponent (1/n) sum log g' started from every node of a
// curve; feeds the mixed-behavior search.
std::vector<double> finite_time_central_profile(const SystemSpec& s,
                                                const UnstableCurve& curve, int n);

}  // namespace skewlab
