#pragma once

#include <optional>
#include <string>
#include <vector>

#include "skewlab/system.hpp"

namespace skewlab {

struct ClauseReport {
  std::string id;
  bool pass = false;
  std::string detail;  // the certifying numbers, human readable
};

// Monotone-coupling hypotheses. All clauses are decided from the delta = 0
// skeleton of the spec.
struct AssumptionsReportA {
  ClauseReport a1, a2, a3;
  double alpha_s = 0.0;  // contraction of the base
  double lam_min = 0.0;  // fiber derivative at the attracting fixed point
  double lam_max = 0.0;  // fiber derivative at the repelling fixed point
  double alpha_u = 0.0;  // expansion of the base
  double c_lo = 0.0, c_hi = 0.0;  // bounds on r'
  double beta = 0.0;              // x-component of the unstable unit vector
  bool all_pass() const { return a1.pass && a2.pass && a3.pass; }
};

// A certificate for the rare-interaction hypotheses: interval radii around
// the fixed fiber points, the separation parameter d with its feasible
// range, and the clause margins that make the certificate checkable.
struct B3Witness {
  double i_plus_radius = 0.0;   // I+ = (z_r - rad, z_r + rad)
  double i_minus_radius = 0.0;  // I- = (z_a - rad, z_a + rad)
  double d = 0.0;               // midpoint of the feasible d interval
  double d_lo = 0.0;            // steepness requires d > d_lo
  double d_hi = 0.0;            // endpoint separation requires d < d_hi
  double c1_inv = 0.0;          // min g' over I+
  double c0 = 0.0;              // max g' over I-
  double cap_c0 = 0.0;          // c1_inv / max ||DA||, must exceed 1
  double disjoint_gap = 0.0;    // distance between g(I+) and I-
  double steep_margin = 0.0;    // min over the climb of 2 eps beta r' - 1
  double margin = 0.0;          // smallest clause margin, used for ranking
};

struct AssumptionsReportB {
  ClauseReport b1, b2, b3;
  double lam_max = 0.0;
  double base_norm = 0.0;            // max ||DA_p|| (operator 2-norm)
  std::optional<B3Witness> witness;  // largest-margin certificate
  std::vector<B3Witness> candidates; // every feasible radius pair found
  bool all_pass() const { return b1.pass && b2.pass && b3.pass; }
};

AssumptionsReportA check_assumptions_A(const SystemSpec& s);
AssumptionsReportB check_assumptions_B(const SystemSpec& s);

}  // namespace skewlab
