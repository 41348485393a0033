#pragma once

#include "skewlab/torus.hpp"

namespace skewlab {

// Integer 2x2 base matrix acting on the two-torus. Must have determinant 1
// and trace >= 3, so both eigenvalues are real, positive and off the unit
// circle.
struct AnosovSpec {
  int m11 = 2, m12 = 1;
  int m21 = 1, m22 = 1;
};

// The one-parameter family [[n, n-1], [1, 1]], n >= 2.
AnosovSpec anosov_family(int n);

struct EigenData {
  double alpha_u = 0;  // expanding eigenvalue, > 1
  double alpha_s = 0;  // contracting eigenvalue, = 1/alpha_u
  Vec2 du;             // unit expanding eigenvector, du.x > 0
  Vec2 ds;             // unit contracting eigenvector, ds.x < 0
  double beta = 0;     // du.x, the overlap of du with the x-axis
};

// Throws AssumptionError if the matrix is not determinant-1 with trace >= 3,
// or if an eigenvector is axis-aligned (beta would vanish).
EigenData eigendata(const AnosovSpec& a);

// Operator 2-norm of the matrix (largest singular value). Equals alpha_u only
// when the matrix is symmetric.
double spectral_norm(const AnosovSpec& a);

Point2 anosov_apply(const AnosovSpec& a, const Point2& p);
Point2 anosov_inverse_apply(const AnosovSpec& a, const Point2& p);

}  // namespace skewlab
