#pragma once

// Constant-curvature model quantities: generalized sine/cosine/cotangent for
// curvature kappa, the closed-form Jacobi matrix of a space form, and the
// scalar Riccati solution with its finite-time blow-up.

#include "support/error.hpp"
#include "support/linalg.hpp"

namespace focallab {

// Solution of f'' + kappa f = 0 with f(0) = 0, f'(0) = 1.
double sn_kappa(double kappa, double t);
// Solution with f(0) = 1, f'(0) = 0.
double cn_kappa(double kappa, double t);
// cn/sn; raises PoleAtT at the zeros of sn.
double ct_kappa(double kappa, double t);

// Space-form Jacobi matrix cn(t) A0 + sn(t) A0'.
Mat model_jacobi(double kappa, const Mat& a0, const Mat& a0prime, double t);

// Scalar Riccati solution of f' + f^2 + kappa = 0 with f(0) = lambda0:
//   f(s) = (lambda0 cn(s) - kappa sn(s)) / (cn(s) + lambda0 sn(s)).
// blow_up is the first positive zero of the denominator (+infinity when the
// solution is global); value() raises BeyondBlowup at or past it.
struct ModelRiccati {
  double kappa = 0.0;
  double lambda0 = 0.0;
  double blow_up = 0.0;

  double value(double s) const;
};

ModelRiccati model_riccati(double kappa, double lambda0);

}  // namespace focallab
