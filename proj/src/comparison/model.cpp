#include "comparison/model.hpp"

#include <cmath>
#include <limits>

namespace focallab {

double sn_kappa(double kappa, double t) {
  if (kappa > 0.0) {
    const double rk = std::sqrt(kappa);
    return std::sin(rk * t) / rk;
  }
  if (kappa < 0.0) {
    const double rk = std::sqrt(-kappa);
    return std::sinh(rk * t) / rk;
  }
  return t;
}

double cn_kappa(double kappa, double t) {
  if (kappa > 0.0) return std::cos(std::sqrt(kappa) * t);
  if (kappa < 0.0) return std::cosh(std::sqrt(-kappa) * t);
  return 1.0;
}

double ct_kappa(double kappa, double t) {
  const double s = sn_kappa(kappa, t);
  if (s == 0.0) raise(ErrorCode::PoleAtT, "generalized cotangent pole");
  return cn_kappa(kappa, t) / s;
}

Mat model_jacobi(double kappa, const Mat& a0, const Mat& a0prime, double t) {
  if (a0.nr != a0prime.nr || a0.nc != a0prime.nc)
    raise(ErrorCode::InvalidArgument, "model Jacobi blocks must share a shape");
  const double c = cn_kappa(kappa, t);
  const double s = sn_kappa(kappa, t);
  Mat out(a0.nr, a0.nc);
  for (size_t i = 0; i < out.a.size(); ++i) out.a[i] = c * a0.a[i] + s * a0prime.a[i];
  return out;
}

double ModelRiccati::value(double s) const {
  if (s >= blow_up)
    raise(ErrorCode::BeyondBlowup, "model Riccati solution queried at or past its blow-up");
  const double cn = cn_kappa(kappa, s);
  const double sn = sn_kappa(kappa, s);
  return (lambda0 * cn - kappa * sn) / (cn + lambda0 * sn);
}

ModelRiccati model_riccati(double kappa, double lambda0) {
  ModelRiccati m;
  m.kappa = kappa;
  m.lambda0 = lambda0;
  const double inf = std::numeric_limits<double>::infinity();
  if (kappa > 0.0) {
    const double rk = std::sqrt(kappa);
    m.blow_up = (M_PI / 2.0 + std::atan(lambda0 / rk)) / rk;
  } else if (kappa == 0.0) {
    m.blow_up = lambda0 < 0.0 ? -1.0 / lambda0 : inf;
  } else {
    const double rk = std::sqrt(-kappa);
    m.blow_up = lambda0 < -rk ? std::atanh(-rk / lambda0) / rk : inf;
  }
  return m;
}

}  // namespace focallab
