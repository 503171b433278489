#include "numerics/rootfind.hpp"

#include <cmath>
#include <string>

namespace focallab {

double bracketed_root(const std::function<double(double)>& f, double a, double b,
                      double tol) {
  if (!(b > a)) raise(ErrorCode::InvalidArgument, "bracket must satisfy a < b");
  double fa = f(a), fb = f(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if ((fa > 0.0) == (fb > 0.0))
    raise(ErrorCode::NoSignChange, "f has the same sign at both bracket ends");
  for (int it = 0; it < 200 && (b - a) > tol; ++it) {
    double m = 0.5 * (a + b);
    double fm = f(m);
    if (fm == 0.0) return m;
    if ((fm > 0.0) == (fa > 0.0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

double minimize_scalar(const std::function<double(double)>& f, double a, double b,
                       double tol) {
  const double inv_phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int it = 0; it < 400 && (b - a) > tol; ++it) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(x2);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace focallab
