#include "manifold/geodesic.hpp"

#include <cmath>
#include <string>

namespace focallab {

namespace {

void unpack(const double* y, int n, Vec& x, Vec& v, std::vector<Vec>& frame) {
  x.assign(y, y + n);
  v.assign(y + n, y + 2 * n);
  frame.assign(n - 1, Vec(n));
  for (int i = 0; i < n - 1; ++i)
    for (int j = 0; j < n; ++j) frame[i][j] = y[(2 + i) * n + j];
}

}  // namespace

GeodesicState FramedGeodesic::at(double t) const {
  const int n = chart_.dim();
  Vec y = traj_.eval(t);
  GeodesicState s;
  unpack(y.data(), n, s.x, s.v, s.frame);
  return s;
}

void FramedGeodesic::position(double t, double* x) const {
  const int n = chart_.dim();
  Vec y = traj_.eval(t);
  for (int i = 0; i < n; ++i) x[i] = y[i];
}

Mat FramedGeodesic::curvature_operator(double t) const {
  GeodesicState s = at(t);
  Mat g = chart_.metric(s.x.data());
  RiemannTensor r = riemann(chart_, s.x.data());
  return symmetrize(curvature_operator_in_frame(r, g, s.v, s.frame));
}

FramedGeodesic integrate_geodesic(const Chart& chart, const Vec& x0, const Vec& v0,
                                  double t_end, const GeodesicOptions& options) {
  const int n = chart.dim();
  if (static_cast<int>(x0.size()) != n || static_cast<int>(v0.size()) != n)
    raise(ErrorCode::InvalidArgument, "x0/v0 dimension mismatch");
  if (!chart.in_domain(x0.data()))
    raise(ErrorCode::LeftChartDomain, "initial point is outside the chart domain");

  Mat g0 = chart.metric(x0.data());
  double speed = std::sqrt(inner(g0, v0, v0));
  if (!(speed > 0.0)) raise(ErrorCode::InvalidArgument, "initial velocity must be nonzero");
  Vec vu = scale(1.0 / speed, v0);

  std::vector<Vec> frame;
  if (options.initial_frame) {
    frame = *options.initial_frame;
    if (static_cast<int>(frame.size()) != n - 1)
      raise(ErrorCode::InvalidArgument, "initial frame must have dim-1 vectors");
  } else {
    frame = complete_orthonormal_basis(g0, {vu});
    frame.erase(frame.begin());
  }

  Vec y0(static_cast<size_t>(n) * (n + 1));
  for (int i = 0; i < n; ++i) y0[i] = x0[i];
  for (int i = 0; i < n; ++i) y0[n + i] = vu[i];
  for (int i = 0; i < n - 1; ++i)
    for (int j = 0; j < n; ++j) y0[(2 + i) * n + j] = frame[i][j];

  // x' = v, v' = -Gamma(v, v), E' = -Gamma(v, E)
  OdeRhs rhs = [&chart, n](double /*t*/, const double* y, double* dy) {
    const double* x = y;
    const double* v = y + n;
    std::vector<Mat> gamma = christoffel(chart, x);
    for (int i = 0; i < n; ++i) dy[i] = v[i];
    for (int k = 0; k < n; ++k) {
      double s = 0.0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) s += gamma[k](i, j) * v[i] * v[j];
      dy[n + k] = -s;
    }
    for (int e = 0; e < n - 1; ++e) {
      const double* w = y + (2 + e) * n;
      for (int k = 0; k < n; ++k) {
        double s = 0.0;
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) s += gamma[k](i, j) * v[i] * w[j];
        dy[(2 + e) * n + k] = -s;
      }
    }
  };

  PostStep post = [&chart, n](double t, double* y) -> bool {
    if (!chart.in_domain(y))
      raise(ErrorCode::LeftChartDomain,
            "geodesic left the chart domain at t = " + std::to_string(t));
    // re-orthonormalize the frame against g at the current point
    Mat g = chart.metric(y);
    Vec v(y + n, y + 2 * n);
    double vv = inner(g, v, v);
    std::vector<Vec> fr(n - 1, Vec(n));
    for (int i = 0; i < n - 1; ++i)
      for (int j = 0; j < n; ++j) fr[i][j] = y[(2 + i) * n + j];
    for (int i = 0; i < n - 1; ++i) {
      Vec w = axpy(-inner(g, fr[i], v) / vv, v, fr[i]);
      for (int p = 0; p < i; ++p) w = axpy(-inner(g, fr[p], w), fr[p], w);
      double r = std::sqrt(inner(g, w, w));
      fr[i] = scale(1.0 / r, w);
    }
    for (int i = 0; i < n - 1; ++i)
      for (int j = 0; j < n; ++j) y[(2 + i) * n + j] = fr[i][j];
    return true;
  };

  OdeOptions ode = options.ode;
  // The cubic dense output is two orders below the fifth-order stepper; at
  // the step sizes the error controller picks (~0.05 here) the interpolant
  // sags ~1e-7 between nodes, which downstream Riccati comparisons amplify.
  // Capping the node spacing keeps interpolated states near the solver
  // tolerance.
  if (ode.max_step == 0.0) ode.max_step = 0.01;
  Trajectory traj = integrate_ode(rhs, y0, 0.0, t_end, ode, post);
  return FramedGeodesic(chart, std::move(traj));
}

}  // namespace focallab
