#include "jacobi/family.hpp"

#include <cmath>
#include <utility>

namespace focallab {

namespace {

Mat block_from(const Mat& s, int m, int d, bool negate) {
  Mat out(d, d);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) out(a, b) = negate ? -s(a, b) : s(a, b);
  return out;
}

}  // namespace

LagrangianFamily lambda_n(const EmbeddedSubmanifold& sub, const double* u, const Vec& v,
                          double t_end, const OdeOptions& geo_ode) {
  const NormalFrame frame = tangent_normal_split(sub, u);
  const int n = sub.ambient_dim();
  const int m = sub.param_dim();
  const int d = n - 1;

  const Mat s = shape_operator_in_frame(sub, u, v, frame);

  GeodesicOptions opts;
  opts.ode = geo_ode;
  opts.initial_frame = adapted_frame(sub, frame, v);
  FramedGeodesic geo = integrate_geodesic(sub.chart(), frame.point, v, t_end, opts);

  Mat a0(d, d);
  for (int a = 0; a < m; ++a) a0(a, a) = 1.0;
  Mat a0p = block_from(s, m, d, /*negate=*/true);
  for (int a = m; a < d; ++a) a0p(a, a) = 1.0;

  return LagrangianFamily{std::move(geo), std::move(a0), std::move(a0p),
                          FamilyKind::Submanifold};
}

LagrangianFamily point_source_family(FramedGeodesic geodesic) {
  const int d = geodesic.dim() - 1;
  Mat a0(d, d);
  return LagrangianFamily{std::move(geodesic), std::move(a0), Mat::identity(d),
                          FamilyKind::PointSource};
}

LagrangianFamily custom_family(FramedGeodesic geodesic, Mat a0, Mat a0prime) {
  const int d = geodesic.dim() - 1;
  if (a0.nr != d || a0.nc != d || a0prime.nr != d || a0prime.nc != d)
    raise(ErrorCode::InvalidArgument, "initial Jacobi matrices must be (n-1) x (n-1)");

  const Mat w = transpose(a0) * a0prime;
  double scale = std::max(1.0, std::max(max_abs(a0), max_abs(a0prime)));
  if (asymmetry(w) > 1e-10 * scale)
    raise(ErrorCode::NotLagrangian, "A0^T A0' is not symmetric");

  // Full column rank of the stacked 2d x d matrix [A0; A0'].
  Mat gram(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      double acc = 0.0;
      for (int k = 0; k < d; ++k)
        acc += a0(k, i) * a0(k, j) + a0prime(k, i) * a0prime(k, j);
      gram(i, j) = acc;
    }
  const SymEigen eig = sym_eigen(gram, 1e-6);
  if (eig.values.front() <= 1e-20 * std::max(1.0, eig.values.back()))
    raise(ErrorCode::NotLagrangian, "[A0; A0'] is column rank deficient");

  return LagrangianFamily{std::move(geodesic), std::move(a0), std::move(a0prime),
                          FamilyKind::Custom};
}

LagrangianFamily reversed_family(const LagrangianFamily& family, double t_end,
                                 const OdeOptions& geo_ode) {
  const GeodesicState s0 = family.geodesic.at(family.geodesic.t_begin());
  Vec neg_v(s0.v.size());
  for (size_t i = 0; i < s0.v.size(); ++i) neg_v[i] = -s0.v[i];

  GeodesicOptions opts;
  opts.ode = geo_ode;
  opts.initial_frame = s0.frame;  // still orthogonal to -v
  FramedGeodesic geo = integrate_geodesic(family.geodesic.chart(), s0.x, neg_v, t_end, opts);

  Mat a0p = family.a0prime;
  for (double& e : a0p.a) e = -e;
  return LagrangianFamily{std::move(geo), family.a0, std::move(a0p), family.kind};
}

Mat JacobiEvolution::a(double t) const {
  Vec y = traj_.eval(t);
  Mat out(d_, d_);
  std::copy(y.begin(), y.begin() + d_ * d_, out.a.begin());
  return out;
}

Mat JacobiEvolution::a_prime(double t) const {
  Vec y = traj_.eval(t);
  Mat out(d_, d_);
  std::copy(y.begin() + d_ * d_, y.end(), out.a.begin());
  return out;
}

double JacobiEvolution::wronskian_defect(double t) const {
  const Mat at = a(t);
  const Mat ap = a_prime(t);
  return max_abs(transpose(ap) * at - transpose(at) * ap);
}

OdeOptions default_jacobi_ode() {
  OdeOptions o;
  o.rel_tol = 1e-10;
  o.abs_tol = 1e-12;
  // Keep node spacing small enough that the cubic dense output (used by the
  // focal bisection and the comparison grids) matches the solver tolerance.
  o.max_step = 0.025;
  return o;
}

JacobiEvolution evolve(LagrangianFamily family, double t_max, const OdeOptions& ode) {
  const int d = family.geodesic.dim() - 1;
  if (t_max <= 0.0) raise(ErrorCode::InvalidArgument, "Jacobi span must be positive");
  if (t_max > family.geodesic.t_end() + 1e-12)
    raise(ErrorCode::InvalidArgument, "Jacobi span exceeds the geodesic span");

  Vec y0(2 * d * d);
  std::copy(family.a0.a.begin(), family.a0.a.end(), y0.begin());
  std::copy(family.a0prime.a.begin(), family.a0prime.a.end(), y0.begin() + d * d);

  const FramedGeodesic& geo = family.geodesic;
  auto rhs = [&geo, d](double t, const double* y, double* dy) {
    const Mat r = geo.curvature_operator(t);
    // A' block
    std::copy(y + d * d, y + 2 * d * d, dy);
    // A'' = -R A
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        double acc = 0.0;
        for (int k = 0; k < d; ++k) acc += r(i, k) * y[k * d + j];
        dy[d * d + i * d + j] = -acc;
      }
  };

  Trajectory traj = integrate_ode(rhs, y0, 0.0, t_max, ode);
  return JacobiEvolution(std::move(family), std::move(traj), d);
}

}  // namespace focallab
