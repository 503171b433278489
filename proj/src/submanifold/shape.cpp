#include "submanifold/shape.hpp"

#include <cmath>
#include <string>

#include "manifold/curvature.hpp"

namespace focallab {

namespace {

// <II(dF_a, dF_b), v> = g(v, d_a d_b F + Gamma(dF_a, dF_b))
Mat coordinate_form(const EmbeddedSubmanifold& sub, const double* u, const Vec& v,
                    const NormalFrame& frame) {
  const int n = sub.ambient_dim();
  const int m = sub.param_dim();
  Mat g = sub.chart().metric(frame.point.data());
  std::vector<Mat> gamma = christoffel(sub.chart(), frame.point.data());
  Mat j = sub.jacobian(u);
  Mat h(m, m);
  for (int a = 0; a < m; ++a)
    for (int b = a; b < m; ++b) {
      Vec dd = sub.second_derivative(u, a, b);
      for (int k = 0; k < n; ++k) {
        double s = 0.0;
        for (int i = 0; i < n; ++i)
          for (int l = 0; l < n; ++l) s += gamma[k](i, l) * j(i, a) * j(l, b);
        dd[k] += s;
      }
      double val = inner(g, dd, v);
      h(a, b) = val;
      h(b, a) = val;
    }
  return h;
}

void check_normal(const EmbeddedSubmanifold& sub, const Vec& v, const NormalFrame& frame) {
  Mat g = sub.chart().metric(frame.point.data());
  double vn = std::sqrt(inner(g, v, v));
  if (!(vn > 0.0)) raise(ErrorCode::InvalidArgument, "normal vector must be nonzero");
  for (const Vec& t : frame.tangent) {
    if (std::fabs(inner(g, t, v)) > 1e-8 * vn)
      raise(ErrorCode::NotNormal, "vector has a tangential component above tolerance");
  }
}

}  // namespace

Mat shape_operator_in_frame(const EmbeddedSubmanifold& sub, const double* u, const Vec& v,
                            const NormalFrame& frame) {
  check_normal(sub, v, frame);
  Mat g = sub.chart().metric(frame.point.data());
  double vn = std::sqrt(inner(g, v, v));
  Vec vu = scale(1.0 / vn, v);
  Mat h = coordinate_form(sub, u, vu, frame);
  // transform to the orthonormal tangent basis: S = C h C^T
  Mat s = frame.tangent_coeffs * h * transpose(frame.tangent_coeffs);
  return symmetrize(s);
}

Mat shape_operator(const EmbeddedSubmanifold& sub, const double* u, const Vec& v) {
  NormalFrame frame = tangent_normal_split(sub, u);
  return shape_operator_in_frame(sub, u, v, frame);
}

namespace {

double matrix_norm(const Mat& s, IINorm which) {
  if (which == IINorm::Frobenius) return frobenius_norm(s);
  SymEigen e = sym_eigen(s);
  double lo = std::fabs(e.values.front());
  double hi = std::fabs(e.values.back());
  return std::max(lo, hi);
}

// direction on S^{d-1} from spherical angles (d-1 of them)
Vec sphere_point(const Vec& ang) {
  int d = static_cast<int>(ang.size()) + 1;
  Vec w(d, 1.0);
  for (int i = 0; i < d - 1; ++i) {
    for (int j = 0; j < i; ++j) w[i] *= std::sin(ang[j]);
    w[i] *= std::cos(ang[i]);
  }
  for (int j = 0; j < d - 1; ++j) w[d - 1] *= std::sin(ang[j]);
  return w;
}

}  // namespace

double second_fundamental_form_norm(const EmbeddedSubmanifold& sub, const double* u,
                                    IINorm norm) {
  NormalFrame frame = tangent_normal_split(sub, u);
  const int codim = sub.codim();
  if (codim == 1) {
    Mat s = shape_operator_in_frame(sub, u, frame.normal[0], frame);
    return matrix_norm(s, norm);
  }

  // S_v is linear in v: precompute the shape operator of each normal basis
  // vector and scan combinations over the unit normal sphere.
  std::vector<Mat> h;
  for (const Vec& nu : frame.normal) h.push_back(shape_operator_in_frame(sub, u, nu, frame));
  const int m = sub.param_dim();
  auto value_at = [&](const Vec& ang) {
    Vec w = sphere_point(ang);
    Mat s(m, m);
    for (int c = 0; c < codim; ++c) s = s + w[c] * h[c];
    return matrix_norm(s, norm);
  };

  const int n_ang = codim - 1;
  const int target = 64 * codim;
  double best = -1.0;
  Vec best_ang(n_ang, 0.0);
  if (n_ang == 1) {
    int count = std::max(target, 128);
    for (int i = 0; i < count; ++i) {
      Vec ang{2.0 * M_PI * (i + 0.5) / count};
      double v = value_at(ang);
      if (v > best) {
        best = v;
        best_ang = ang;
      }
    }
  } else {
    // Fibonacci-style lattice on the angle box, deterministic
    int count = std::max(target, 128);
    const double golden = 0.6180339887498949;
    for (int i = 0; i < count; ++i) {
      Vec ang(n_ang);
      double frac = std::fmod(golden * i, 1.0);
      ang[0] = std::acos(std::clamp(1.0 - 2.0 * (i + 0.5) / count, -1.0, 1.0));
      for (int a = 1; a < n_ang; ++a)
        ang[a] = 2.0 * M_PI * std::fmod(frac * (a + 1) + 0.37 * a, 1.0);
      double v = value_at(ang);
      if (v > best) {
        best = v;
        best_ang = ang;
      }
    }
  }

  // One guarded Newton step per angle on the sampled maximizer.
  const double fd = 1e-4;
  Vec ang = best_ang;
  for (int a = 0; a < n_ang; ++a) {
    Vec ap = ang, am = ang;
    ap[a] += fd;
    am[a] -= fd;
    double fp = value_at(ap), fm = value_at(am), f0 = value_at(ang);
    double d1 = (fp - fm) / (2.0 * fd);
    double d2 = (fp - 2.0 * f0 + fm) / (fd * fd);
    if (std::isfinite(d1) && std::isfinite(d2) && d2 < 0.0) {
      double step = -d1 / d2;
      if (std::fabs(step) < 0.2) ang[a] += step;
    }
  }
  best = std::max(best, value_at(ang));
  return best;
}

TraceExtremes partial_trace_extremes(const Mat& shape, int k) {
  const int m = shape.nr;
  if (k < 1 || k > m)
    raise(ErrorCode::KOutOfRange,
          "k = " + std::to_string(k) + " outside [1, " + std::to_string(m) + "]");
  SymEigen e = sym_eigen(shape);
  TraceExtremes t{0.0, 0.0};
  for (int i = 0; i < k; ++i) {
    t.min_sum += e.values[i];
    t.max_sum += e.values[m - 1 - i];
  }
  return t;
}

double partial_trace_on_frame(const Mat& shape, const std::vector<Vec>& frame) {
  double s = 0.0;
  for (const Vec& q : frame) {
    Vec sq = mat_vec(shape, q);
    s += dot(q, sq);
  }
  return s;
}

std::vector<Vec> adapted_frame(const EmbeddedSubmanifold& sub, const NormalFrame& frame,
                               const Vec& v) {
  Mat g = sub.chart().metric(frame.point.data());
  double vn = std::sqrt(inner(g, v, v));
  Vec vu = scale(1.0 / vn, v);
  std::vector<Vec> seed{vu};
  for (const Vec& nu : frame.normal) seed.push_back(nu);
  std::vector<Vec> nu_perp = orthonormalize(g, seed, false);
  nu_perp.erase(nu_perp.begin());  // drop v
  std::vector<Vec> out = frame.tangent;
  out.insert(out.end(), nu_perp.begin(), nu_perp.end());
  if (static_cast<int>(out.size()) != sub.ambient_dim() - 1)
    raise(ErrorCode::DegenerateSpan, "adapted frame construction failed");
  return out;
}

FramedGeodesic normal_exp(const EmbeddedSubmanifold& sub, const double* u, const Vec& v,
                          double t_end, const OdeOptions& ode) {
  NormalFrame frame = tangent_normal_split(sub, u);
  check_normal(sub, v, frame);
  GeodesicOptions opts;
  opts.ode = ode;
  opts.initial_frame = adapted_frame(sub, frame, v);
  return integrate_geodesic(sub.chart(), frame.point, v, t_end, opts);
}

}  // namespace focallab
