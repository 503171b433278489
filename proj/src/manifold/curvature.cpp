#include "manifold/curvature.hpp"

#include <cmath>
#include <string>

namespace focallab {

namespace {

Mat inverse_spd(const Mat& g) {
  Cholesky c = cholesky(g);
  return c.solve_matrix(Mat::identity(g.nr));
}

std::vector<Mat> christoffel_from_d1(const Mat& g, const std::vector<double>& dg, int n) {
  Mat ginv = inverse_spd(g);
  auto d = [&](int k, int i, int j) {
    return dg[(static_cast<size_t>(k) * n + i) * n + j];
  };
  std::vector<Mat> gamma(n, Mat(n, n));
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      // lowered symbol T_l = (d_i g_jl + d_j g_il - d_l g_ij) / 2
      for (int k = 0; k < n; ++k) {
        double s = 0.0;
        for (int l = 0; l < n; ++l)
          s += ginv(k, l) * 0.5 * (d(i, j, l) + d(j, i, l) - d(l, i, j));
        gamma[k](i, j) = s;
        gamma[k](j, i) = s;
      }
    }
  return gamma;
}

}  // namespace

std::vector<Mat> christoffel(const Chart& chart, const double* x) {
  const int n = chart.dim();
  std::vector<double> dg;
  chart.metric_d1(x, dg);
  return christoffel_from_d1(chart.metric(x), dg, n);
}

std::vector<Mat> christoffel_fd(const Chart& chart, const double* x) {
  const int n = chart.dim();
  std::vector<double> dg;
  chart.metric_d1_fd(x, dg);
  return christoffel_from_d1(chart.metric(x), dg, n);
}

double RiemannTensor::lowered(const Mat& g, int i, int j, int k, int l) const {
  double s = 0.0;
  for (int m = 0; m < n; ++m) s += g(l, m) * up_component(i, j, k, m);
  return s;
}

Vec RiemannTensor::apply(const Vec& u, const Vec& w, const Vec& z) const {
  Vec out(n, 0.0);
  for (int i = 0; i < n; ++i) {
    double ui = u[i];
    if (ui == 0.0) continue;
    for (int j = 0; j < n; ++j) {
      double c = ui * w[j];
      if (c == 0.0) continue;
      for (int k = 0; k < n; ++k) {
        double czk = c * z[k];
        if (czk == 0.0) continue;
        const double* base = &up[((static_cast<size_t>(i) * n + j) * n + k) * n];
        for (int l = 0; l < n; ++l) out[l] += czk * base[l];
      }
    }
  }
  return out;
}

RiemannTensor riemann(const Chart& chart, const double* x) {
  const int n = chart.dim();
  Mat g = chart.metric(x);
  Mat ginv = inverse_spd(g);

  std::vector<double> dg, ddg;
  chart.metric_d1(x, dg);
  chart.metric_d2(x, ddg);
  auto d1 = [&](int k, int i, int j) {
    return dg[(static_cast<size_t>(k) * n + i) * n + j];
  };
  auto d2 = [&](int l, int k, int i, int j) {
    return ddg[((static_cast<size_t>(l) * n + k) * n + i) * n + j];
  };

  std::vector<Mat> gamma = christoffel_from_d1(g, dg, n);

  // d_m Gamma^k_ij = d_m g^{kl} T_lij + g^{kl} d_m T_lij, with
  // T_lij = (d_i g_jl + d_j g_il - d_l g_ij)/2 and
  // d_m g^{kl} = -g^{ka} d_m g_ab g^{bl}.
  std::vector<double> t(static_cast<size_t>(n) * n * n);
  auto tref = [&](int l, int i, int j) -> double& {
    return t[(static_cast<size_t>(l) * n + i) * n + j];
  };
  for (int l = 0; l < n; ++l)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        tref(l, i, j) = 0.5 * (d1(i, j, l) + d1(j, i, l) - d1(l, i, j));

  std::vector<double> dgamma(static_cast<size_t>(n) * n * n * n);
  auto dgref = [&](int m, int k, int i, int j) -> double& {
    return dgamma[((static_cast<size_t>(m) * n + k) * n + i) * n + j];
  };
  for (int m = 0; m < n; ++m) {
    // dginv = -ginv * d_m g * ginv
    Mat dm(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) dm(i, j) = d1(m, i, j);
    Mat dginv = -1.0 * (ginv * dm * ginv);
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          double s = 0.0;
          for (int l = 0; l < n; ++l) {
            double dt = 0.5 * (d2(m, i, j, l) + d2(m, j, i, l) - d2(m, l, i, j));
            s += dginv(k, l) * tref(l, i, j) + ginv(k, l) * dt;
          }
          dgref(m, k, i, j) = s;
        }
  }

  // R^l_{ijk} = d_i Gamma^l_jk - d_j Gamma^l_ik
  //           + Gamma^l_im Gamma^m_jk - Gamma^l_jm Gamma^m_ik
  RiemannTensor r;
  r.n = n;
  r.up.assign(static_cast<size_t>(n) * n * n * n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          double s = dgref(i, l, j, k) - dgref(j, l, i, k);
          for (int m = 0; m < n; ++m)
            s += gamma[l](i, m) * gamma[m](j, k) - gamma[l](j, m) * gamma[m](i, k);
          r.up[((static_cast<size_t>(i) * n + j) * n + k) * n + l] = s;
        }
    }
  return r;
}

double sectional_curvature(const Chart& chart, const double* x, const Vec& u, const Vec& w) {
  Mat g = chart.metric(x);
  double uu = inner(g, u, u), ww = inner(g, w, w), uw = inner(g, u, w);
  double denom = uu * ww - uw * uw;
  double scale_ref = std::max(uu * ww, 1e-300);
  if (denom < 1e-12 * scale_ref)
    raise(ErrorCode::DegeneratePlane, "plane spanned by u, w is degenerate");
  RiemannTensor r = riemann(chart, x);
  Vec rww_u = r.apply(u, w, w);
  return inner(g, rww_u, u) / denom;
}

Mat curvature_operator_in_frame(const RiemannTensor& r, const Mat& g, const Vec& v,
                                const std::vector<Vec>& frame) {
  const int d = static_cast<int>(frame.size());
  Mat m(d, d);
  std::vector<Vec> rv(d);
  for (int i = 0; i < d; ++i) rv[i] = r.apply(frame[i], v, v);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) m(i, j) = inner(g, rv[i], frame[j]);
  return m;
}

DirectionalOperator directional_curvature_operator(const Chart& chart, const double* x,
                                                   const Vec& v) {
  Mat g = chart.metric(x);
  double vn = std::sqrt(inner(g, v, v));
  if (!(vn > 0.0)) raise(ErrorCode::InvalidArgument, "direction vector must be nonzero");
  Vec vu = scale(1.0 / vn, v);
  std::vector<Vec> basis = complete_orthonormal_basis(g, {vu});
  basis.erase(basis.begin());  // drop v itself
  RiemannTensor r = riemann(chart, x);
  DirectionalOperator out;
  out.basis = std::move(basis);
  out.op = curvature_operator_in_frame(r, g, vu, out.basis);
  return out;
}

double ric_k(const Chart& chart, const double* x, const Vec& v, int k) {
  const int d = chart.dim() - 1;
  if (k < 1 || k > d)
    raise(ErrorCode::KOutOfRange,
          "k = " + std::to_string(k) + " outside [1, " + std::to_string(d) + "]");
  DirectionalOperator op = directional_curvature_operator(chart, x, v);
  SymEigen e = sym_eigen(symmetrize(op.op));
  double s = 0.0;
  for (int i = 0; i < k; ++i) s += e.values[i];
  return s;
}

}  // namespace focallab
