#include "support/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace focallab {

Mat operator+(const Mat& x, const Mat& y) {
  Mat r = x;
  for (size_t i = 0; i < r.a.size(); ++i) r.a[i] += y.a[i];
  return r;
}

Mat operator-(const Mat& x, const Mat& y) {
  Mat r = x;
  for (size_t i = 0; i < r.a.size(); ++i) r.a[i] -= y.a[i];
  return r;
}

Mat operator*(const Mat& x, const Mat& y) {
  Mat r(x.nr, y.nc);
  for (int i = 0; i < x.nr; ++i)
    for (int k = 0; k < x.nc; ++k) {
      double xik = x(i, k);
      if (xik == 0.0) continue;
      for (int j = 0; j < y.nc; ++j) r(i, j) += xik * y(k, j);
    }
  return r;
}

Mat operator*(double s, const Mat& x) {
  Mat r = x;
  for (double& v : r.a) v *= s;
  return r;
}

Mat transpose(const Mat& x) {
  Mat r(x.nc, x.nr);
  for (int i = 0; i < x.nr; ++i)
    for (int j = 0; j < x.nc; ++j) r(j, i) = x(i, j);
  return r;
}

Vec mat_vec(const Mat& m, const Vec& v) {
  Vec r(m.nr, 0.0);
  for (int i = 0; i < m.nr; ++i) {
    double s = 0.0;
    for (int j = 0; j < m.nc; ++j) s += m(i, j) * v[j];
    r[i] = s;
  }
  return r;
}

double max_abs(const Mat& m) {
  double r = 0.0;
  for (double v : m.a) r = std::max(r, std::fabs(v));
  return r;
}

double frobenius_norm(const Mat& m) {
  double s = 0.0;
  for (double v : m.a) s += v * v;
  return std::sqrt(s);
}

Mat symmetrize(const Mat& m) {
  Mat r(m.nr, m.nc);
  for (int i = 0; i < m.nr; ++i)
    for (int j = 0; j < m.nc; ++j) r(i, j) = 0.5 * (m(i, j) + m(j, i));
  return r;
}

double asymmetry(const Mat& m) {
  double r = 0.0;
  for (int i = 0; i < m.nr; ++i)
    for (int j = i + 1; j < m.nc; ++j) r = std::max(r, std::fabs(m(i, j) - m(j, i)));
  return r;
}

double dot(const Vec& x, const Vec& y) {
  double s = 0.0;
  for (size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

double norm2(const Vec& x) { return std::sqrt(dot(x, x)); }

Vec axpy(double a, const Vec& x, const Vec& y) {
  Vec r = y;
  for (size_t i = 0; i < r.size(); ++i) r[i] += a * x[i];
  return r;
}

Vec scale(double a, const Vec& x) {
  Vec r = x;
  for (double& v : r) v *= a;
  return r;
}

double inner(const Mat& g, const Vec& x, const Vec& y) {
  double s = 0.0;
  for (int i = 0; i < g.nr; ++i) {
    double row = 0.0;
    for (int j = 0; j < g.nc; ++j) row += g(i, j) * y[j];
    s += x[i] * row;
  }
  return s;
}

Cholesky cholesky(const Mat& g, double pivot_floor) {
  if (!g.square()) raise(ErrorCode::NotSquare, "cholesky needs a square matrix");
  int n = g.nr;
  Cholesky c;
  c.n = n;
  c.l = Mat(n, n);
  double dmax = 0.0;
  for (int i = 0; i < n; ++i) dmax = std::max(dmax, std::fabs(g(i, i)));
  if (dmax == 0.0) dmax = 1.0;
  for (int j = 0; j < n; ++j) {
    double d = g(j, j);
    for (int k = 0; k < j; ++k) d -= c.l(j, k) * c.l(j, k);
    if (!(d > pivot_floor * dmax))
      raise(ErrorCode::MetricNotPD, "matrix is not positive definite (pivot " +
                                        std::to_string(d) + " at index " + std::to_string(j) + ")");
    double ljj = std::sqrt(d);
    c.l(j, j) = ljj;
    for (int i = j + 1; i < n; ++i) {
      double s = g(i, j);
      for (int k = 0; k < j; ++k) s -= c.l(i, k) * c.l(j, k);
      c.l(i, j) = s / ljj;
    }
  }
  return c;
}

void Cholesky::solve_in_place(double* x) const {
  // forward: L z = b
  for (int i = 0; i < n; ++i) {
    double s = x[i];
    for (int k = 0; k < i; ++k) s -= l(i, k) * x[k];
    x[i] = s / l(i, i);
  }
  // backward: L^T y = z
  for (int i = n - 1; i >= 0; --i) {
    double s = x[i];
    for (int k = i + 1; k < n; ++k) s -= l(k, i) * x[k];
    x[i] = s / l(i, i);
  }
}

Vec Cholesky::solve(const Vec& b) const {
  Vec x = b;
  solve_in_place(x.data());
  return x;
}

Mat Cholesky::solve_matrix(const Mat& b) const {
  Mat x = b;
  Vec col(n);
  for (int j = 0; j < b.nc; ++j) {
    for (int i = 0; i < n; ++i) col[i] = b(i, j);
    solve_in_place(col.data());
    for (int i = 0; i < n; ++i) x(i, j) = col[i];
  }
  return x;
}

double Cholesky::log_det() const {
  double s = 0.0;
  for (int i = 0; i < n; ++i) s += std::log(l(i, i));
  return 2.0 * s;
}

Lu lu_factor(const Mat& m) {
  if (!m.square()) raise(ErrorCode::NotSquare, "lu_factor needs a square matrix");
  int n = m.nr;
  Lu f;
  f.n = n;
  f.lu = m;
  f.perm.resize(n);
  std::iota(f.perm.begin(), f.perm.end(), 0);
  for (int k = 0; k < n; ++k) {
    int p = k;
    double best = std::fabs(f.lu(k, k));
    for (int i = k + 1; i < n; ++i) {
      double v = std::fabs(f.lu(i, k));
      if (v > best) {
        best = v;
        p = i;
      }
    }
    if (best == 0.0) {
      f.singular = true;
      continue;
    }
    if (p != k) {
      for (int j = 0; j < n; ++j) std::swap(f.lu(k, j), f.lu(p, j));
      std::swap(f.perm[k], f.perm[p]);
      f.sign = -f.sign;
    }
    for (int i = k + 1; i < n; ++i) {
      double factor = f.lu(i, k) / f.lu(k, k);
      f.lu(i, k) = factor;
      for (int j = k + 1; j < n; ++j) f.lu(i, j) -= factor * f.lu(k, j);
    }
  }
  return f;
}

double Lu::det() const {
  if (singular) return 0.0;
  double d = sign;
  for (int i = 0; i < n; ++i) d *= lu(i, i);
  return d;
}

Vec Lu::solve(const Vec& b) const {
  if (singular) raise(ErrorCode::SingularAtT, "linear system is singular");
  Vec x(n);
  for (int i = 0; i < n; ++i) x[i] = b[perm[i]];
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < i; ++k) x[i] -= lu(i, k) * x[k];
  for (int i = n - 1; i >= 0; --i) {
    for (int k = i + 1; k < n; ++k) x[i] -= lu(i, k) * x[k];
    x[i] /= lu(i, i);
  }
  return x;
}

Mat Lu::solve_matrix(const Mat& b) const {
  Mat x(n, b.nc);
  Vec col(n), sol;
  for (int j = 0; j < b.nc; ++j) {
    for (int i = 0; i < n; ++i) col[i] = b(i, j);
    sol = solve(col);
    for (int i = 0; i < n; ++i) x(i, j) = sol[i];
  }
  return x;
}

double determinant(const Mat& m) { return lu_factor(m).det(); }

SymEigen sym_eigen(const Mat& m, double asym_tol) {
  if (!m.square()) raise(ErrorCode::NotSquare, "sym_eigen needs a square matrix");
  double scale_ref = std::max(1.0, max_abs(m));
  if (asymmetry(m) > asym_tol * scale_ref)
    raise(ErrorCode::NonSymmetric,
          "asymmetry " + std::to_string(asymmetry(m)) + " exceeds tolerance");
  int n = m.nr;
  Mat a = symmetrize(m);
  Mat v = Mat::identity(n);

  auto off_norm = [&]() {
    double s = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) s += a(i, j) * a(i, j);
    return std::sqrt(2.0 * s);
  };

  const double tol = 1e-15 * std::max(1.0, frobenius_norm(a));
  for (int sweep = 0; sweep < 100 && off_norm() > tol; ++sweep) {
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        double apq = a(p, q);
        if (std::fabs(apq) <= 1e-300) continue;
        double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        double t = std::copysign(1.0, theta) / (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0);
        double s = t * c;
        for (int i = 0; i < n; ++i) {
          double aip = a(i, p), aiq = a(i, q);
          a(i, p) = c * aip - s * aiq;
          a(i, q) = s * aip + c * aiq;
        }
        for (int j = 0; j < n; ++j) {
          double apj = a(p, j), aqj = a(q, j);
          a(p, j) = c * apj - s * aqj;
          a(q, j) = s * apj + c * aqj;
        }
        for (int i = 0; i < n; ++i) {
          double vip = v(i, p), viq = v(i, q);
          v(i, p) = c * vip - s * viq;
          v(i, q) = s * vip + c * viq;
        }
      }
    }
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int i, int j) { return a(i, i) < a(j, j); });
  SymEigen e;
  e.values.resize(n);
  e.vectors = Mat(n, n);
  for (int j = 0; j < n; ++j) {
    e.values[j] = a(order[j], order[j]);
    for (int i = 0; i < n; ++i) e.vectors(i, j) = v(i, order[j]);
  }
  return e;
}

Vec singular_values(const Mat& m) {
  Mat mtm = transpose(m) * m;
  SymEigen e = sym_eigen(symmetrize(mtm), 1e-6);
  Vec s(e.values.size());
  for (size_t i = 0; i < s.size(); ++i) s[i] = std::sqrt(std::max(0.0, e.values[i]));
  return s;
}

std::vector<Vec> orthonormalize(const Mat& g, const std::vector<Vec>& vectors,
                                bool strict, double drop_tol) {
  std::vector<Vec> basis;
  for (const Vec& v0 : vectors) {
    Vec v = v0;
    double original = std::sqrt(std::max(0.0, inner(g, v, v)));
    if (original == 0.0) original = 1.0;
    // two MGS passes for numerical orthogonality
    for (int pass = 0; pass < 2; ++pass)
      for (const Vec& b : basis) v = axpy(-inner(g, b, v), b, v);
    double r = std::sqrt(std::max(0.0, inner(g, v, v)));
    if (r < drop_tol * original) {
      if (strict)
        raise(ErrorCode::DegenerateSpan, "vector " + std::to_string(basis.size()) +
                                             " is in the span of its predecessors");
      continue;
    }
    basis.push_back(scale(1.0 / r, v));
  }
  return basis;
}

std::vector<Vec> complete_orthonormal_basis(const Mat& g, const std::vector<Vec>& seed) {
  int n = g.nr;
  std::vector<Vec> basis = orthonormalize(g, seed, true);
  for (int i = 0; i < n && static_cast<int>(basis.size()) < n; ++i) {
    Vec e(n, 0.0);
    e[i] = 1.0;
    Vec v = e;
    for (int pass = 0; pass < 2; ++pass)
      for (const Vec& b : basis) v = axpy(-inner(g, b, v), b, v);
    double r = std::sqrt(std::max(0.0, inner(g, v, v)));
    if (r < 1e-10) continue;  // coordinate direction already covered
    basis.push_back(scale(1.0 / r, v));
  }
  if (static_cast<int>(basis.size()) != n)
    raise(ErrorCode::DegenerateSpan, "failed to complete an orthonormal basis");
  return basis;
}

}  // namespace focallab
