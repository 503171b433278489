#include "submanifold/embedding.hpp"

#include <cmath>
#include <utility>

namespace focallab {

EmbeddedSubmanifold::EmbeddedSubmanifold(Chart chart, int param_dim, std::string name,
                                         EmbedFn embed, ParamDomain domain)
    : chart_(std::move(chart)),
      m_(param_dim),
      name_(std::move(name)),
      embed_(std::move(embed)),
      domain_(std::move(domain)) {
  if (m_ < 1 || m_ >= chart_.dim())
    raise(ErrorCode::InvalidArgument, "parameter dimension must be in [1, dim)");
  if (static_cast<int>(domain_.lo.size()) != m_ || static_cast<int>(domain_.hi.size()) != m_)
    raise(ErrorCode::InvalidArgument, "parameter domain bounds must have param_dim entries");
  if (domain_.periodic.empty()) domain_.periodic.assign(m_, 0);
}

EmbeddedSubmanifold& EmbeddedSubmanifold::with_jacobian(EmbedJacobianFn jac) {
  jac_ = std::move(jac);
  return *this;
}

void EmbeddedSubmanifold::embed_at(const double* u, double* x) const { embed_(u, x); }

Vec EmbeddedSubmanifold::embed_at(const Vec& u) const {
  Vec x(chart_.dim());
  embed_(u.data(), x.data());
  return x;
}

Mat EmbeddedSubmanifold::jacobian(const double* u) const {
  const int n = chart_.dim();
  Mat j(n, m_);
  if (jac_) {
    std::vector<double> buf(static_cast<size_t>(n) * m_);
    jac_(u, buf.data());
    for (int i = 0; i < n; ++i)
      for (int a = 0; a < m_; ++a) j(i, a) = buf[static_cast<size_t>(i) * m_ + a];
    return j;
  }
  double unorm = 0.0;
  for (int a = 0; a < m_; ++a) unorm += u[a] * u[a];
  const double h = 1e-6 * (1.0 + std::sqrt(unorm));
  Vec up(u, u + m_), xp(n), xm(n);
  for (int a = 0; a < m_; ++a) {
    up[a] = u[a] + h;
    embed_(up.data(), xp.data());
    up[a] = u[a] - h;
    embed_(up.data(), xm.data());
    up[a] = u[a];
    for (int i = 0; i < n; ++i) j(i, a) = (xp[i] - xm[i]) / (2.0 * h);
  }
  return j;
}

Vec EmbeddedSubmanifold::second_derivative(const double* u, int a, int b) const {
  const int n = chart_.dim();
  double unorm = 0.0;
  for (int c = 0; c < m_; ++c) unorm += u[c] * u[c];
  const double h = 1e-4 * (1.0 + std::sqrt(unorm));
  Vec up(u, u + m_), out(n);
  if (a == b) {
    Vec xp(n), xm(n), x0(n);
    embed_(u, x0.data());
    up[a] = u[a] + h;
    embed_(up.data(), xp.data());
    up[a] = u[a] - h;
    embed_(up.data(), xm.data());
    for (int i = 0; i < n; ++i) out[i] = (xp[i] - 2.0 * x0[i] + xm[i]) / (h * h);
  } else {
    Vec xpp(n), xpm(n), xmp(n), xmm(n);
    up[a] = u[a] + h;
    up[b] = u[b] + h;
    embed_(up.data(), xpp.data());
    up[b] = u[b] - h;
    embed_(up.data(), xpm.data());
    up[a] = u[a] - h;
    up[b] = u[b] + h;
    embed_(up.data(), xmp.data());
    up[b] = u[b] - h;
    embed_(up.data(), xmm.data());
    for (int i = 0; i < n; ++i) out[i] = (xpp[i] - xpm[i] - xmp[i] + xmm[i]) / (4.0 * h * h);
  }
  return out;
}

NormalFrame tangent_normal_split(const EmbeddedSubmanifold& sub, const double* u) {
  const int n = sub.ambient_dim();
  const int m = sub.param_dim();
  NormalFrame f;
  f.point = Vec(n);
  sub.embed_at(u, f.point.data());
  Mat g = sub.chart().metric(f.point.data());
  Mat j = sub.jacobian(u);

  // Gram matrix of the coordinate tangent vectors; rank check via its
  // smallest eigenvalue (squared singular value of the Jacobian in the
  // metric sense).
  Mat w(m, m);
  std::vector<Vec> cols(m, Vec(n));
  for (int a = 0; a < m; ++a)
    for (int i = 0; i < n; ++i) cols[a][i] = j(i, a);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) w(a, b) = inner(g, cols[a], cols[b]);
  SymEigen we = sym_eigen(symmetrize(w));
  if (!(we.values[0] > 1e-20))  // smallest metric singular value > 1e-10
    raise(ErrorCode::RankDeficientEmbedding,
          "embedding Jacobian is rank deficient at the given parameter");

  // Orthonormalize the tangent columns in parameter space (Gram inner
  // product) so that the coefficient matrix is available for the shape
  // operator, then push forward.
  std::vector<Vec> coeff;
  for (int a = 0; a < m; ++a) {
    Vec e(m, 0.0);
    e[a] = 1.0;
    coeff.push_back(e);
  }
  std::vector<Vec> ortho = orthonormalize(w, coeff, true);
  f.tangent_coeffs = Mat(m, m);
  f.tangent.assign(m, Vec(n, 0.0));
  for (int al = 0; al < m; ++al) {
    for (int a = 0; a < m; ++a) {
      f.tangent_coeffs(al, a) = ortho[al][a];
      for (int i = 0; i < n; ++i) f.tangent[al][i] += ortho[al][a] * cols[a][i];
    }
  }

  std::vector<Vec> basis = complete_orthonormal_basis(g, f.tangent);
  f.normal.assign(basis.begin() + m, basis.end());
  return f;
}

std::vector<Vec> parameter_grid(const EmbeddedSubmanifold& sub, const std::vector<int>& counts) {
  const int m = sub.param_dim();
  if (static_cast<int>(counts.size()) != m)
    raise(ErrorCode::InvalidArgument, "grid counts must have param_dim entries");
  const ParamDomain& d = sub.domain();
  std::vector<std::vector<double>> axes(m);
  for (int a = 0; a < m; ++a) {
    int c = std::max(1, counts[a]);
    double lo = d.lo[a], hi = d.hi[a];
    for (int i = 0; i < c; ++i) {
      double t = d.periodic[a]
                     ? lo + (hi - lo) * (i + 0.0) / c          // periodic: endpoint omitted
                     : lo + (hi - lo) * (c == 1 ? 0.5 : static_cast<double>(i) / (c - 1));
      axes[a].push_back(t);
    }
  }
  std::vector<Vec> out;
  Vec u(m);
  std::function<void(int)> rec = [&](int a) {
    if (a == m) {
      out.push_back(u);
      return;
    }
    for (double t : axes[a]) {
      u[a] = t;
      rec(a + 1);
    }
  };
  rec(0);
  return out;
}

}  // namespace focallab
