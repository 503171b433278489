#include "manifold/chart.hpp"

#include <cmath>
#include <utility>

namespace focallab {

Chart::Chart(int dim, std::string name, MetricFn metric)
    : dim_(dim), name_(std::move(name)), metric_(std::move(metric)) {
  if (dim < 2) raise(ErrorCode::InvalidArgument, "chart dimension must be at least 2");
}

Chart& Chart::with_derivatives(MetricD1Fn d1, MetricD2Fn d2) {
  d1_ = std::move(d1);
  d2_ = std::move(d2);
  return *this;
}

Chart& Chart::with_domain(DomainFn in_domain) {
  domain_ = std::move(in_domain);
  return *this;
}

Mat Chart::metric(const double* x) const {
  Mat g(dim_, dim_);
  metric_(x, g.a.data());
  return g;
}

Cholesky Chart::metric_spd(const double* x) const { return cholesky(metric(x)); }

namespace {

double fd_step(const double* x, int n, double base) {
  double nrm = 0.0;
  for (int i = 0; i < n; ++i) nrm += x[i] * x[i];
  return base * (1.0 + std::sqrt(nrm));
}

}  // namespace

void Chart::metric_d1_fd(const double* x, std::vector<double>& dg) const {
  const int n = dim_;
  dg.assign(static_cast<size_t>(n) * n * n, 0.0);
  const double h = fd_step(x, n, 1e-5);
  std::vector<double> xp(x, x + n), gp(static_cast<size_t>(n) * n), gm(gp);
  for (int k = 0; k < n; ++k) {
    xp[k] = x[k] + h;
    metric_(xp.data(), gp.data());
    xp[k] = x[k] - h;
    metric_(xp.data(), gm.data());
    xp[k] = x[k];
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        dg[(static_cast<size_t>(k) * n + i) * n + j] =
            (gp[static_cast<size_t>(i) * n + j] - gm[static_cast<size_t>(i) * n + j]) / (2.0 * h);
  }
}

void Chart::metric_d1(const double* x, std::vector<double>& dg) const {
  if (d1_) {
    dg.assign(static_cast<size_t>(dim_) * dim_ * dim_, 0.0);
    d1_(x, dg.data());
    return;
  }
  metric_d1_fd(x, dg);
}

void Chart::metric_d2(const double* x, std::vector<double>& ddg) const {
  const int n = dim_;
  ddg.assign(static_cast<size_t>(n) * n * n * n, 0.0);
  if (d2_) {
    d2_(x, ddg.data());
    return;
  }
  const double h = fd_step(x, n, 1e-4);
  const size_t nn = static_cast<size_t>(n) * n;
  std::vector<double> xp(x, x + n);
  std::vector<double> gpp(nn), gpm(nn), gmp(nn), gmm(nn), g0(nn);
  metric_(x, g0.data());
  for (int l = 0; l < n; ++l) {
    for (int k = l; k < n; ++k) {
      if (k == l) {
        xp[k] = x[k] + h;
        metric_(xp.data(), gpp.data());
        xp[k] = x[k] - h;
        metric_(xp.data(), gmm.data());
        xp[k] = x[k];
        for (size_t e = 0; e < nn; ++e) {
          double v = (gpp[e] - 2.0 * g0[e] + gmm[e]) / (h * h);
          ddg[(static_cast<size_t>(l) * n + k) * nn + e] = v;
        }
      } else {
        xp[l] = x[l] + h;
        xp[k] = x[k] + h;
        metric_(xp.data(), gpp.data());
        xp[k] = x[k] - h;
        metric_(xp.data(), gpm.data());
        xp[l] = x[l] - h;
        xp[k] = x[k] + h;
        metric_(xp.data(), gmp.data());
        xp[k] = x[k] - h;
        metric_(xp.data(), gmm.data());
        xp[l] = x[l];
        xp[k] = x[k];
        for (size_t e = 0; e < nn; ++e) {
          double v = (gpp[e] - gpm[e] - gmp[e] + gmm[e]) / (4.0 * h * h);
          ddg[(static_cast<size_t>(l) * n + k) * nn + e] = v;
          ddg[(static_cast<size_t>(k) * n + l) * nn + e] = v;
        }
      }
    }
  }
}

Chart conformal_chart(int dim, std::string name,
                      std::function<double(const double*)> phi,
                      std::function<void(const double*, double*)> grad_phi,
                      std::function<void(const double*, double*)> hess_phi) {
  const int n = dim;
  MetricFn metric = [n, phi](const double* x, double* g) {
    double p = phi(x);
    double p2 = p * p;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) g[static_cast<size_t>(i) * n + j] = (i == j) ? p2 : 0.0;
  };
  // d_k (phi^2 delta_ij) = 2 phi phi_k delta_ij
  MetricD1Fn d1 = [n, phi, grad_phi](const double* x, double* dg) {
    double p = phi(x);
    std::vector<double> gp(n);
    grad_phi(x, gp.data());
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          dg[(static_cast<size_t>(k) * n + i) * n + j] = (i == j) ? 2.0 * p * gp[k] : 0.0;
  };
  // d_l d_k (phi^2) = 2 (phi_l phi_k + phi phi_lk)
  MetricD2Fn d2 = [n, phi, grad_phi, hess_phi](const double* x, double* ddg) {
    double p = phi(x);
    std::vector<double> gp(n), hp(static_cast<size_t>(n) * n);
    grad_phi(x, gp.data());
    hess_phi(x, hp.data());
    const size_t nn = static_cast<size_t>(n) * n;
    for (int l = 0; l < n; ++l)
      for (int k = 0; k < n; ++k) {
        double v = 2.0 * (gp[l] * gp[k] + p * hp[static_cast<size_t>(l) * n + k]);
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j)
            ddg[(static_cast<size_t>(l) * n + k) * nn + static_cast<size_t>(i) * n + j] =
                (i == j) ? v : 0.0;
      }
  };
  Chart c(dim, std::move(name), std::move(metric));
  c.with_derivatives(std::move(d1), std::move(d2));
  return c;
}

}  // namespace focallab
