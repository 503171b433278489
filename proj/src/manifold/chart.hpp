#pragma once

// A Chart is a single coordinate patch with a Riemannian metric given by a
// callback.  Metric derivatives come either from analytic callbacks or from
// central differences (step 1e-5*(1+|x|) for first derivatives and
// 1e-4*(1+|x|) for second derivatives).

#include <functional>
#include <optional>
#include <string>

#include "support/linalg.hpp"

namespace focallab {

using MetricFn = std::function<void(const double* x, double* g)>;        // writes n*n, row-major
using MetricD1Fn = std::function<void(const double* x, double* dg)>;     // dg[(k*n+i)*n+j] = d_k g_ij
using MetricD2Fn = std::function<void(const double* x, double* ddg)>;    // ddg[((l*n+k)*n+i)*n+j] = d_l d_k g_ij
using DomainFn = std::function<bool(const double* x)>;

class Chart {
 public:
  Chart() = default;
  Chart(int dim, std::string name, MetricFn metric);

  Chart& with_derivatives(MetricD1Fn d1, MetricD2Fn d2 = nullptr);
  Chart& with_domain(DomainFn in_domain);

  int dim() const { return dim_; }
  const std::string& name() const { return name_; }
  bool has_analytic_d1() const { return static_cast<bool>(d1_); }
  bool has_analytic_d2() const { return static_cast<bool>(d2_); }
  bool in_domain(const double* x) const { return !domain_ || domain_(x); }

  // Metric evaluation; `metric_spd` additionally factorizes and fails with
  // MetricNotPD when the matrix is not positive definite.
  Mat metric(const double* x) const;
  Cholesky metric_spd(const double* x) const;

  // First and second coordinate derivatives of the metric, analytic when
  // callbacks were supplied and finite differences otherwise.
  void metric_d1(const double* x, std::vector<double>& dg) const;
  void metric_d2(const double* x, std::vector<double>& ddg) const;

  // Finite-difference versions regardless of analytic callbacks (used to
  // cross-check analytic derivatives).
  void metric_d1_fd(const double* x, std::vector<double>& dg) const;

 private:
  int dim_ = 0;
  std::string name_;
  MetricFn metric_;
  MetricD1Fn d1_;
  MetricD2Fn d2_;
  DomainFn domain_;
};

// Conformally flat chart g = phi(x)^2 * Id with analytic derivatives derived
// from phi and its gradient/Hessian.  Covers every constant-curvature model
// used by the catalog.
Chart conformal_chart(int dim, std::string name,
                      std::function<double(const double*)> phi,
                      std::function<void(const double*, double*)> grad_phi,
                      std::function<void(const double*, double*)> hess_phi);

}  // namespace focallab
