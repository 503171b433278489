#include "numerics/ode.hpp"

#include <algorithm>
#include <cmath>

namespace focallab {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
// 5th order solution weights (also the FSAL row a7*)
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
// error weights: b - bhat
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

bool all_finite(const Vec& v) {
  for (double x : v)
    if (!std::isfinite(x)) return false;
  return true;
}

}  // namespace

void Trajectory::push_node(double t, const Vec& y, const Vec& f) {
  times_.push_back(t);
  values_.push_back(y);
  derivs_.push_back(f);
}

void Trajectory::eval(double t, double* out) const {
  size_t m = times_.size();
  if (t <= times_.front()) t = times_.front();
  if (t >= times_.back()) t = times_.back();
  // bracketing interval via binary search
  size_t hi = std::lower_bound(times_.begin(), times_.end(), t) - times_.begin();
  if (hi >= m) hi = m - 1;
  if (times_[hi] == t) {
    const Vec& y = values_[hi];
    std::copy(y.begin(), y.end(), out);
    return;
  }
  size_t lo = hi - 1;
  double h = times_[hi] - times_[lo];
  double s = (t - times_[lo]) / h;
  double s2 = s * s, s3 = s2 * s;
  double h00 = 2 * s3 - 3 * s2 + 1;
  double h10 = s3 - 2 * s2 + s;
  double h01 = -2 * s3 + 3 * s2;
  double h11 = s3 - s2;
  const Vec& y0 = values_[lo];
  const Vec& y1 = values_[hi];
  const Vec& f0 = derivs_[lo];
  const Vec& f1 = derivs_[hi];
  for (int i = 0; i < dim_; ++i)
    out[i] = h00 * y0[i] + h * h10 * f0[i] + h01 * y1[i] + h * h11 * f1[i];
}

Vec Trajectory::eval(double t) const {
  Vec out(dim_);
  eval(t, out.data());
  return out;
}

Trajectory integrate_ode(const OdeRhs& rhs, const Vec& y0, double t0, double t1,
                         const OdeOptions& options, const PostStep& post_step) {
  const int n = static_cast<int>(y0.size());
  const double span = t1 - t0;
  if (!(span > 0.0)) raise(ErrorCode::InvalidArgument, "integration span must be positive");

  auto eval_rhs = [&](double t, const Vec& y, Vec& f) {
    rhs(t, y.data(), f.data());
    for (int i = 0; i < n; ++i)
      if (!std::isfinite(f[i]))
        raise(ErrorCode::NonFiniteRhs,
              "right-hand side is not finite at t = " + std::to_string(t));
  };

  Vec y = y0;
  if (!all_finite(y)) raise(ErrorCode::InvalidArgument, "initial state is not finite");
  Vec k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), ytmp(n), ynew(n), err(n);
  eval_rhs(t0, y, k1);

  double h = options.initial_step;
  if (h <= 0.0) {
    // crude but serviceable first guess, refined immediately by the controller
    double ynorm = 0.0, fnorm = 0.0;
    for (int i = 0; i < n; ++i) {
      ynorm = std::max(ynorm, std::fabs(y[i]));
      fnorm = std::max(fnorm, std::fabs(k1[i]));
    }
    h = fnorm > 0.0 ? 0.01 * std::max(1.0, ynorm) / fnorm : 1e-3 * span;
    h = std::min(h, 0.1 * span);
  }
  if (options.max_step > 0.0) h = std::min(h, options.max_step);
  const double h_min = 1e-14 * std::max(std::fabs(t0), std::fabs(t1)) + 1e-300;

  Trajectory traj(n);
  traj.push_node(t0, y, k1);

  double t = t0;
  double worst_err = 0.0;
  long steps = 0;
  bool last = false;
  while (t < t1) {
    if (++steps > options.max_steps)
      raise(ErrorCode::StepUnderflow, "step budget exhausted at t = " + std::to_string(t));
    if (h < 16.0 * h_min * std::max(1.0, std::fabs(t)))
      raise(ErrorCode::StepUnderflow, "step size underflow at t = " + std::to_string(t));
    last = (t + h >= t1);
    if (last) h = t1 - t;

    for (int i = 0; i < n; ++i) ytmp[i] = y[i] + h * a21 * k1[i];
    eval_rhs(t + c2 * h, ytmp, k2);
    for (int i = 0; i < n; ++i) ytmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
    eval_rhs(t + c3 * h, ytmp, k3);
    for (int i = 0; i < n; ++i)
      ytmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    eval_rhs(t + c4 * h, ytmp, k4);
    for (int i = 0; i < n; ++i)
      ytmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    eval_rhs(t + c5 * h, ytmp, k5);
    for (int i = 0; i < n; ++i)
      ytmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
    eval_rhs(t + h, ytmp, k6);
    for (int i = 0; i < n; ++i)
      ynew[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
    eval_rhs(t + h, ynew, k7);

    double err_norm = 0.0;
    for (int i = 0; i < n; ++i) {
      double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
      double sc = options.abs_tol +
                  options.rel_tol * std::max(std::fabs(y[i]), std::fabs(ynew[i]));
      double q = e / sc;
      err_norm += q * q;
    }
    err_norm = std::sqrt(err_norm / n);

    if (err_norm <= 1.0) {
      t += h;
      y = ynew;
      k1 = k7;  // FSAL
      worst_err = std::max(worst_err, err_norm);
      if (post_step) {
        if (post_step(t, y.data())) eval_rhs(t, y, k1);
      }
      traj.push_node(t, y, k1);
    }

    double factor = err_norm > 0.0 ? 0.9 * std::pow(err_norm, -0.2) : 5.0;
    factor = std::clamp(factor, 0.2, 5.0);
    h *= factor;
    if (options.max_step > 0.0) h = std::min(h, options.max_step);
  }

  traj.set_max_error(worst_err);
  return traj;
}

}  // namespace focallab
