#pragma once

// Adaptive explicit Runge-Kutta integration.  The stepper is the
// Dormand-Prince 5(4) embedded pair (Dormand & Prince 1980, J. Comp. Appl.
// Math. 6), FSAL, with step-size control on a mixed absolute/relative error
// norm.  Dense output is cubic Hermite interpolation on each accepted step,
// built from the stored node values and derivatives.

#include <functional>
#include <vector>

#include "support/error.hpp"
#include "support/linalg.hpp"

namespace focallab {

using OdeRhs = std::function<void(double t, const double* y, double* dydt)>;

struct OdeOptions {
  double rel_tol = 1e-9;
  double abs_tol = 1e-11;
  double initial_step = 0.0;       // 0 = choose automatically
  double max_step = 0.0;           // 0 = no cap
  long max_steps = 4000000;
};

// Piecewise-cubic trajectory over strictly increasing nodes.  Evaluation at a
// node time returns the stored node state exactly; between nodes the value is
// the Hermite interpolant of the bracketing step.
class Trajectory {
 public:
  Trajectory() = default;
  Trajectory(int dim) : dim_(dim) {}

  int dim() const { return dim_; }
  double t_begin() const { return times_.front(); }
  double t_end() const { return times_.back(); }
  size_t node_count() const { return times_.size(); }
  double node_time(size_t i) const { return times_[i]; }
  const Vec& node_value(size_t i) const { return values_[i]; }
  double max_error() const { return max_error_; }

  void eval(double t, double* out) const;
  Vec eval(double t) const;

  void push_node(double t, const Vec& y, const Vec& f);
  void set_max_error(double e) { max_error_ = e; }

 private:
  int dim_ = 0;
  std::vector<double> times_;
  std::vector<Vec> values_;
  std::vector<Vec> derivs_;
  double max_error_ = 0.0;
};

// Called after every accepted step with the node time and a mutable state;
// return true if the state was modified (forces a derivative recomputation).
using PostStep = std::function<bool(double t, double* y)>;

Trajectory integrate_ode(const OdeRhs& rhs, const Vec& y0, double t0, double t1,
                         const OdeOptions& options = {},
                         const PostStep& post_step = nullptr);

}  // namespace focallab
