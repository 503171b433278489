#pragma once

#include <functional>

#include "support/error.hpp"

namespace focallab {

// Bisection on [a, b].  Requires a sign change (NoSignChange otherwise);
// converges to an interval of width tol and returns its midpoint.
double bracketed_root(const std::function<double(double)>& f, double a, double b,
                      double tol = 1e-12);

// Golden-section minimization of a unimodal f on [a, b] down to interval
// width tol; returns the abscissa of the minimum.
double minimize_scalar(const std::function<double(double)>& f, double a, double b,
                       double tol = 1e-10);

}  // namespace focallab
