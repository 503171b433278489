#pragma once

// Focal point detection along a Jacobi evolution, and the focal radius of a
// submanifold estimated over a deterministic sample of footpoints and unit
// normals.

#include <optional>

#include "jacobi/family.hpp"

namespace focallab {

struct FocalPoint {
  double t;
  int multiplicity;
};

struct FocalReport {
  std::optional<double> first_focal_time;
  std::vector<FocalPoint> focal_points;  // sorted by t
  int total_multiplicity = 0;
  double t_max = 0.0;
};

struct FocalOptions {
  double det_tol = 1e-6;   // singular-value cut for multiplicity counting
  double merge_tol = 1e-7; // roots closer than this are the same focal point
};

// Scans [t_lo, t_max] on a uniform grid of max(200, ceil(50 t_max)) intervals
// for zeros of det A(t): sign changes are refined by bisection, and every
// interior local minimum of the smallest singular value is refined by
// golden-section search and accepted when it dips below 1e-8 max(1, |A|).
// t_lo is 1e-4 when A(0) is singular by construction (the trivial root of
// point-source and higher-codimension families), 0 otherwise.
FocalReport focal_report(const JacobiEvolution& evol, double t_max,
                         const FocalOptions& options = {});

// Convenience: evolve the family to t_max and return the first focal time.
std::optional<double> first_focal_along(LagrangianFamily family, double t_max,
                                        const OdeOptions& jac_ode = default_jacobi_ode(),
                                        const FocalOptions& options = {});

struct FocalSample {
  Vec u;                 // parameter point
  Vec normal;            // unit normal at F(u), chart coordinates
  std::optional<double> first_focal;
};

struct FocalRadiusResult {
  std::optional<double> radius;  // min over samples; empty if nothing within t_max
  int argmin = -1;               // index into samples
  std::vector<FocalSample> samples;
  double t_max = 0.0;
};

// Deterministic antipodally-symmetric set of unit normal directions at a
// footpoint: both signs of the normal in codimension one, a uniform great
// circle (codimension two) or a sign-symmetrized Fibonacci-style design of
// `count` directions in higher codimension, expressed in chart coordinates.
std::vector<Vec> normal_directions(const NormalFrame& frame, const Mat& g, int count);

// Focal radius over parameter_grid(sub, grid_counts) x normal_directions.
// Samples are evaluated in parallel (jobs threads) and assembled in index
// order, so the result is independent of the thread count.
FocalRadiusResult focal_radius(const EmbeddedSubmanifold& sub,
                               const std::vector<int>& grid_counts, int normals_per_point,
                               double t_max, int jobs = 1,
                               const OdeOptions& geo_ode = {},
                               const OdeOptions& jac_ode = default_jacobi_ode(),
                               const FocalOptions& options = {});

// Riccati operator S(t) = A'(t) A(t)^{-1}, symmetrized.  Raises SingularAtT
// when A(t) is singular to working precision.
Mat riccati(const JacobiEvolution& evol, double t);

// Sum of the k smallest eigenvalues of riccati(evol, t).
double min_trace_k(const JacobiEvolution& evol, double t, int k);

}  // namespace focallab
