#pragma once

// Unit-speed geodesics integrated together with a parallel orthonormal frame
// of the velocity's orthogonal complement.  State layout in the underlying
// trajectory: [x (n), v (n), E_1..E_{n-1} (n each)].  The frame is
// re-orthonormalized against the metric at every accepted step to remove
// transport drift.

#include <optional>
#include <vector>

#include "manifold/chart.hpp"
#include "manifold/curvature.hpp"
#include "numerics/ode.hpp"

namespace focallab {

struct GeodesicState {
  Vec x;                    // position
  Vec v;                    // velocity (unit speed up to integration error)
  std::vector<Vec> frame;   // parallel orthonormal basis of v-perp
};

class FramedGeodesic {
 public:
  FramedGeodesic(Chart chart, Trajectory traj)
      : chart_(std::move(chart)), traj_(std::move(traj)) {}

  const Chart& chart() const { return chart_; }
  int dim() const { return chart_.dim(); }
  double t_begin() const { return traj_.t_begin(); }
  double t_end() const { return traj_.t_end(); }
  const Trajectory& trajectory() const { return traj_; }

  GeodesicState at(double t) const;
  void position(double t, double* x) const;

  // Curvature operator R(t) in the parallel frame: entries <R(E_i, v)v, E_j>,
  // symmetrized.  This is the coefficient matrix of the Jacobi equation.
  Mat curvature_operator(double t) const;

 private:
  Chart chart_;
  Trajectory traj_;
};

struct GeodesicOptions {
  OdeOptions ode;
  // When set, overrides the deterministic coordinate-direction completion of
  // the initial frame.  Vectors must be g-orthonormal and orthogonal to v0.
  std::optional<std::vector<Vec>> initial_frame;
};

// Integrates from x0 in direction v0 (normalized internally) for time span
// [0, t_end].  Raises LeftChartDomain with the exit time when the trajectory
// leaves the chart's domain.
FramedGeodesic integrate_geodesic(const Chart& chart, const Vec& x0, const Vec& v0,
                                  double t_end, const GeodesicOptions& options = {});

}  // namespace focallab
