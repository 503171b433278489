#pragma once

// Matrix Jacobi equation A'' + R(t) A = 0 along a framed geodesic, for
// Lagrangian families of normal Jacobi fields (A'^T A = A^T A' for all t).
//
// Families attached to a submanifold N use the initial data
//   A(0)  = diag(Id_m, 0)
//   A'(0) = diag(dV, Id_{n-1-m})
// in the adapted frame (tangent basis of N, then normals orthogonal to the
// geodesic direction), where dV : w -> (nabla_w V)^T is the tangential
// derivative of the unit normal field extending the direction.  dV is the
// negative of the curvature-convention shape operator <II(.,.), v>; with the
// inward normal of a round sphere of radius rho in flat space this gives
// A(t) = (1 - t/rho) Id, vanishing at the center as it must.

#include <optional>

#include "manifold/geodesic.hpp"
#include "submanifold/shape.hpp"

namespace focallab {

enum class FamilyKind { Submanifold, PointSource, Custom };

struct LagrangianFamily {
  FramedGeodesic geodesic;
  Mat a0;
  Mat a0prime;
  FamilyKind kind = FamilyKind::Custom;
};

// Family of the submanifold along the normal geodesic from F(u) in unit
// normal direction v.
LagrangianFamily lambda_n(const EmbeddedSubmanifold& sub, const double* u, const Vec& v,
                          double t_end, const OdeOptions& geo_ode = {});

// Point-source family A(0) = 0, A'(0) = Id along an existing geodesic.
LagrangianFamily point_source_family(FramedGeodesic geodesic);

// Arbitrary initial data; validates the Lagrangian condition
// (A0^T A0' symmetric within 1e-10) and that [A0; A0'] has full column rank.
LagrangianFamily custom_family(FramedGeodesic geodesic, Mat a0, Mat a0prime);

// Same family continued through negative time: the geodesic is reversed and
// A'(0) flips sign, so focal times of the reversed evolution are the |t| of
// focal points at t < 0 of the original.
LagrangianFamily reversed_family(const LagrangianFamily& family, double t_end,
                                 const OdeOptions& geo_ode = {});

class JacobiEvolution {
 public:
  JacobiEvolution(LagrangianFamily family, Trajectory traj, int d)
      : family_(std::move(family)), traj_(std::move(traj)), d_(d) {}

  const LagrangianFamily& family() const { return family_; }
  int matrix_dim() const { return d_; }
  double t_end() const { return traj_.t_end(); }

  Mat a(double t) const;
  Mat a_prime(double t) const;

  // max-abs entry of A'^T A - A^T A' (identically zero for exact Lagrangian
  // evolution; measures integration drift).
  double wronskian_defect(double t) const;

 private:
  LagrangianFamily family_;
  Trajectory traj_;
  int d_;
};

OdeOptions default_jacobi_ode();

JacobiEvolution evolve(LagrangianFamily family, double t_max,
                       const OdeOptions& ode = default_jacobi_ode());

}  // namespace focallab
