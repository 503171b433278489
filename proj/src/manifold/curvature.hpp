#pragma once

// Curvature of a chart: Christoffel symbols of the Levi-Civita connection,
// the Riemann tensor, sectional curvature, the directional curvature
// operator R(., v)v restricted to v-perp, and the intermediate Ricci
// curvature Ric_k.
//
// Conventions: R(X, Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z -
// nabla_[X,Y] Z, and sec(u, w) = <R(u, w)w, u> / (|u|^2 |w|^2 - <u,w>^2), so
// the round unit sphere has sec = +1.

#include <vector>

#include "manifold/chart.hpp"
#include "support/linalg.hpp"

namespace focallab {

// christoffel(c, x)[k](i, j) = Gamma^k_ij.
std::vector<Mat> christoffel(const Chart& chart, const double* x);

// Same, from purely finite-difference metric derivatives (cross-check path).
std::vector<Mat> christoffel_fd(const Chart& chart, const double* x);

struct RiemannTensor {
  int n = 0;
  std::vector<double> up;  // R^l_{ijk} at ((i*n + j)*n + k)*n + l

  double up_component(int i, int j, int k, int l) const {
    return up[((static_cast<size_t>(i) * n + j) * n + k) * n + l];
  }
  // <R(d_i, d_j) d_k, d_l>
  double lowered(const Mat& g, int i, int j, int k, int l) const;
  // R(u, w)z as a coordinate vector
  Vec apply(const Vec& u, const Vec& w, const Vec& z) const;
};

RiemannTensor riemann(const Chart& chart, const double* x);

double sectional_curvature(const Chart& chart, const double* x, const Vec& u, const Vec& w);

struct DirectionalOperator {
  Mat op;                  // (n-1) x (n-1), entries <R(E_i, v)v, E_j>, symmetrized
  std::vector<Vec> basis;  // orthonormal basis E_1..E_{n-1} of v-perp
};

// Deterministic basis: v is normalized, completed with coordinate directions.
DirectionalOperator directional_curvature_operator(const Chart& chart, const double* x,
                                                   const Vec& v);

// Curvature operator of v in a caller-supplied orthonormal frame of v-perp.
Mat curvature_operator_in_frame(const RiemannTensor& r, const Mat& g, const Vec& v,
                                const std::vector<Vec>& frame);

// Sum of the k smallest eigenvalues of the directional curvature operator
// (the minimum of sum_i sec(v, e_i)-type traces over orthonormal k-frames in
// v-perp, by the Ky Fan minimum principle).
double ric_k(const Chart& chart, const double* x, const Vec& v, int k);

}  // namespace focallab
