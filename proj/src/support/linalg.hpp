#pragma once

// Small dense linear algebra used throughout the library.  Matrices here are
// tiny (chart dimension <= ~12), so everything is plain row-major storage and
// O(n^3) algorithms with no blocking.

#include <cmath>
#include <initializer_list>
#include <vector>

#include "support/error.hpp"

namespace focallab {

using Vec = std::vector<double>;

struct Mat {
  int nr = 0, nc = 0;
  std::vector<double> a;

  Mat() = default;
  Mat(int r, int c) : nr(r), nc(c), a(static_cast<size_t>(r) * c, 0.0) {}

  static Mat identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  double& operator()(int i, int j) { return a[static_cast<size_t>(i) * nc + j]; }
  double operator()(int i, int j) const { return a[static_cast<size_t>(i) * nc + j]; }

  bool square() const { return nr == nc; }
};

Mat operator+(const Mat& x, const Mat& y);
Mat operator-(const Mat& x, const Mat& y);
Mat operator*(const Mat& x, const Mat& y);
Mat operator*(double s, const Mat& x);
Mat transpose(const Mat& x);
Vec mat_vec(const Mat& m, const Vec& v);
double max_abs(const Mat& m);
double frobenius_norm(const Mat& m);
Mat symmetrize(const Mat& m);
double asymmetry(const Mat& m);  // max |m_ij - m_ji|

double dot(const Vec& x, const Vec& y);
double norm2(const Vec& x);
Vec axpy(double a, const Vec& x, const Vec& y);  // a*x + y
Vec scale(double a, const Vec& x);

// Weighted inner product x^T g y for a symmetric positive-definite g.
double inner(const Mat& g, const Vec& x, const Vec& y);

// Cholesky factorization g = L L^T.  Fails with MetricNotPD when a pivot
// drops below pivot_floor * max diagonal (non-positive-definite input).
struct Cholesky {
  int n = 0;
  Mat l;
  void solve_in_place(double* x) const;        // solves g x = b
  Vec solve(const Vec& b) const;
  Mat solve_matrix(const Mat& b) const;        // columns solved independently
  double log_det() const;
};
Cholesky cholesky(const Mat& g, double pivot_floor = 1e-12);

// LU with partial pivoting; det() tracks the permutation sign.
struct Lu {
  int n = 0;
  Mat lu;
  std::vector<int> perm;
  int sign = 1;
  bool singular = false;
  double det() const;
  Vec solve(const Vec& b) const;
  Mat solve_matrix(const Mat& b) const;
};
Lu lu_factor(const Mat& m);
double determinant(const Mat& m);

// Symmetric eigendecomposition by cyclic Jacobi rotations.  Input is
// symmetrized before decomposition; asymmetry beyond asym_tol * max(1, |m|)
// raises NonSymmetric.  Eigenvalues ascend; vectors.col(i) is the i-th
// orthonormal eigenvector.
struct SymEigen {
  Vec values;
  Mat vectors;
};
SymEigen sym_eigen(const Mat& m, double asym_tol = 1e-8);

// Singular values of a (small) square matrix, ascending, via eigenvalues of
// m^T m.
Vec singular_values(const Mat& m);

// Modified Gram-Schmidt with respect to the bilinear form g (pass identity
// for the Euclidean case).  Vectors whose residual drops below
// drop_tol * original norm are rejected: in strict mode this raises
// DegenerateSpan, otherwise they are skipped.
std::vector<Vec> orthonormalize(const Mat& g, const std::vector<Vec>& vectors,
                                bool strict = true, double drop_tol = 1e-10);

// Deterministic orthonormal completion: orthonormalizes `seed` and extends it
// with coordinate directions to a full orthonormal basis of R^n under g.
std::vector<Vec> complete_orthonormal_basis(const Mat& g, const std::vector<Vec>& seed);

}  // namespace focallab
