#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "numerics/ode.hpp"
#include "numerics/rootfind.hpp"
#include "support/json_writer.hpp"
#include "support/linalg.hpp"

using namespace focallab;

namespace {
constexpr double kPi = std::numbers::pi;

bool raises(ErrorCode code, const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code() == code;
  }
  return false;
}
}  // namespace

TEST_CASE("harmonic oscillator integrates to machine-level accuracy") {
  OdeRhs rhs = [](double, const double* y, double* dydt) {
    dydt[0] = y[1];
    dydt[1] = -y[0];
  };
  Trajectory traj = integrate_ode(rhs, {1.0, 0.0}, 0.0, 2.0 * kPi);
  // Node values against the closed form.
  for (size_t i = 0; i < traj.node_count(); ++i) {
    const double t = traj.node_time(i);
    CHECK(std::abs(traj.node_value(i)[0] - std::cos(t)) < 1e-8);
    CHECK(std::abs(traj.node_value(i)[1] + std::sin(t)) < 1e-8);
  }
  // Dense output between nodes.
  for (double t = 0.05; t < 2.0 * kPi; t += 0.37) {
    Vec y = traj.eval(t);
    CHECK(std::abs(y[0] - std::cos(t)) < 1e-7);
    CHECK(std::abs(y[1] + std::sin(t)) < 1e-7);
  }
}

TEST_CASE("dense output returns stored node states exactly") {
  OdeRhs rhs = [](double, const double* y, double* dydt) { dydt[0] = -y[0]; };
  Trajectory traj = integrate_ode(rhs, {1.0}, 0.0, 2.0);
  REQUIRE(traj.node_count() >= 3);
  for (size_t i = 0; i < traj.node_count(); ++i) {
    Vec y = traj.eval(traj.node_time(i));
    CHECK(y[0] == traj.node_value(i)[0]);
  }
  CHECK(std::abs(traj.eval(2.0)[0] - std::exp(-2.0)) < 1e-9);
}

TEST_CASE("max_step caps the node spacing") {
  OdeRhs rhs = [](double, const double* y, double* dydt) { dydt[0] = y[0]; };
  OdeOptions opt;
  opt.max_step = 0.01;
  Trajectory traj = integrate_ode(rhs, {1.0}, 0.0, 1.0, opt);
  for (size_t i = 1; i < traj.node_count(); ++i)
    CHECK(traj.node_time(i) - traj.node_time(i - 1) <= 0.01 + 1e-12);
}

TEST_CASE("near-singular growth is tracked by the error controller") {
  // y' = y^2 blows up at t = 1; integrating to 0.9 must stay accurate.
  OdeRhs rhs = [](double, const double* y, double* dydt) { dydt[0] = y[0] * y[0]; };
  Trajectory traj = integrate_ode(rhs, {1.0}, 0.0, 0.9);
  CHECK(std::abs(traj.eval(0.9)[0] - 10.0) < 1e-6);
  CHECK(std::abs(traj.eval(0.5)[0] - 2.0) < 1e-7);
}

TEST_CASE("post_step adjustments are folded back into the dense output") {
  // Rotation with a post-step renormalization to the unit circle: the
  // projected dynamics still follow (cos t, sin t).
  OdeRhs rhs = [](double, const double* y, double* dydt) {
    dydt[0] = -y[1];
    dydt[1] = y[0];
  };
  PostStep renorm = [](double, double* y) {
    const double n = std::hypot(y[0], y[1]);
    y[0] /= n;
    y[1] /= n;
    return true;
  };
  Trajectory traj = integrate_ode(rhs, {1.0, 0.0}, 0.0, 5.0, {}, renorm);
  for (size_t i = 0; i < traj.node_count(); ++i) {
    const Vec& y = traj.node_value(i);
    CHECK(std::abs(std::hypot(y[0], y[1]) - 1.0) < 1e-14);
  }
  Vec yend = traj.eval(5.0);
  CHECK(std::abs(yend[0] - std::cos(5.0)) < 1e-8);
  CHECK(std::abs(yend[1] - std::sin(5.0)) < 1e-8);
}

TEST_CASE("non-finite right-hand sides are rejected") {
  OdeRhs rhs = [](double, const double* y, double* dydt) { dydt[0] = std::sqrt(y[0]); };
  CHECK(raises(ErrorCode::NonFiniteRhs,
               [&] { integrate_ode(rhs, {-1.0}, 0.0, 1.0); }));
}

TEST_CASE("bracketed bisection finds roots to the requested width") {
  double r = bracketed_root([](double x) { return std::cos(x); }, 1.0, 2.0);
  CHECK(std::abs(r - kPi / 2.0) < 1e-11);
  r = bracketed_root([](double x) { return x * x * x - 2.0; }, 0.0, 2.0);
  CHECK(std::abs(r - std::cbrt(2.0)) < 1e-11);
  CHECK(raises(ErrorCode::NoSignChange, [] {
    bracketed_root([](double x) { return 1.0 + x * x; }, -1.0, 1.0);
  }));
}

TEST_CASE("golden-section minimization locates unimodal minima") {
  double m = minimize_scalar([](double x) { return (x - 0.3) * (x - 0.3); }, 0.0, 1.0);
  CHECK(std::abs(m - 0.3) < 1e-7);
  m = minimize_scalar([](double x) { return std::cosh(x - 1.2); }, -2.0, 4.0);
  CHECK(std::abs(m - 1.2) < 1e-7);
}

TEST_CASE("cholesky factorization solves SPD systems") {
  Mat g(3, 3);
  g(0, 0) = 4.0; g(0, 1) = 1.0; g(0, 2) = 0.5;
  g(1, 0) = 1.0; g(1, 1) = 3.0; g(1, 2) = -0.2;
  g(2, 0) = 0.5; g(2, 1) = -0.2; g(2, 2) = 2.0;
  Cholesky ch = cholesky(g);
  Vec x = {0.7, -1.1, 2.3};
  Vec b = mat_vec(g, x);
  Vec xs = ch.solve(b);
  for (int i = 0; i < 3; ++i) CHECK(std::abs(xs[i] - x[i]) < 1e-12);
  // log det against direct determinant
  CHECK(std::abs(std::exp(ch.log_det()) - determinant(g)) < 1e-10);

  Mat bad = Mat::identity(2);
  bad(1, 1) = -1.0;
  CHECK(raises(ErrorCode::MetricNotPD, [&] { cholesky(bad); }));
}

TEST_CASE("LU determinant tracks permutation signs") {
  Mat m(3, 3);
  // Rows ordered to force pivoting.
  m(0, 0) = 0.0; m(0, 1) = 2.0; m(0, 2) = 1.0;
  m(1, 0) = 1.0; m(1, 1) = 0.0; m(1, 2) = 0.0;
  m(2, 0) = 0.0; m(2, 1) = 0.0; m(2, 2) = 3.0;
  // det = expansion along the second row: -1 * det([[2,1],[0,3]]) = -6
  CHECK(std::abs(determinant(m) - (-6.0)) < 1e-12);
  Lu f = lu_factor(m);
  Vec b = {1.0, 2.0, 3.0};
  Vec x = f.solve(b);
  Vec back = mat_vec(m, x);
  for (int i = 0; i < 3; ++i) CHECK(std::abs(back[i] - b[i]) < 1e-12);
}

TEST_CASE("symmetric eigendecomposition is ordered and orthonormal") {
  // Build Q diag(-2, 1, 5) Q^T with a known rotation Q.
  const double c = std::cos(0.6), s = std::sin(0.6);
  Mat q = Mat::identity(3);
  q(0, 0) = c; q(0, 1) = -s; q(1, 0) = s; q(1, 1) = c;
  Mat d(3, 3);
  d(0, 0) = -2.0; d(1, 1) = 1.0; d(2, 2) = 5.0;
  Mat m = q * d * transpose(q);
  SymEigen e = sym_eigen(m);
  CHECK(std::abs(e.values[0] + 2.0) < 1e-12);
  CHECK(std::abs(e.values[1] - 1.0) < 1e-12);
  CHECK(std::abs(e.values[2] - 5.0) < 1e-12);
  // Vectors reconstruct the matrix.
  Mat vd(3, 3);
  for (int i = 0; i < 3; ++i) vd(i, i) = e.values[i];
  Mat rec = e.vectors * vd * transpose(e.vectors);
  CHECK(max_abs(rec - m) < 1e-12);
  // Orthonormality.
  Mat vtv = transpose(e.vectors) * e.vectors;
  CHECK(max_abs(vtv - Mat::identity(3)) < 1e-12);

  Mat asym(2, 2);
  asym(0, 1) = 1.0;
  CHECK(raises(ErrorCode::NonSymmetric, [&] { sym_eigen(asym); }));
}

TEST_CASE("singular values ascend and handle sign") {
  Mat m(2, 2);
  m(0, 0) = 3.0;
  m(1, 1) = -2.0;
  Vec s = singular_values(m);
  CHECK(std::abs(s[0] - 2.0) < 1e-12);
  CHECK(std::abs(s[1] - 3.0) < 1e-12);
}

TEST_CASE("orthonormalization respects the supplied bilinear form") {
  Mat g(2, 2);
  g(0, 0) = 2.0; g(1, 1) = 0.5;
  std::vector<Vec> basis = orthonormalize(g, {{1.0, 1.0}, {0.0, 1.0}});
  REQUIRE(basis.size() == 2);
  CHECK(std::abs(inner(g, basis[0], basis[0]) - 1.0) < 1e-12);
  CHECK(std::abs(inner(g, basis[1], basis[1]) - 1.0) < 1e-12);
  CHECK(std::abs(inner(g, basis[0], basis[1])) < 1e-12);

  CHECK(raises(ErrorCode::DegenerateSpan, [&] {
    orthonormalize(g, {{1.0, 0.0}, {2.0, 0.0}});
  }));
  // Non-strict mode drops the dependent vector instead.
  std::vector<Vec> dropped = orthonormalize(g, {{1.0, 0.0}, {2.0, 0.0}}, false);
  CHECK(dropped.size() == 1);
}

TEST_CASE("orthonormal completion spans the whole space") {
  Mat g(3, 3);
  g(0, 0) = 1.5; g(1, 1) = 2.0; g(2, 2) = 0.7;
  g(0, 1) = g(1, 0) = 0.2;
  std::vector<Vec> basis = complete_orthonormal_basis(g, {{0.3, -1.0, 0.4}});
  REQUIRE(basis.size() == 3);
  for (size_t i = 0; i < 3; ++i)
    for (size_t j = 0; j < 3; ++j)
      CHECK(std::abs(inner(g, basis[i], basis[j]) - (i == j ? 1.0 : 0.0)) < 1e-12);
}

TEST_CASE("floating point serialization uses 17 significant digits") {
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(-2.5) == "-2.5");
  // Round trip: parsing the text recovers the exact double.
  for (double v : {kPi, std::sqrt(2.0), 1.0 / 3.0, 1e-300, 123456.789}) {
    CHECK(std::stod(format_double(v)) == v);
  }
}

TEST_CASE("json writer produces deterministic ordered output") {
  JsonWriter w;
  w.begin_object();
  w.key("a");
  w.value(1.5);
  w.key("b");
  w.begin_array();
  w.value(true);
  w.value("x\"y");
  w.null_value();
  w.end_array();
  w.key("c");
  w.begin_object();
  w.end_object();
  w.end_object();
  CHECK(w.str() == "{\"a\":1.5,\"b\":[true,\"x\\\"y\",null],\"c\":{}}");
  CHECK(json_escape("tab\there") == "tab\\there");
}
