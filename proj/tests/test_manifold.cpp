#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "manifold/chart.hpp"
#include "manifold/curvature.hpp"
#include "manifold/geodesic.hpp"
#include "scenarios/catalog.hpp"

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

// Anisotropic but analytic metric for finite-difference cross-checks:
// g = diag(1 + x0^2, 1 + exp(x1)) in two dimensions.
Chart diag_chart() {
  return Chart(2, "diag", [](const double* x, double* g) {
    g[0] = 1.0 + x[0] * x[0];
    g[1] = g[2] = 0.0;
    g[3] = 1.0 + std::exp(x[1]);
  });
}
}  // namespace

TEST_CASE("built-in charts evaluate the conformal metric") {
  Chart sph = sphere_chart(2, 1.0, "s2");
  const double x[2] = {0.3, -0.4};
  const double phi = 2.0 / (1.0 + 0.3 * 0.3 + 0.4 * 0.4);
  Mat g = sph.metric(x);
  CHECK(std::abs(g(0, 0) - phi * phi) < 1e-14);
  CHECK(std::abs(g(1, 1) - phi * phi) < 1e-14);
  CHECK(std::abs(g(0, 1)) < 1e-15);

  Chart hyp = hyperbolic_chart(2, "h2");
  const double y[2] = {0.5, 0.0};
  const double psi = 2.0 / (1.0 - 0.25);
  Mat gh = hyp.metric(y);
  CHECK(std::abs(gh(0, 0) - psi * psi) < 1e-14);
  // Poincare ball domain excludes the boundary sphere.
  const double outside[2] = {1.1, 0.0};
  CHECK(hyp.in_domain(y));
  CHECK(!hyp.in_domain(outside));

  Chart flat = euclidean_chart(3, "e3");
  const double z[3] = {5.0, -2.0, 9.0};
  CHECK(max_abs(flat.metric(z) - Mat::identity(3)) < 1e-15);
}

TEST_CASE("analytic metric derivatives agree with finite differences") {
  Chart sph = sphere_chart(3, 1.0, "s3");
  REQUIRE(sph.has_analytic_d1());
  REQUIRE(sph.has_analytic_d2());
  const double x[3] = {0.4, -0.2, 0.7};
  std::vector<double> da, dfd;
  sph.metric_d1(x, da);
  sph.metric_d1_fd(x, dfd);
  REQUIRE(da.size() == dfd.size());
  for (size_t i = 0; i < da.size(); ++i) CHECK(std::abs(da[i] - dfd[i]) < 1e-8);
}

TEST_CASE("christoffel symbols match the finite-difference path") {
  Chart sph = sphere_chart(2, 1.0, "s2");
  const double x[2] = {0.6, 0.1};
  auto ga = christoffel(sph, x);
  auto gf = christoffel_fd(sph, x);
  for (int k = 0; k < 2; ++k) CHECK(max_abs(ga[k] - gf[k]) < 1e-7);

  // Purely finite-difference chart: symbols of g = diag(1+x0^2, 1+e^{x1})
  // against the closed form Gamma^k_ij = (di g_jk + dj g_ik - dk g_ij)/(2 g_kk).
  Chart d = diag_chart();
  const double y[2] = {0.8, -0.3};
  auto gd = christoffel(d, y);
  const double g00 = 1.0 + y[0] * y[0];
  const double g11 = 1.0 + std::exp(y[1]);
  CHECK(std::abs(gd[0](0, 0) - y[0] / g00) < 1e-8);
  CHECK(std::abs(gd[1](1, 1) - 0.5 * std::exp(y[1]) / g11) < 1e-8);
  CHECK(std::abs(gd[0](1, 1) - 0.0) < 1e-8);
  CHECK(std::abs(gd[1](0, 0) - 0.0) < 1e-8);
  CHECK(std::abs(gd[0](0, 1)) < 1e-8);
  CHECK(std::abs(gd[1](0, 1)) < 1e-8);
}

TEST_CASE("riemann tensor has the standard symmetries") {
  Chart sph = sphere_chart(3, 1.0, "s3");
  const double x[3] = {0.3, 0.5, -0.2};
  RiemannTensor r = riemann(sph, x);
  Mat g = sph.metric(x);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l) {
          const double rijkl = r.lowered(g, i, j, k, l);
          CHECK(std::abs(rijkl + r.lowered(g, j, i, k, l)) < 1e-7);   // skew in (i,j)
          CHECK(std::abs(rijkl + r.lowered(g, i, j, l, k)) < 1e-7);   // skew in (k,l)
          CHECK(std::abs(rijkl - r.lowered(g, k, l, i, j)) < 1e-7);   // pair symmetry
          const double bianchi = rijkl + r.lowered(g, j, k, i, l) + r.lowered(g, k, i, j, l);
          CHECK(std::abs(bianchi) < 1e-7);
        }
}

TEST_CASE("sectional curvature of the model spaces") {
  const double x2[2] = {0.35, -0.15};
  const double x3[3] = {0.35, -0.15, 0.2};
  Vec u = {1.0, 0.4, -0.2}, w = {0.3, -1.0, 0.5};
  Vec u2 = {1.0, 0.4}, w2 = {0.3, -1.0};

  CHECK(std::abs(sectional_curvature(euclidean_chart(3, "e"), x3, u, w)) < 1e-9);
  CHECK(std::abs(sectional_curvature(sphere_chart(3, 1.0, "s"), x3, u, w) - 1.0) < 1e-8);
  CHECK(std::abs(sectional_curvature(sphere_chart(2, 0.5, "sh"), x2, u2, w2) - 4.0) < 1e-7);
  const double y3[3] = {0.2, 0.1, -0.3};
  CHECK(std::abs(sectional_curvature(hyperbolic_chart(3, "h"), y3, u, w) + 1.0) < 1e-8);

  // Invariance under basis change of the plane.
  Chart s = sphere_chart(3, 1.0, "s");
  Vec ua = {2.0, 0.8, -0.4};            // scaled u
  Vec wa = {1.3, -0.6, 0.3};            // u-mixed w
  const double k1 = sectional_curvature(s, x3, u, w);
  const double k2 = sectional_curvature(s, x3, ua, wa);
  CHECK(std::abs(k1 - k2) < 1e-8);

  CHECK(raises(ErrorCode::DegeneratePlane, [&] {
    sectional_curvature(s, x3, u, scale(2.0, u));
  }));
}

TEST_CASE("partial curvature traces are eigenvalue sums") {
  Chart s = sphere_chart(3, 1.0, "s");
  const double x[3] = {0.1, 0.2, 0.3};
  Vec v = {0.5, -1.0, 0.25};
  CHECK(std::abs(ric_k(s, x, v, 1) - 1.0) < 1e-8);
  CHECK(std::abs(ric_k(s, x, v, 2) - 2.0) < 1e-8);
  CHECK(raises(ErrorCode::KOutOfRange, [&] { ric_k(s, x, v, 3); }));
  CHECK(raises(ErrorCode::InvalidArgument, [&] { ric_k(s, x, {0.0, 0.0, 0.0}, 1); }));

  DirectionalOperator d = directional_curvature_operator(s, x, v);
  REQUIRE(d.op.nr == 2);
  CHECK(max_abs(d.op - Mat::identity(2)) < 1e-8);
  // Basis is orthonormal and orthogonal to v under the metric.
  Mat g = s.metric(x);
  for (const Vec& e : d.basis) {
    CHECK(std::abs(inner(g, e, e) - 1.0) < 1e-10);
    CHECK(std::abs(inner(g, e, v) / std::sqrt(inner(g, v, v))) < 1e-10);
  }
}

TEST_CASE("geodesics of the flat chart are straight lines") {
  Chart flat = euclidean_chart(2, "e2");
  FramedGeodesic geo = integrate_geodesic(flat, {1.0, 2.0}, {0.0, 5.0}, 4.0);
  // Direction is normalized internally.
  GeodesicState st = geo.at(3.0);
  CHECK(std::abs(st.x[0] - 1.0) < 1e-12);
  CHECK(std::abs(st.x[1] - 5.0) < 1e-12);
  CHECK(std::abs(st.v[0]) < 1e-12);
  CHECK(std::abs(st.v[1] - 1.0) < 1e-12);
}

TEST_CASE("great circles close up at arc length 2 pi") {
  // Launch along the unit coordinate circle of the stereographic chart: that
  // circle is a unit-speed great circle of the sphere.
  Chart sph = sphere_chart(2, 1.0, "s2");
  FramedGeodesic geo = integrate_geodesic(sph, {1.0, 0.0}, {0.0, 1.0}, 2.0 * kPi);
  for (double t : {0.5, 1.5, kPi, 4.0, 2.0 * kPi}) {
    GeodesicState st = geo.at(t);
    CHECK(std::abs(st.x[0] - std::cos(t)) < 1e-8);
    CHECK(std::abs(st.x[1] - std::sin(t)) < 1e-8);
    // Unit speed in the metric.
    Mat g = sph.metric(st.x.data());
    CHECK(std::abs(inner(g, st.v, st.v) - 1.0) < 1e-9);
  }
}

TEST_CASE("radial geodesics of the hyperbolic ball follow tanh(t/2)") {
  Chart hyp = hyperbolic_chart(3, "h3");
  FramedGeodesic geo = integrate_geodesic(hyp, {0.0, 0.0, 0.0}, {1.0, 0.0, 0.0}, 3.0);
  for (double t : {0.5, 1.0, 2.0, 3.0}) {
    GeodesicState st = geo.at(t);
    CHECK(std::abs(st.x[0] - std::tanh(t / 2.0)) < 1e-9);
    CHECK(std::abs(st.x[1]) < 1e-12);
    CHECK(std::abs(st.x[2]) < 1e-12);
  }
}

TEST_CASE("frame transport keeps the metric gram matrix") {
  Chart sph = sphere_chart(3, 1.0, "s3");
  FramedGeodesic geo = integrate_geodesic(sph, {1.0, 0.0, 0.0}, {0.0, 1.0, 0.3}, 3.0);
  for (double t : {0.0, 0.7, 1.9, 3.0}) {
    GeodesicState st = geo.at(t);
    REQUIRE(st.frame.size() == 2);
    Mat g = geo.chart().metric(st.x.data());
    for (size_t i = 0; i < st.frame.size(); ++i) {
      CHECK(std::abs(inner(g, st.frame[i], st.v)) < 1e-7);
      for (size_t j = 0; j < st.frame.size(); ++j)
        CHECK(std::abs(inner(g, st.frame[i], st.frame[j]) - (i == j ? 1.0 : 0.0)) < 1e-7);
    }
  }
}

TEST_CASE("curvature operator along a sphere geodesic is the identity") {
  Chart sph = sphere_chart(3, 1.0, "s3");
  FramedGeodesic geo = integrate_geodesic(sph, {1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, 2.0);
  for (double t : {0.0, 0.5, 1.3, 2.0}) {
    Mat r = geo.curvature_operator(t);
    CHECK(max_abs(r - Mat::identity(2)) < 1e-7);
  }
}

TEST_CASE("leaving the chart domain is reported with the exit time") {
  Chart strip(2, "strip", [](const double*, double* g) {
    g[0] = 1.0; g[1] = g[2] = 0.0; g[3] = 1.0;
  });
  strip.with_domain([](const double* x) { return x[0] < 0.5; });
  CHECK(raises(ErrorCode::LeftChartDomain, [&] {
    integrate_geodesic(strip, {0.0, 0.0}, {1.0, 0.0}, 2.0);
  }));
}

TEST_CASE("caller-supplied initial frames are honored") {
  Chart flat = euclidean_chart(3, "e3");
  GeodesicOptions opt;
  opt.initial_frame = std::vector<Vec>{{0.0, 0.0, 1.0}, {0.0, 1.0, 0.0}};
  FramedGeodesic geo = integrate_geodesic(flat, {0.0, 0.0, 0.0}, {1.0, 0.0, 0.0}, 1.0, opt);
  GeodesicState st = geo.at(0.0);
  CHECK(std::abs(st.frame[0][2] - 1.0) < 1e-14);
  CHECK(std::abs(st.frame[1][1] - 1.0) < 1e-14);
  // Parallel transport in flat space is constant.
  st = geo.at(1.0);
  CHECK(std::abs(st.frame[0][2] - 1.0) < 1e-10);
  CHECK(std::abs(st.frame[1][1] - 1.0) < 1e-10);
}
