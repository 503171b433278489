#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "comparison/model.hpp"
#include "comparison/verify.hpp"
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

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> out;
  for (int i = 0; i < n; ++i) out.push_back(lo + (hi - lo) * i / (n - 1));
  return out;
}

FramedGeodesic sphere3_probe(double span) {
  return integrate_geodesic(sphere_chart(3, 1.0, "s3"), {1.0, 0.0, 0.0}, {0.0, 1.0, 0.0},
                            span);
}

EmbeddedSubmanifold plane_circle(double r) {
  auto embed = [r](const double* u, double* x) {
    x[0] = r * std::cos(u[0]);
    x[1] = r * std::sin(u[0]);
  };
  ParamDomain d;
  d.lo = {0.0};
  d.hi = {2.0 * kPi};
  d.periodic = {1};
  return EmbeddedSubmanifold(euclidean_chart(2, "e2"), 1, "circle", embed, d);
}
}  // namespace

TEST_CASE("generalized trigonometric amplitudes") {
  for (double t : {0.3, 1.0, 2.4}) {
    CHECK(std::abs(sn_kappa(1.0, t) - std::sin(t)) < 1e-15);
    CHECK(std::abs(cn_kappa(1.0, t) - std::cos(t)) < 1e-15);
    CHECK(std::abs(sn_kappa(0.0, t) - t) < 1e-15);
    CHECK(std::abs(cn_kappa(0.0, t) - 1.0) < 1e-15);
    CHECK(std::abs(sn_kappa(-1.0, t) - std::sinh(t)) < 1e-12);
    CHECK(std::abs(cn_kappa(-1.0, t) - std::cosh(t)) < 1e-12);
    // General curvature scales the argument by sqrt(kappa).
    CHECK(std::abs(sn_kappa(4.0, t) - std::sin(2.0 * t) / 2.0) < 1e-15);
    CHECK(std::abs(ct_kappa(1.0, t) - std::cos(t) / std::sin(t)) < 1e-12);
    CHECK(std::abs(ct_kappa(0.0, t) - 1.0 / t) < 1e-15);
    CHECK(std::abs(ct_kappa(-1.0, t) - std::cosh(t) / std::sinh(t)) < 1e-12);
  }
  CHECK(raises(ErrorCode::PoleAtT, [] { ct_kappa(1.0, 0.0); }));
  CHECK(raises(ErrorCode::PoleAtT, [] { ct_kappa(0.0, 0.0); }));
  // Floating-point pi is not an exact zero of sine, so near the pole the
  // cotangent is merely enormous rather than raising.
  CHECK(std::abs(ct_kappa(1.0, kPi)) > 1e15);
}

TEST_CASE("scalar comparison flow and its blow-up times") {
  // Positive curvature: matching cot(t0) reproduces cot(t0 + s) and blows up
  // when t0 + s reaches pi (shift identity for the cotangent).
  const double t0 = 0.4;
  ModelRiccati m1 = model_riccati(1.0, std::cos(t0) / std::sin(t0));
  CHECK(std::abs(m1.blow_up - (kPi - t0)) < 1e-12);
  for (double s : {0.2, 1.0, 2.2})
    CHECK(std::abs(m1.value(s) - std::cos(t0 + s) / std::sin(t0 + s)) < 1e-10);
  CHECK(raises(ErrorCode::BeyondBlowup, [&] { m1.value(m1.blow_up + 0.1); }));

  // Flat: f(s) = lambda0 / (1 + lambda0 s); finite-time pole only for
  // negative initial values.
  ModelRiccati m0 = model_riccati(0.0, -0.5);
  CHECK(std::abs(m0.blow_up - 2.0) < 1e-12);
  CHECK(std::abs(m0.value(1.0) + 1.0) < 1e-12);
  CHECK(std::isinf(model_riccati(0.0, 0.5).blow_up));

  // Negative curvature: global solutions above -sqrt(|kappa|), finite pole
  // below it at atanh(sqrt(|kappa|)/|lambda0|)/sqrt(|kappa|).
  ModelRiccati mneg = model_riccati(-1.0, -2.0);
  CHECK(std::abs(mneg.blow_up - std::atanh(0.5)) < 1e-12);
  CHECK(std::isinf(model_riccati(-1.0, -0.5).blow_up));
  CHECK(std::isinf(model_riccati(-1.0, 3.0).blow_up));
  // Closed form check: coth matching.
  ModelRiccati mh = model_riccati(-1.0, std::cosh(0.3) / std::sinh(0.3));
  for (double s : {0.5, 1.5})
    CHECK(std::abs(mh.value(s) - std::cosh(0.3 + s) / std::sinh(0.3 + s)) < 1e-10);
}

TEST_CASE("trace comparison is an equality for round-sphere point sources") {
  JacobiEvolution evol = evolve(point_source_family(sphere3_probe(3.0)), 2.9);
  CurvatureHypothesis hyp{1.0, 2};
  VerifierReport rep = verify_comparison_lemma(evol, hyp, linspace(0.1, 2.8, 25));
  CHECK(rep.pass);
  REQUIRE(!rep.samples.empty());
  for (const CheckSample& s : rep.samples) CHECK(std::abs(s.lhs - s.rhs) < 1e-6);
  // lambda0 is published for the matched first grid point.
  bool has_lambda0 = false;
  for (const auto& [k, v] : rep.quantities)
    if (k == "lambda0") {
      has_lambda0 = true;
      CHECK(std::abs(v - std::cos(0.1) / std::sin(0.1)) < 1e-6);
    }
  CHECK(has_lambda0);
}

TEST_CASE("trace comparison is strict for curvature above the bound") {
  // Flat evolution measured against a curvature -1 model: the flat trace
  // k/t sits strictly below the coth-type model solution.
  FramedGeodesic geo = integrate_geodesic(euclidean_chart(3, "e3"), {0.0, 0.0, 0.0},
                                          {1.0, 0.0, 0.0}, 3.0);
  JacobiEvolution evol = evolve(point_source_family(geo), 3.0);
  CurvatureHypothesis hyp{-1.0, 2};
  VerifierReport rep = verify_comparison_lemma(evol, hyp, linspace(0.1, 2.9, 25));
  CHECK(rep.pass);
  REQUIRE(rep.worst >= 0);
  // Strict inequality: even the worst margin clears the tolerance.
  CHECK(rep.samples[size_t(rep.worst)].margin > rep.tolerance);
}

TEST_CASE("comparison verification rejects violated hypotheses") {
  FramedGeodesic geo = integrate_geodesic(euclidean_chart(3, "e3"), {0.0, 0.0, 0.0},
                                          {1.0, 0.0, 0.0}, 3.0);
  JacobiEvolution evol = evolve(point_source_family(geo), 3.0);
  CurvatureHypothesis hyp{1.0, 2};  // flat space does not have curvature >= 1
  CHECK(raises(ErrorCode::HypothesisViolated, [&] {
    verify_comparison_lemma(evol, hyp, linspace(0.1, 2.9, 10));
  }));
}

TEST_CASE("comparison verification validates its grid") {
  JacobiEvolution evol = evolve(point_source_family(sphere3_probe(2.0)), 2.0);
  CurvatureHypothesis hyp{1.0, 1};
  CHECK(raises(ErrorCode::InvalidArgument, [&] {
    verify_comparison_lemma(evol, hyp, {0.0, 0.5, 1.0});  // grid must start past 0
  }));
  CHECK(raises(ErrorCode::InvalidArgument, [&] {
    verify_comparison_lemma(evol, hyp, {0.5});  // single point
  }));
  CHECK(raises(ErrorCode::InvalidArgument, [&] {
    verify_comparison_lemma(evol, hyp, {0.5, 0.4});  // not increasing
  }));

  // Matching at a point where the evolution itself is singular: the flat
  // family A(t) = 1 - t vanishes exactly at t = 1.
  FramedGeodesic geo = integrate_geodesic(euclidean_chart(2, "e2"), {0.0, 0.0}, {1.0, 0.0},
                                          2.0);
  Mat a0 = Mat::identity(1);
  Mat s0(1, 1);
  s0(0, 0) = -1.0;
  JacobiEvolution sing = evolve(custom_family(geo, a0, s0), 2.0);
  CHECK(raises(ErrorCode::SingularGrid, [&] {
    verify_comparison_lemma(sing, CurvatureHypothesis{0.0, 1}, {1.0, 1.5});
  }));
}

TEST_CASE("shape bound holds with equality for the unit plane circle") {
  EmbeddedSubmanifold sub = plane_circle(1.0);
  CurvatureHypothesis hyp{0.0, 1};
  SampleSpec spec{{8}, 2, 1};
  VerifierReport rep = verify_shape_bound(sub, hyp, spec, 5.0);
  CHECK(rep.pass);
  REQUIRE(rep.worst >= 0);
  // Sharp case: |S| = 1 = 1/focal radius, margin collapses to the tolerance.
  CHECK(std::abs(rep.samples[size_t(rep.worst)].margin - rep.tolerance) < 1e-5);
}

TEST_CASE("focal window bound passes on a great circle") {
  const Scenario& sc = find_scenario("equator_S1_in_S2");
  Params params;
  for (const auto& [k, v] : sc.defaults) params[k] = v;
  EmbeddedSubmanifold sub = sc.make_submanifold(params);
  CurvatureHypothesis hyp = sc.hypothesis;
  SampleSpec spec{{6}, 2, 1};
  VerifierReport rep = verify_focal_pi_over_2(sub, hyp, spec);
  CHECK(rep.pass);
  CHECK(rep.error.empty());
  CHECK(raises(ErrorCode::InvalidArgument, [&] {
    verify_focal_pi_over_2(sub, CurvatureHypothesis{0.0, 1}, spec);
  }));
}

TEST_CASE("flat-strip checks accept closed geodesics and reject curved ones") {
  const Scenario& line = find_scenario("circle_in_torus");
  Params params;
  for (const auto& [k, v] : line.defaults) params[k] = v;
  EmbeddedSubmanifold sub = line.make_submanifold(params);
  SampleSpec spec{{5}, 2, 1};
  VerifierReport rep = soul_checks(sub, 12.0, spec);
  CHECK(rep.pass);
  CHECK(rep.error.empty());

  // A plane circle has a focal point at its radius, so the infinite-focal
  // precondition fails.
  EmbeddedSubmanifold circle = plane_circle(1.0);
  CHECK(raises(ErrorCode::NotInfiniteFocal, [&] {
    soul_checks(circle, 12.0, spec);
  }));
}

TEST_CASE("evolutions match the closed-form matrices or fail visibly") {
  FramedGeodesic geo = integrate_geodesic(euclidean_chart(3, "e3"), {0.0, 0.0, 0.0},
                                          {0.0, 1.0, 0.0}, 3.0);
  Mat s0(2, 2);
  s0(0, 0) = 0.25; s0(1, 1) = -0.4;
  LagrangianFamily fam = custom_family(geo, Mat::identity(2), s0);
  JacobiEvolution evol = evolve(fam, 3.0);
  std::vector<double> times = linspace(0.25, 3.0, 12);
  VerifierReport good = verify_model_jacobi(evol, 0.0, times);
  CHECK(good.pass);
  // Claiming the wrong curvature makes the discrepancy visible.
  VerifierReport bad = verify_model_jacobi(evol, 1.0, times);
  CHECK(!bad.pass);

  VerifierReport wr = verify_wronskian(evol, times);
  CHECK(wr.pass);
  for (const CheckSample& s : wr.samples) CHECK(s.lhs <= 1e-8);
}

TEST_CASE("tube volumes reproduce annulus areas") {
  EmbeddedSubmanifold sub = plane_circle(2.0);
  TubeQuadrature quad;
  quad.param_counts = {16};
  quad.radial_nodes = 32;
  TubeVolume tv = tube_volume(sub, 0.5, quad);
  const double oracle = kPi * (2.5 * 2.5 - 1.5 * 1.5);  // 4 pi r w
  CHECK(std::abs(tv.value - oracle) < 0.01 * oracle);
  CHECK(!tv.focal_inside);
  CHECK(tv.error_estimate < 0.01 * oracle);

  // Radius past the center: the focal flag trips but the value stays finite.
  TubeVolume wide = tube_volume(sub, 2.5, quad);
  CHECK(wide.focal_inside);
  CHECK(std::isfinite(wide.value));

  CHECK(raises(ErrorCode::InvalidArgument, [&] { tube_volume(sub, -1.0, quad); }));
}

TEST_CASE("conjugate radius of round spheres scales with the radius") {
  ConjugateRadiusResult half =
      base_conjugate_radius(sphere_chart(2, 0.5, "sh"), {0.5, 0.0}, 8, 2.5);
  REQUIRE(half.radius.has_value());
  CHECK(std::abs(*half.radius - kPi / 2.0) < 1e-6);
  CHECK(half.argmin >= 0);

  ConjugateRadiusResult unit =
      base_conjugate_radius(sphere_chart(2, 1.0, "s2"), {1.0, 0.0}, 8, 3.5);
  REQUIRE(unit.radius.has_value());
  CHECK(std::abs(*unit.radius - kPi) < 1e-6);

  // Flat space has no conjugate points at any distance.
  ConjugateRadiusResult flat =
      base_conjugate_radius(euclidean_chart(2, "e2"), {0.0, 0.0}, 8, 6.0);
  CHECK(!flat.radius.has_value());
  CHECK(flat.samples.size() == 8);
}

TEST_CASE("quadrature rules integrate polynomials exactly") {
  auto rule = gauss_legendre(5);
  REQUIRE(rule.size() == 5);
  double wsum = 0.0, x8 = 0.0, x9 = 0.0;
  for (auto [x, w] : rule) {
    wsum += w;
    x8 += w * std::pow(x, 8);
    x9 += w * std::pow(x, 9);
  }
  CHECK(std::abs(wsum - 2.0) < 1e-14);
  CHECK(std::abs(x8 - 2.0 / 9.0) < 1e-14);  // exact through degree 9
  CHECK(std::abs(x9) < 1e-14);
  for (size_t i = 1; i < rule.size(); ++i) CHECK(rule[i].first > rule[i - 1].first);
  CHECK(raises(ErrorCode::InvalidArgument, [] { gauss_legendre(0); }));
}
