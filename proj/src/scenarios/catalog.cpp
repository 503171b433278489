#include "scenarios/catalog.hpp"

#include <cmath>
#include <cstring>

#include "support/error.hpp"

namespace focallab {

namespace {

constexpr double kPi = 3.14159265358979323846;

// ---------------------------------------------------------------------------
// Chart builders
// ---------------------------------------------------------------------------

void zero_fill(double* p, int count) { std::memset(p, 0, sizeof(double) * count); }

}  // namespace

Chart euclidean_chart(int dim, std::string name) {
  Chart chart(dim, std::move(name), [dim](const double*, double* g) {
    zero_fill(g, dim * dim);
    for (int i = 0; i < dim; ++i) g[i * dim + i] = 1.0;
  });
  chart.with_derivatives([dim](const double*, double* dg) { zero_fill(dg, dim * dim * dim); },
                         [dim](const double*, double* ddg) {
                           zero_fill(ddg, dim * dim * dim * dim);
                         });
  return chart;
}

// Stereographic chart of the round sphere of the given radius:
// g = phi(x)^2 * Id with phi = 2 r^2 / (r^2 + |x|^2).  Constant sectional
// curvature 1/r^2; the chart covers the sphere minus one pole, with the
// equator sitting at |x| = r.
Chart sphere_chart(int dim, double radius, std::string name) {
  if (radius <= 0.0) raise(ErrorCode::BadConfig, "sphere radius must be positive");
  const double r2 = radius * radius;
  auto norm2 = [dim](const double* x) {
    double s = 0.0;
    for (int i = 0; i < dim; ++i) s += x[i] * x[i];
    return s;
  };
  auto phi = [r2, norm2](const double* x) { return 2.0 * r2 / (r2 + norm2(x)); };
  auto grad = [dim, r2, norm2](const double* x, double* out) {
    const double psi = r2 + norm2(x);
    for (int k = 0; k < dim; ++k) out[k] = -4.0 * r2 * x[k] / (psi * psi);
  };
  auto hess = [dim, r2, norm2](const double* x, double* out) {
    const double psi = r2 + norm2(x);
    const double p2 = psi * psi, p3 = p2 * psi;
    for (int k = 0; k < dim; ++k)
      for (int l = 0; l < dim; ++l)
        out[k * dim + l] =
            (k == l ? -4.0 * r2 / p2 : 0.0) + 16.0 * r2 * x[k] * x[l] / p3;
  };
  return conformal_chart(dim, std::move(name), phi, grad, hess);
}

// Poincare ball: g = phi^2 * Id with phi = 2 / (1 - |x|^2), constant
// sectional curvature -1, domain |x| < 1.
Chart hyperbolic_chart(int dim, std::string name) {
  auto norm2 = [dim](const double* x) {
    double s = 0.0;
    for (int i = 0; i < dim; ++i) s += x[i] * x[i];
    return s;
  };
  auto phi = [norm2](const double* x) { return 2.0 / (1.0 - norm2(x)); };
  auto grad = [dim, norm2](const double* x, double* out) {
    const double psi = 1.0 - norm2(x);
    for (int k = 0; k < dim; ++k) out[k] = 4.0 * x[k] / (psi * psi);
  };
  auto hess = [dim, norm2](const double* x, double* out) {
    const double psi = 1.0 - norm2(x);
    const double p2 = psi * psi, p3 = p2 * psi;
    for (int k = 0; k < dim; ++k)
      for (int l = 0; l < dim; ++l)
        out[k * dim + l] = (k == l ? 4.0 / p2 : 0.0) + 16.0 * x[k] * x[l] / p3;
  };
  Chart chart = conformal_chart(dim, std::move(name), phi, grad, hess);
  chart.with_domain([norm2](const double* x) { return norm2(x) < 1.0; });
  return chart;
}

namespace {

// ---------------------------------------------------------------------------
// Embedding helpers
// ---------------------------------------------------------------------------

// Spherical-coordinate unit vector in R^3.
void unit3(const double* u, double* e) {
  e[0] = std::sin(u[0]) * std::cos(u[1]);
  e[1] = std::sin(u[0]) * std::sin(u[1]);
  e[2] = std::cos(u[0]);
}

ParamDomain sphere_cap_domain() {
  ParamDomain d;
  d.lo = {0.4, 0.0};
  d.hi = {kPi - 0.4, 2.0 * kPi};
  d.periodic = {0, 1};
  return d;
}

// Round 2-sphere of intrinsic radius rho about the chart origin, drawn at
// chart radius `scale(rho)` (tan(rho/2) on the unit sphere, rho in flat
// space, tanh(rho/2) in the Poincare ball).
EmbeddedSubmanifold distance_sphere(Chart chart, double chart_radius, std::string name) {
  auto embed = [chart_radius](const double* u, double* x) {
    double e[3];
    unit3(u, e);
    for (int i = 0; i < 3; ++i) x[i] = chart_radius * e[i];
  };
  return EmbeddedSubmanifold(std::move(chart), 2, std::move(name), embed, sphere_cap_domain());
}

// Orthonormal frame used to project the diagonal torus in the unit 3-sphere
// to stereographic coordinates.  The projection pole P is placed away from
// the torus and from the normal geodesics the checks integrate, and B holds
// three orthonormal vectors perpendicular to P.
struct Frame4 {
  double P[4];
  double B[3][4];
};

double dot4(const double* a, const double* b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
}

Frame4 diagonal_torus_frame() {
  Frame4 f;
  const double theta = kPi / 8.0, a1 = 0.5636, a2 = 1.9416;
  f.P[0] = std::cos(theta) * std::cos(a1);
  f.P[1] = std::cos(theta) * std::sin(a1);
  f.P[2] = std::sin(theta) * std::cos(a2);
  f.P[3] = std::sin(theta) * std::sin(a2);
  // Gram-Schmidt of e1, e2, e3 against P.
  for (int i = 0; i < 3; ++i) {
    double v[4] = {0, 0, 0, 0};
    v[i] = 1.0;
    double c = dot4(v, f.P);
    for (int j = 0; j < 4; ++j) v[j] -= c * f.P[j];
    for (int k = 0; k < i; ++k) {
      double ck = dot4(v, f.B[k]);
      for (int j = 0; j < 4; ++j) v[j] -= ck * f.B[k][j];
    }
    double n = std::sqrt(dot4(v, v));
    for (int j = 0; j < 4; ++j) f.B[i][j] = v[j] / n;
  }
  return f;
}

// ---------------------------------------------------------------------------
// Parameter access
// ---------------------------------------------------------------------------

double param(const Params& p, const std::string& key) {
  auto it = p.find(key);
  if (it == p.end()) raise(ErrorCode::BadConfig, "missing parameter '" + key + "'");
  return it->second;
}

ExpectedValue expect(std::string name, double value, double tol, std::string oracle) {
  ExpectedValue e;
  e.name = std::move(name);
  e.value = value;
  e.tolerance = tol;
  e.oracle = std::move(oracle);
  return e;
}

// ---------------------------------------------------------------------------
// Scenario table
// ---------------------------------------------------------------------------

std::vector<Scenario> build_catalog() {
  std::vector<Scenario> list;

  auto add_chart_scenario = [&](std::string id, std::string summary, double kappa, int k,
                                std::function<Chart(const Params&)> make_chart, Vec px, Vec pv,
                                std::vector<std::pair<std::string, double>> defaults,
                                std::vector<std::string> checks, double sec_value,
                                std::string sec_oracle,
                                std::vector<ExpectedValue> extra = {}) {
    Scenario s;
    s.id = std::move(id);
    s.summary = std::move(summary);
    s.hypothesis = {kappa, k};
    s.defaults = std::move(defaults);
    s.checks = std::move(checks);
    s.make_chart = std::move(make_chart);
    s.probe_x = std::move(px);
    s.probe_v = std::move(pv);
    s.expected = [sec_value, sec_oracle, extra](const Params&) {
      std::vector<ExpectedValue> out;
      out.push_back(expect("sec", sec_value, 1e-7, sec_oracle));
      for (const auto& e : extra) out.push_back(e);
      return out;
    };
    list.push_back(std::move(s));
  };

  // --- flat planes -------------------------------------------------------
  add_chart_scenario(
      "euclidean_2", "Euclidean plane", 0.0, 1,
      [](const Params&) { return euclidean_chart(2, "euclidean_2"); },
      {0.3, -0.2}, {1.0, 0.5},
      {{"t_max", 3.0}, {"cmp_hi", 2.9}, {"samples", 100}},
      {"constant_curvature", "wronskian", "comparison_point_source", "comparison_random"},
      0.0, "Euclidean space is flat");

  add_chart_scenario(
      "euclidean_3", "Euclidean 3-space", 0.0, 2,
      [](const Params&) { return euclidean_chart(3, "euclidean_3"); },
      {0.3, -0.2, 0.1}, {1.0, 0.5, -0.3},
      {{"t_max", 3.0}, {"cmp_hi", 2.9}, {"samples", 100}},
      {"constant_curvature", "model_jacobi", "wronskian", "comparison_point_source",
       "comparison_random"},
      0.0, "Euclidean space is flat");

  // --- round spheres ------------------------------------------------------
  add_chart_scenario(
      "sphere_2", "unit round 2-sphere (stereographic chart)", 1.0, 1,
      [](const Params&) { return sphere_chart(2, 1.0, "sphere_2"); },
      {1.0, 0.0}, {0.0, 1.0},
      {{"t_max", 3.3}, {"cmp_hi", 3.0}, {"samples", 100}, {"normals", 8}},
      {"constant_curvature", "wronskian", "comparison_point_source", "comparison_random",
       "conjugate_radius"},
      1.0, "round sphere of radius r has constant curvature 1/r^2",
      {expect("conjugate_radius", kPi, 1e-3,
              "on a round sphere of radius r every geodesic first focuses at arc length pi*r")});

  add_chart_scenario(
      "sphere_3", "unit round 3-sphere (stereographic chart)", 1.0, 2,
      [](const Params&) { return sphere_chart(3, 1.0, "sphere_3"); },
      {1.0, 0.0, 0.0}, {0.0, 1.0, 0.0},
      {{"t_max", 3.3}, {"cmp_hi", 3.0}, {"samples", 100}},
      {"constant_curvature", "model_jacobi", "wronskian", "comparison_point_source",
       "comparison_random"},
      1.0, "round sphere of radius r has constant curvature 1/r^2");

  add_chart_scenario(
      "sphere_2_half", "round 2-sphere of radius 1/2", 4.0, 1,
      [](const Params&) { return sphere_chart(2, 0.5, "sphere_2_half"); },
      {0.5, 0.0}, {0.0, 1.0},
      {{"t_max", 1.5}, {"cmp_hi", 1.4}},
      {"constant_curvature", "wronskian", "comparison_point_source"},
      4.0, "round sphere of radius r has constant curvature 1/r^2");

  add_chart_scenario(
      "sphere_3_half", "round 3-sphere of radius 1/2", 4.0, 2,
      [](const Params&) { return sphere_chart(3, 0.5, "sphere_3_half"); },
      {0.5, 0.0, 0.0}, {0.0, 1.0, 0.0},
      {{"t_max", 1.5}, {"cmp_hi", 1.4}},
      {"constant_curvature", "wronskian", "comparison_point_source"},
      4.0, "round sphere of radius r has constant curvature 1/r^2");

  // --- hyperbolic spaces ---------------------------------------------------
  add_chart_scenario(
      "hyperbolic_2", "hyperbolic plane (Poincare disc)", -1.0, 1,
      [](const Params&) { return hyperbolic_chart(2, "hyperbolic_2"); },
      {0.0, 0.0}, {1.0, 0.3},
      {{"t_max", 3.0}, {"cmp_hi", 2.9}, {"samples", 100}},
      {"constant_curvature", "wronskian", "comparison_point_source", "comparison_random"},
      -1.0, "the Poincare ball has constant curvature -1");

  add_chart_scenario(
      "hyperbolic_3", "hyperbolic 3-space (Poincare ball)", -1.0, 2,
      [](const Params&) { return hyperbolic_chart(3, "hyperbolic_3"); },
      {0.0, 0.0, 0.0}, {1.0, 0.3, -0.2},
      {{"t_max", 3.0}, {"cmp_hi", 2.9}, {"samples", 100}},
      {"constant_curvature", "model_jacobi", "wronskian", "comparison_point_source",
       "comparison_random"},
      -1.0, "the Poincare ball has constant curvature -1");

  // --- flat tori ------------------------------------------------------------
  add_chart_scenario(
      "flat_torus_2", "flat square 2-torus (unit fundamental domain)", 0.0, 1,
      [](const Params&) { return euclidean_chart(2, "flat_torus_2"); },
      {0.2, 0.1}, {1.0, 0.7},
      {{"t_max", 3.0}, {"cmp_hi", 2.9}, {"samples", 100}},
      {"constant_curvature", "wronskian", "comparison_point_source", "comparison_random"},
      0.0, "flat tori are quotients of Euclidean space and inherit zero curvature");

  add_chart_scenario(
      "flat_torus_3", "flat cubic 3-torus (unit fundamental domain)", 0.0, 2,
      [](const Params&) { return euclidean_chart(3, "flat_torus_3"); },
      {0.2, 0.1, 0.4}, {1.0, 0.7, -0.4},
      {{"t_max", 3.0}, {"cmp_hi", 2.9}, {"samples", 100}},
      {"constant_curvature", "wronskian", "comparison_point_source", "comparison_random"},
      0.0, "flat tori are quotients of Euclidean space and inherit zero curvature");

  add_chart_scenario(
      "hopf_base", "round 2-sphere of radius 1/2, the base of the unit-sphere circle bundle",
      4.0, 1, [](const Params&) { return sphere_chart(2, 0.5, "hopf_base"); },
      {0.5, 0.0}, {0.0, 1.0},
      {{"t_max", 2.0}, {"normals", 8}},
      {"constant_curvature", "conjugate_radius"},
      4.0, "round sphere of radius r has constant curvature 1/r^2",
      {expect("conjugate_radius", kPi / 2.0, 1e-3,
              "on a round sphere of radius r every geodesic first focuses at arc length pi*r")});

  // --- distance spheres in the three space forms ---------------------------
  {
    Scenario s;
    s.id = "geodesic_sphere";
    s.summary = "distance sphere of radius rho about a point of the unit 3-sphere";
    s.hypothesis = {1.0, 1};
    s.defaults = {{"rho", 0.7}, {"t_max", 1.65}, {"cmp_hi", 1.45},
                  {"normals", 8},  {"samples", 100}, {"tube_r", 0.3}};
    s.checks = {"ii_norm",      "focal_radius",             "shape_bound", "focal_window",
                "comparison_normal_family", "comparison_random", "wronskian"};
    s.make_chart = [](const Params&) { return sphere_chart(3, 1.0, "sphere_3"); };
    s.make_submanifold = [](const Params& p) {
      double rho = param(p, "rho");
      if (rho <= 0.0 || rho >= kPi) raise(ErrorCode::BadConfig, "rho must lie in (0, pi)");
      return distance_sphere(sphere_chart(3, 1.0, "sphere_3"), std::tan(rho / 2.0),
                             "geodesic_sphere");
    };
    s.grid_counts = [](const Params&) { return std::vector<int>{3, 4}; };
    s.expected = [](const Params& p) {
      double rho = param(p, "rho");
      return std::vector<ExpectedValue>{
          expect("focal_radius", std::min(rho, kPi - rho), 1e-3,
                 "normal geodesics from a distance sphere of radius rho in the unit 3-sphere "
                 "focus at its two centers, at arc lengths rho and pi - rho"),
          expect("ii_norm", std::fabs(std::cos(rho) / std::sin(rho)), 1e-3,
                 "distance spheres of radius rho in the unit 3-sphere have principal "
                 "curvatures cot(rho) toward the near center")};
    };
    list.push_back(std::move(s));
  }

  {
    Scenario s;
    s.id = "geodesic_sphere_flat";
    s.summary = "round 2-sphere of radius rho in Euclidean 3-space";
    s.hypothesis = {0.0, 1};
    s.defaults = {{"rho", 0.7}, {"t_max", 3.0}, {"cmp_hi", 2.8},
                  {"normals", 8}, {"samples", 100}, {"tube_r", 0.3}};
    s.checks = {"ii_norm", "focal_radius", "shape_bound", "comparison_normal_family",
                "comparison_random", "wronskian"};
    s.make_chart = [](const Params&) { return euclidean_chart(3, "euclidean_3"); };
    s.make_submanifold = [](const Params& p) {
      double rho = param(p, "rho");
      if (rho <= 0.0) raise(ErrorCode::BadConfig, "rho must be positive");
      return distance_sphere(euclidean_chart(3, "euclidean_3"), rho, "geodesic_sphere_flat");
    };
    s.grid_counts = [](const Params&) { return std::vector<int>{3, 4}; };
    s.expected = [](const Params& p) {
      double rho = param(p, "rho");
      return std::vector<ExpectedValue>{
          expect("focal_radius", rho, 1e-3,
                 "inward normals of a round sphere of radius rho in Euclidean space meet at "
                 "the center after arc length rho; outward normals never focus"),
          expect("ii_norm", 1.0 / rho, 1e-3,
                 "a round sphere of radius rho in Euclidean space has principal curvatures "
                 "1/rho")};
    };
    list.push_back(std::move(s));
  }

  {
    Scenario s;
    s.id = "geodesic_sphere_hyperbolic";
    s.summary = "distance sphere of radius rho about a point of hyperbolic 3-space";
    s.hypothesis = {-1.0, 1};
    s.defaults = {{"rho", 0.7}, {"t_max", 3.0}, {"cmp_hi", 2.8},
                  {"normals", 8}, {"samples", 100}, {"tube_r", 0.3}};
    s.checks = {"ii_norm", "focal_radius", "shape_bound", "comparison_normal_family",
                "comparison_random", "wronskian"};
    s.make_chart = [](const Params&) { return hyperbolic_chart(3, "hyperbolic_3"); };
    s.make_submanifold = [](const Params& p) {
      double rho = param(p, "rho");
      if (rho <= 0.0) raise(ErrorCode::BadConfig, "rho must be positive");
      return distance_sphere(hyperbolic_chart(3, "hyperbolic_3"), std::tanh(rho / 2.0),
                             "geodesic_sphere_hyperbolic");
    };
    s.grid_counts = [](const Params&) { return std::vector<int>{3, 4}; };
    s.expected = [](const Params& p) {
      double rho = param(p, "rho");
      return std::vector<ExpectedValue>{
          expect("focal_radius", rho, 1e-3,
                 "inward normals of a distance sphere of radius rho in hyperbolic space meet "
                 "at the center after arc length rho; outward normals never focus"),
          expect("ii_norm", 1.0 / std::tanh(rho), 1e-3,
                 "distance spheres of radius rho in hyperbolic 3-space have principal "
                 "curvatures coth(rho)")};
    };
    list.push_back(std::move(s));
  }

  // --- plane circle ----------------------------------------------------------
  {
    Scenario s;
    s.id = "euclidean_plane_circle";
    s.summary = "circle of radius r in the Euclidean plane";
    s.hypothesis = {0.0, 1};
    s.defaults = {{"r", 1.0},      {"t_max", 3.0}, {"cmp_hi", 2.8},
                  {"tube_r", 0.5}, {"normals", 8}, {"samples", 100}};
    s.checks = {"ii_norm",      "focal_radius", "shape_bound", "comparison_normal_family",
                "comparison_random", "wronskian",    "tube_volume"};
    s.make_chart = [](const Params&) { return euclidean_chart(2, "euclidean_2"); };
    s.make_submanifold = [](const Params& p) {
      double r = param(p, "r");
      if (r <= 0.0) raise(ErrorCode::BadConfig, "r must be positive");
      auto embed = [r](const double* u, double* x) {
        x[0] = r * std::cos(u[0]);
        x[1] = r * std::sin(u[0]);
      };
      ParamDomain d;
      d.lo = {0.0};
      d.hi = {2.0 * kPi};
      d.periodic = {1};
      return EmbeddedSubmanifold(euclidean_chart(2, "euclidean_2"), 1, "euclidean_plane_circle",
                                 embed, d);
    };
    s.grid_counts = [](const Params&) { return std::vector<int>{8}; };
    s.expected = [](const Params& p) {
      double r = param(p, "r");
      double w = param(p, "tube_r");
      return std::vector<ExpectedValue>{
          expect("focal_radius", r, 1e-3,
                 "inward normals of a plane circle of radius r meet at the center after arc "
                 "length r; outward normals never focus"),
          expect("ii_norm", 1.0 / r, 1e-3, "a plane circle of radius r has curvature 1/r"),
          expect("tube_volume", 4.0 * kPi * r * w, 0.01 * 4.0 * kPi * r * w,
                 "the area between concentric circles of radii r - w and r + w is 4*pi*r*w")};
    };
    list.push_back(std::move(s));
  }

  // --- great circle in the 2-sphere -------------------------------------------
  {
    Scenario s;
    s.id = "equator_S1_in_S2";
    s.summary = "great circle in the unit 2-sphere (tilted relative to the chart axes)";
    s.hypothesis = {1.0, 1};
    s.defaults = {
        {"t_max", 1.65}, {"cmp_hi", 1.45}, {"tube_r", 1.0}, {"normals", 8}, {"samples", 100}};
    s.checks = {"ii_norm",      "focal_radius",             "shape_bound", "focal_window",
                "comparison_normal_family", "comparison_random", "wronskian",   "tube_volume"};
    s.make_chart = [](const Params&) { return sphere_chart(2, 1.0, "sphere_2"); };
    s.make_submanifold = [](const Params&) {
      // Great circle whose poles sit 0.4 radians away from the projection
      // axis.  The phase offset keeps the sampled footpoints away from the
      // two points whose normal geodesic runs through the antipode of the
      // chart center (the coordinate point at infinity): the normal line at
      // parameter s misses that antipode by asin(sin(alpha)|sin(s+phase)|).
      const double alpha = 0.4;
      const double phase = kPi / 8.0;
      auto embed = [alpha, phase](const double* u, double* x) {
        const double denom = 1.0 - std::sin(alpha) * std::cos(u[0] + phase);
        x[0] = std::cos(alpha) * std::cos(u[0] + phase) / denom;
        x[1] = std::sin(u[0] + phase) / denom;
      };
      ParamDomain d;
      d.lo = {0.0};
      d.hi = {2.0 * kPi};
      d.periodic = {1};
      return EmbeddedSubmanifold(sphere_chart(2, 1.0, "sphere_2"), 1, "equator_S1_in_S2", embed,
                                 d);
    };
    s.grid_counts = [](const Params&) { return std::vector<int>{8}; };
    s.expected = [](const Params& p) {
      double w = param(p, "tube_r");
      return std::vector<ExpectedValue>{
          expect("focal_radius", kPi / 2.0, 1e-3,
                 "normal geodesics of a great circle all reach the two poles at arc length "
                 "pi/2"),
          expect("ii_norm", 0.0, 1e-6,
                 "great circles are geodesics, so the second fundamental form vanishes "
                 "(tolerance covers finite-difference truncation of the rational embedding)"),
          expect("tube_volume", 4.0 * kPi * std::sin(w), 0.02 * 4.0 * kPi * std::sin(w),
                 "the band within distance w of a great circle on the unit sphere has area "
                 "4*pi*sin(w)")};
    };
    list.push_back(std::move(s));
  }

  // --- equatorial 2-sphere in the 3-sphere -------------------------------------
  {
    Scenario s;
    s.id = "equator_S2_in_S3";
    s.summary = "equatorial (totally geodesic) 2-sphere in the unit 3-sphere";
    s.hypothesis = {1.0, 1};
    s.defaults = {
        {"t_max", 1.65}, {"cmp_hi", 1.45}, {"normals", 8}, {"tube_r", 0.5}, {"samples", 100}};
    s.checks = {"ii_norm",      "focal_radius",             "shape_bound", "focal_window",
                "comparison_normal_family", "comparison_random", "wronskian"};
    s.make_chart = [](const Params&) { return sphere_chart(3, 1.0, "sphere_3"); };
    s.make_submanifold = [](const Params&) {
      // The equatorial sphere through the projection point maps to the
      // coordinate plane x3 = 0 in the stereographic chart.
      auto embed = [](const double* u, double* x) {
        x[0] = u[0];
        x[1] = u[1];
        x[2] = 0.0;
      };
      ParamDomain d;
      d.lo = {-0.6, -0.6};
      d.hi = {0.6, 0.6};
      d.periodic = {0, 0};
      return EmbeddedSubmanifold(sphere_chart(3, 1.0, "sphere_3"), 2, "equator_S2_in_S3", embed,
                                 d);
    };
    s.grid_counts = [](const Params&) { return std::vector<int>{3, 3}; };
    s.expected = [](const Params&) {
      return std::vector<ExpectedValue>{
          expect("focal_radius", kPi / 2.0, 1e-3,
                 "normal geodesics of an equatorial 2-sphere in the unit 3-sphere meet at the "
                 "two poles at arc length pi/2"),
          expect("ii_norm", 0.0, 1e-7,
                 "equatorial spheres are totally geodesic, so the second fundamental form "
                 "vanishes")};
    };
    list.push_back(std::move(s));
  }

  // --- diagonal torus in the 3-sphere -------------------------------------------
  {
    Scenario s;
    s.id = "clifford_torus";
    s.summary = "diagonal minimal torus |z1| = |z2| in the unit 3-sphere";
    s.hypothesis = {1.0, 1};
    s.defaults = {
        {"t_max", 1.65}, {"cmp_hi", 1.45}, {"normals", 8}, {"tube_r", 0.5}, {"samples", 100}};
    s.checks = {"ii_norm",      "focal_radius",             "shape_bound", "focal_window",
                "comparison_normal_family", "comparison_random", "wronskian"};
    s.make_chart = [](const Params&) { return sphere_chart(3, 1.0, "sphere_3"); };
    s.make_submanifold = [](const Params&) {
      static const Frame4 f = diagonal_torus_frame();
      auto embed = [](const double* u, double* x) {
        const double inv = 1.0 / std::sqrt(2.0);
        double q[4] = {inv * std::cos(u[0]), inv * std::sin(u[0]), inv * std::cos(u[1]),
                       inv * std::sin(u[1])};
        const double denom = 1.0 - dot4(q, f.P);
        for (int i = 0; i < 3; ++i) x[i] = dot4(q, f.B[i]) / denom;
      };
      ParamDomain d;
      d.lo = {0.0, 0.0};
      d.hi = {2.0 * kPi, 2.0 * kPi};
      d.periodic = {1, 1};
      return EmbeddedSubmanifold(sphere_chart(3, 1.0, "sphere_3"), 2, "clifford_torus", embed,
                                 d);
    };
    s.grid_counts = [](const Params&) { return std::vector<int>{4, 4}; };
    s.expected = [](const Params&) {
      return std::vector<ExpectedValue>{
          expect("focal_radius", kPi / 4.0, 1e-3,
                 "the diagonal torus lies at distance pi/4 from each of its two core circles, "
                 "where its normal geodesics focus"),
          expect("ii_norm", 1.0, 1e-3,
                 "the diagonal torus in the unit 3-sphere has principal curvatures +1 and -1")};
    };
    list.push_back(std::move(s));
  }

  // --- closed geodesics in flat tori ----------------------------------------------
  {
    Scenario s;
    s.id = "circle_in_torus";
    s.summary = "closed geodesic with winding numbers (p, q) in the flat square 2-torus";
    s.hypothesis = {0.0, 1};
    s.defaults = {{"p", 1.0},      {"q", 0.0},     {"t_max", 50.0}, {"cmp_hi", 2.8},
                  {"tube_r", 0.25}, {"normals", 8}, {"samples", 100}};
    s.checks = {"ii_norm",      "focal_infinite",           "shape_bound", "soul",
                "comparison_normal_family", "comparison_random", "wronskian",   "tube_volume"};
    s.make_chart = [](const Params&) { return euclidean_chart(2, "flat_torus_2"); };
    s.make_submanifold = [](const Params& p) {
      double wp = param(p, "p"), wq = param(p, "q");
      double len = std::hypot(wp, wq);
      if (len <= 0.0) raise(ErrorCode::BadConfig, "winding numbers must not both vanish");
      auto embed = [wp, wq, len](const double* u, double* x) {
        x[0] = u[0] * wp / len;
        x[1] = u[0] * wq / len;
      };
      ParamDomain d;
      d.lo = {0.0};
      d.hi = {len};
      d.periodic = {1};
      return EmbeddedSubmanifold(euclidean_chart(2, "flat_torus_2"), 1, "circle_in_torus", embed,
                                 d);
    };
    s.grid_counts = [](const Params&) { return std::vector<int>{6}; };
    s.expected = [](const Params& p) {
      double len = std::hypot(param(p, "p"), param(p, "q"));
      double w = param(p, "tube_r");
      return std::vector<ExpectedValue>{
          expect("ii_norm", 0.0, 1e-7, "straight lines in a flat torus are geodesics"),
          expect("tube_volume", 2.0 * w * len, 0.01 * 2.0 * w * len,
                 "the strip of half-width w around a closed geodesic of length L in a flat "
                 "torus has area 2*w*L")};
    };
    list.push_back(std::move(s));
  }

  {
    Scenario s;
    s.id = "circle_in_torus_3";
    s.summary = "closed geodesic along the first coordinate of the flat cubic 3-torus";
    s.hypothesis = {0.0, 1};
    s.defaults = {{"t_max", 50.0}, {"cmp_hi", 2.8}, {"normals", 8}, {"samples", 100},
                  {"tube_r", 0.25}};
    s.checks = {"ii_norm",      "focal_infinite", "shape_bound", "soul",
                "comparison_normal_family", "comparison_random",   "wronskian"};
    s.make_chart = [](const Params&) { return euclidean_chart(3, "flat_torus_3"); };
    s.make_submanifold = [](const Params&) {
      auto embed = [](const double* u, double* x) {
        x[0] = u[0];
        x[1] = 0.0;
        x[2] = 0.0;
      };
      ParamDomain d;
      d.lo = {0.0};
      d.hi = {1.0};
      d.periodic = {1};
      return EmbeddedSubmanifold(euclidean_chart(3, "flat_torus_3"), 1, "circle_in_torus_3",
                                 embed, d);
    };
    s.grid_counts = [](const Params&) { return std::vector<int>{6}; };
    s.expected = [](const Params&) {
      return std::vector<ExpectedValue>{
          expect("ii_norm", 0.0, 1e-7, "straight lines in a flat torus are geodesics")};
    };
    list.push_back(std::move(s));
  }

  {
    Scenario s;
    s.id = "non_geodesic_curve_in_torus";
    s.summary = "sinusoidal closed curve (u, a*sin(2*pi*u)) in the flat square 2-torus";
    s.hypothesis = {0.0, 1};
    s.defaults = {{"a", 0.15}, {"t_max", 3.0}, {"cmp_hi", 2.8},
                  {"normals", 8}, {"samples", 100}, {"tube_r", 0.1}};
    s.checks = {"ii_norm", "focal_radius", "shape_bound", "soul_rejection",
                "comparison_normal_family", "comparison_random", "wronskian"};
    s.make_chart = [](const Params&) { return euclidean_chart(2, "flat_torus_2"); };
    s.make_submanifold = [](const Params& p) {
      double a = param(p, "a");
      if (a <= 0.0) raise(ErrorCode::BadConfig, "a must be positive");
      auto embed = [a](const double* u, double* x) {
        x[0] = u[0];
        x[1] = a * std::sin(2.0 * kPi * u[0]);
      };
      ParamDomain d;
      d.lo = {0.0};
      d.hi = {1.0};
      d.periodic = {1};
      return EmbeddedSubmanifold(euclidean_chart(2, "flat_torus_2"), 1,
                                 "non_geodesic_curve_in_torus", embed, d);
    };
    s.grid_counts = [](const Params&) { return std::vector<int>{12}; };
    s.expected = [](const Params& p) {
      double a = param(p, "a");
      double kmax = a * 4.0 * kPi * kPi;
      return std::vector<ExpectedValue>{
          expect("focal_radius", 1.0 / kmax, 1e-3,
                 "the curvature of (u, a*sin(2*pi*u)) peaks at the crests with value "
                 "a*(2*pi)^2, and the nearest focal point of a plane curve sits at the "
                 "reciprocal of its largest curvature"),
          expect("ii_norm", kmax, 1e-3,
                 "the curvature of (u, a*sin(2*pi*u)) is maximal at the crests u = 1/4, 3/4 "
                 "with value a*(2*pi)^2")};
    };
    list.push_back(std::move(s));
  }

  return list;
}

}  // namespace

const std::vector<Scenario>& catalog() {
  static const std::vector<Scenario> kCatalog = build_catalog();
  return kCatalog;
}

const Scenario& find_scenario(const std::string& id) {
  for (const auto& s : catalog())
    if (s.id == id) return s;
  raise(ErrorCode::UnknownScenario, "unknown scenario '" + id + "'");
}

}  // namespace focallab
