// Exercises the shared library through the public C header only: no internal
// headers, everything reached via opaque handles and status codes.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstring>
#include <numbers>
#include <string>

#include "focallab/focallab.h"
#include "json.hpp"

using Json = nlohmann::json;

namespace {
constexpr double kPi = std::numbers::pi;

void euclidean_metric(const double* /*x*/, double* g, void* user) {
  const int n = *static_cast<int*>(user);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g[i * n + j] = (i == j) ? 1.0 : 0.0;
}

void circle_embed(const double* u, double* x, void* user) {
  const double r = *static_cast<double*>(user);
  x[0] = r * std::cos(u[0]);
  x[1] = r * std::sin(u[0]);
}
}  // namespace

TEST_CASE("version and error state") {
  const char* v = focallab_version();
  REQUIRE(v != nullptr);
  CHECK(std::strlen(v) >= 5);
  CHECK(std::strchr(v, '.') != nullptr);

  // Failing call records code and message on this thread.
  focallab_chart* chart = nullptr;
  int rc = focallab_chart_create_builtin("nope", 2, 1.0, &chart);
  CHECK(rc == FOCALLAB_ERR_BAD_CONFIG);
  CHECK(chart == nullptr);
  CHECK(focallab_last_error_code() == FOCALLAB_ERR_BAD_CONFIG);
  CHECK(std::strlen(focallab_last_error_message()) > 0);

  // A successful call clears the error state.
  rc = focallab_chart_create_builtin("euclidean", 2, 0.0, &chart);
  REQUIRE(rc == FOCALLAB_OK);
  CHECK(focallab_last_error_code() == FOCALLAB_OK);
  focallab_chart_free(chart);
}

TEST_CASE("null and malformed arguments are rejected") {
  CHECK(focallab_chart_create_builtin("sphere", 2, 1.0, nullptr) ==
        FOCALLAB_ERR_INVALID_ARGUMENT);
  focallab_chart* chart = nullptr;
  CHECK(focallab_chart_create_builtin("sphere", 0, 1.0, &chart) != FOCALLAB_OK);
  CHECK(focallab_chart_create(2, nullptr, nullptr, nullptr, &chart) ==
        FOCALLAB_ERR_INVALID_ARGUMENT);
  double out = 0.0;
  CHECK(focallab_sectional_curvature(nullptr, nullptr, nullptr, nullptr, &out) ==
        FOCALLAB_ERR_INVALID_ARGUMENT);
  CHECK(focallab_chart_dim(nullptr) == 0);
  focallab_string_free(nullptr);  // must be a no-op
}

TEST_CASE("builtin charts expose curvature queries") {
  focallab_chart* sph = nullptr;
  REQUIRE(focallab_chart_create_builtin("sphere", 3, 1.0, &sph) == FOCALLAB_OK);
  CHECK(focallab_chart_dim(sph) == 3);

  const double x[3] = {0.2, 0.3, -0.1};
  const double u[3] = {1.0, 0.0, 0.2};
  const double w[3] = {0.0, 1.0, -0.5};
  double sec = 0.0;
  REQUIRE(focallab_sectional_curvature(sph, x, u, w, &sec) == FOCALLAB_OK);
  CHECK(std::abs(sec - 1.0) < 1e-8);

  double r2 = 0.0;
  REQUIRE(focallab_ric_k(sph, x, u, 2, &r2) == FOCALLAB_OK);
  CHECK(std::abs(r2 - 2.0) < 1e-8);
  CHECK(focallab_ric_k(sph, x, u, 5, &r2) == FOCALLAB_ERR_K_OUT_OF_RANGE);

  focallab_chart* hyp = nullptr;
  REQUIRE(focallab_chart_create_builtin("hyperbolic", 2, 0.0, &hyp) == FOCALLAB_OK);
  const double y[2] = {0.3, 0.1};
  const double u2[2] = {1.0, 0.0}, w2[2] = {0.0, 1.0};
  REQUIRE(focallab_sectional_curvature(hyp, y, u2, w2, &sec) == FOCALLAB_OK);
  CHECK(std::abs(sec + 1.0) < 1e-8);

  focallab_chart_free(hyp);
  focallab_chart_free(sph);
}

TEST_CASE("conjugate radius through the C surface") {
  focallab_chart* sph = nullptr;
  REQUIRE(focallab_chart_create_builtin("sphere", 2, 0.5, &sph) == FOCALLAB_OK);
  const double x[2] = {0.5, 0.0};
  double radius = 0.0;
  REQUIRE(focallab_conjugate_radius(sph, x, 8, 2.5, 1, &radius) == FOCALLAB_OK);
  CHECK(std::abs(radius - kPi / 2.0) < 1e-6);
  focallab_chart_free(sph);

  focallab_chart* flat = nullptr;
  REQUIRE(focallab_chart_create_builtin("euclidean", 2, 0.0, &flat) == FOCALLAB_OK);
  const double origin[2] = {0.0, 0.0};
  REQUIRE(focallab_conjugate_radius(flat, origin, 8, 5.0, 1, &radius) == FOCALLAB_OK);
  CHECK(std::isnan(radius));  // no conjugate point within the horizon
  focallab_chart_free(flat);
}

TEST_CASE("custom metric callbacks drive geodesics") {
  int dim = 2;
  focallab_chart* chart = nullptr;
  REQUIRE(focallab_chart_create(2, euclidean_metric, nullptr, &dim, &chart) == FOCALLAB_OK);

  const double x0[2] = {1.0, 2.0};
  const double v0[2] = {0.0, 3.0};  // normalized internally
  focallab_geodesic* geo = nullptr;
  REQUIRE(focallab_geodesic_create(chart, x0, v0, 2.0, &geo) == FOCALLAB_OK);
  double x[2], v[2];
  REQUIRE(focallab_geodesic_sample(geo, 1.5, x, v) == FOCALLAB_OK);
  CHECK(std::abs(x[0] - 1.0) < 1e-10);
  CHECK(std::abs(x[1] - 3.5) < 1e-10);
  CHECK(std::abs(v[0]) < 1e-10);
  CHECK(std::abs(v[1] - 1.0) < 1e-10);
  // Position-only sampling is allowed.
  REQUIRE(focallab_geodesic_sample(geo, 0.5, x, nullptr) == FOCALLAB_OK);
  CHECK(std::abs(x[1] - 2.5) < 1e-10);

  focallab_geodesic_free(geo);
  focallab_chart_free(chart);
}

TEST_CASE("submanifold queries through the C surface") {
  focallab_chart* chart = nullptr;
  REQUIRE(focallab_chart_create_builtin("euclidean", 2, 0.0, &chart) == FOCALLAB_OK);
  double radius = 1.0;
  const double lo[1] = {0.0}, hi[1] = {2.0 * kPi};
  const int periodic[1] = {1};
  focallab_submanifold* sub = nullptr;
  REQUIRE(focallab_submanifold_create(chart, 1, circle_embed, &radius, lo, hi, periodic,
                                      &sub) == FOCALLAB_OK);
  // The chart handle may be released immediately.
  focallab_chart_free(chart);

  const double u[1] = {0.7};
  const double inward[2] = {-std::cos(0.7), -std::sin(0.7)};
  double shape = 0.0;
  REQUIRE(focallab_shape_operator(sub, u, inward, &shape) == FOCALLAB_OK);
  CHECK(std::abs(shape - 1.0) < 1e-6);

  double ii = 0.0;
  REQUIRE(focallab_ii_norm(sub, u, &ii) == FOCALLAB_OK);
  CHECK(std::abs(ii - 1.0) < 1e-6);

  const int grid[1] = {8};
  double focal = 0.0;
  REQUIRE(focallab_focal_radius(sub, grid, 2, 3.0, 2, &focal) == FOCALLAB_OK);
  CHECK(std::abs(focal - 1.0) < 1e-6);

  double volume = 0.0, err = 0.0;
  int focal_inside = 0;
  const int tgrid[1] = {16};
  REQUIRE(focallab_tube_volume(sub, 0.25, tgrid, 2, 32, 1, &volume, &err, &focal_inside) ==
          FOCALLAB_OK);
  CHECK(std::abs(volume - kPi) < 0.01 * kPi);  // 4 pi r w with r=1, w=1/4
  CHECK(focal_inside == 0);

  // Bad normal direction surfaces as a typed error.
  const double tangent[2] = {-std::sin(0.7), std::cos(0.7)};
  CHECK(focallab_shape_operator(sub, u, tangent, &shape) == FOCALLAB_ERR_NOT_NORMAL);

  focallab_submanifold_free(sub);
}

TEST_CASE("parameter dimension must stay below the chart dimension") {
  focallab_chart* chart = nullptr;
  REQUIRE(focallab_chart_create_builtin("euclidean", 2, 0.0, &chart) == FOCALLAB_OK);
  double radius = 1.0;
  const double lo[2] = {0.0, 0.0}, hi[2] = {1.0, 1.0};
  focallab_submanifold* sub = nullptr;
  CHECK(focallab_submanifold_create(chart, 2, circle_embed, &radius, lo, hi, nullptr, &sub) ==
        FOCALLAB_ERR_INVALID_ARGUMENT);
  CHECK(focallab_submanifold_create(chart, 0, circle_embed, &radius, lo, hi, nullptr, &sub) ==
        FOCALLAB_ERR_INVALID_ARGUMENT);
  focallab_chart_free(chart);
}

TEST_CASE("catalog and scenario runs return JSON documents") {
  char* text = nullptr;
  REQUIRE(focallab_catalog_json(&text) == FOCALLAB_OK);
  REQUIRE(text != nullptr);
  Json cat = Json::parse(text);
  focallab_string_free(text);
  CHECK(cat["scenarios"].size() == 21);

  int pass = -5;
  text = nullptr;
  REQUIRE(focallab_run("scenario", "euclidean_2", nullptr, nullptr, 0, 1, 0, &text, &pass) ==
          FOCALLAB_OK);
  Json rep = Json::parse(text);
  focallab_string_free(text);
  CHECK(pass == 1);
  CHECK(rep["scenario"] == "euclidean_2");
  CHECK(rep["pass"] == true);

  // Overrides are applied: a circle of radius 2 focuses at distance 2.
  const char* keys[1] = {"r"};
  const double values[1] = {2.0};
  text = nullptr;
  REQUIRE(focallab_run("focal", "euclidean_plane_circle", keys, values, 1, 1, 0, &text,
                       &pass) == FOCALLAB_OK);
  Json focal = Json::parse(text);
  focallab_string_free(text);
  CHECK(pass == -1);  // focused reports carry no pass/fail checks
  CHECK(std::abs(focal["focal_radius"].get<double>() - 2.0) < 1e-6);
  CHECK(focal["params"]["r"] == 2.0);

  // Named verifier dispatch.
  text = nullptr;
  REQUIRE(focallab_run("verify:conjugate-radius", "hopf_base", nullptr, nullptr, 0, 1, 0,
                       &text, &pass) == FOCALLAB_OK);
  Json ver = Json::parse(text);
  focallab_string_free(text);
  CHECK(pass == 1);
  REQUIRE(ver["checks"].size() == 1);
  CHECK(ver["checks"][0]["name"] == "conjugate_radius");

  // Deterministic reruns at the byte level.
  char* a = nullptr;
  char* b = nullptr;
  REQUIRE(focallab_run("scenario", "euclidean_2", nullptr, nullptr, 0, 1, 0, &a, nullptr) ==
          FOCALLAB_OK);
  REQUIRE(focallab_run("scenario", "euclidean_2", nullptr, nullptr, 0, 3, 0, &b, nullptr) ==
          FOCALLAB_OK);
  CHECK(std::string(a) == std::string(b));
  focallab_string_free(a);
  focallab_string_free(b);
}

TEST_CASE("run command failures map onto status codes") {
  char* text = nullptr;
  int pass = 0;
  CHECK(focallab_run("scenario", "missing", nullptr, nullptr, 0, 1, 0, &text, &pass) ==
        FOCALLAB_ERR_UNKNOWN_SCENARIO);
  CHECK(text == nullptr);

  CHECK(focallab_run("explode", "euclidean_2", nullptr, nullptr, 0, 1, 0, &text, &pass) ==
        FOCALLAB_ERR_BAD_CONFIG);

  const char* keys[1] = {"bogus"};
  const double values[1] = {1.0};
  CHECK(focallab_run("scenario", "euclidean_2", keys, values, 1, 1, 0, &text, &pass) ==
        FOCALLAB_ERR_BAD_CONFIG);

  CHECK(focallab_run("verify:soul", "sphere_2", nullptr, nullptr, 0, 1, 0, &text, &pass) ==
        FOCALLAB_ERR_BAD_CONFIG);

  CHECK(focallab_run(nullptr, "sphere_2", nullptr, nullptr, 0, 1, 0, &text, &pass) ==
        FOCALLAB_ERR_INVALID_ARGUMENT);
}
