#include "focallab/focallab.h"

#include <cstring>
#include <limits>
#include <string>

#include "manifold/curvature.hpp"
#include "manifold/geodesic.hpp"
#include "scenarios/catalog.hpp"
#include "scenarios/runner.hpp"
#include "submanifold/shape.hpp"
#include "support/error.hpp"

using namespace focallab;

namespace {

thread_local int g_last_code = FOCALLAB_OK;
thread_local std::string g_last_message;

int map_code(ErrorCode c) {
  switch (c) {
    case ErrorCode::InvalidArgument: return FOCALLAB_ERR_INVALID_ARGUMENT;
    case ErrorCode::StepUnderflow: return FOCALLAB_ERR_STEP_UNDERFLOW;
    case ErrorCode::NonFiniteRhs: return FOCALLAB_ERR_NON_FINITE_RHS;
    case ErrorCode::NotSquare: return FOCALLAB_ERR_NOT_SQUARE;
    case ErrorCode::NonSymmetric: return FOCALLAB_ERR_NON_SYMMETRIC;
    case ErrorCode::DegenerateSpan: return FOCALLAB_ERR_DEGENERATE_SPAN;
    case ErrorCode::NoSignChange: return FOCALLAB_ERR_NO_SIGN_CHANGE;
    case ErrorCode::MetricNotPD: return FOCALLAB_ERR_METRIC_NOT_PD;
    case ErrorCode::DegeneratePlane: return FOCALLAB_ERR_DEGENERATE_PLANE;
    case ErrorCode::KOutOfRange: return FOCALLAB_ERR_K_OUT_OF_RANGE;
    case ErrorCode::LeftChartDomain: return FOCALLAB_ERR_LEFT_CHART_DOMAIN;
    case ErrorCode::RankDeficientEmbedding: return FOCALLAB_ERR_RANK_DEFICIENT_EMBEDDING;
    case ErrorCode::NotNormal: return FOCALLAB_ERR_NOT_NORMAL;
    case ErrorCode::NotLagrangian: return FOCALLAB_ERR_NOT_LAGRANGIAN;
    case ErrorCode::SingularAtT: return FOCALLAB_ERR_SINGULAR_AT_T;
    case ErrorCode::PoleAtT: return FOCALLAB_ERR_POLE_AT_T;
    case ErrorCode::BeyondBlowup: return FOCALLAB_ERR_BEYOND_BLOWUP;
    case ErrorCode::HypothesisViolated: return FOCALLAB_ERR_HYPOTHESIS_VIOLATED;
    case ErrorCode::SingularGrid: return FOCALLAB_ERR_SINGULAR_GRID;
    case ErrorCode::NotInfiniteFocal: return FOCALLAB_ERR_NOT_INFINITE_FOCAL;
    case ErrorCode::UnknownScenario: return FOCALLAB_ERR_UNKNOWN_SCENARIO;
    case ErrorCode::BadConfig: return FOCALLAB_ERR_BAD_CONFIG;
    case ErrorCode::Internal: return FOCALLAB_ERR_INTERNAL;
  }
  return FOCALLAB_ERR_INTERNAL;
}

int fail(int code, const std::string& message) {
  g_last_code = code;
  g_last_message = message;
  return code;
}

template <typename Fn>
int guarded(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return fail(map_code(e.code()), e.what());
  } catch (const std::exception& e) {
    return fail(FOCALLAB_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(FOCALLAB_ERR_INTERNAL, "unknown error");
  }
  g_last_code = FOCALLAB_OK;
  return FOCALLAB_OK;
}

int require(bool cond, const char* what) {
  if (cond) return FOCALLAB_OK;
  return fail(FOCALLAB_ERR_INVALID_ARGUMENT, what);
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

}  // namespace

struct focallab_chart {
  Chart chart;
};

struct focallab_geodesic {
  FramedGeodesic geo;
};

struct focallab_submanifold {
  EmbeddedSubmanifold sub;
};

extern "C" {

const char* focallab_version(void) { return tool_version(); }

int focallab_last_error_code(void) { return g_last_code; }

const char* focallab_last_error_message(void) { return g_last_message.c_str(); }

void focallab_string_free(char* s) { delete[] s; }

/* ------------------------------------------------------------------ */
/* Charts                                                              */
/* ------------------------------------------------------------------ */

int focallab_chart_create(int dim, focallab_metric_fn metric, focallab_domain_fn domain,
                          void* user, focallab_chart** out) {
  if (int rc = require(out && metric && dim >= 2, "need dim >= 2, metric, out")) return rc;
  return guarded([&] {
    Chart chart(dim, "user_chart",
                [metric, user](const double* x, double* g) { metric(x, g, user); });
    if (domain)
      chart.with_domain([domain, user](const double* x) { return domain(x, user) != 0; });
    *out = new focallab_chart{std::move(chart)};
  });
}

int focallab_chart_create_builtin(const char* kind, int dim, double radius,
                                  focallab_chart** out) {
  if (int rc = require(out && kind && dim >= 2, "need kind, dim >= 2, out")) return rc;
  return guarded([&] {
    std::string k = kind;
    Chart chart;
    if (k == "euclidean")
      chart = euclidean_chart(dim, "euclidean_" + std::to_string(dim));
    else if (k == "sphere")
      chart = sphere_chart(dim, radius, "sphere_" + std::to_string(dim));
    else if (k == "hyperbolic")
      chart = hyperbolic_chart(dim, "hyperbolic_" + std::to_string(dim));
    else
      raise(ErrorCode::BadConfig, "unknown builtin chart kind '" + k + "'");
    *out = new focallab_chart{std::move(chart)};
  });
}

void focallab_chart_free(focallab_chart* chart) { delete chart; }

int focallab_chart_dim(const focallab_chart* chart) { return chart ? chart->chart.dim() : 0; }

int focallab_sectional_curvature(const focallab_chart* chart, const double* x,
                                 const double* u, const double* w, double* out) {
  if (int rc = require(chart && x && u && w && out, "null argument")) return rc;
  return guarded([&] {
    const int n = chart->chart.dim();
    *out = sectional_curvature(chart->chart, x, Vec(u, u + n), Vec(w, w + n));
  });
}

int focallab_ric_k(const focallab_chart* chart, const double* x, const double* v, int k,
                   double* out) {
  if (int rc = require(chart && x && v && out, "null argument")) return rc;
  return guarded([&] {
    const int n = chart->chart.dim();
    *out = ric_k(chart->chart, x, Vec(v, v + n), k);
  });
}

int focallab_conjugate_radius(const focallab_chart* chart, const double* x, int directions,
                              double t_max, int jobs, double* out_radius) {
  if (int rc = require(chart && x && out_radius, "null argument")) return rc;
  return guarded([&] {
    const int n = chart->chart.dim();
    ConjugateRadiusResult res =
        base_conjugate_radius(chart->chart, Vec(x, x + n), directions, t_max,
                              jobs < 1 ? 1 : jobs);
    *out_radius = res.radius ? *res.radius : kNan;
  });
}

/* ------------------------------------------------------------------ */
/* Geodesics                                                           */
/* ------------------------------------------------------------------ */

int focallab_geodesic_create(const focallab_chart* chart, const double* x0, const double* v0,
                             double t_end, focallab_geodesic** out) {
  if (int rc = require(chart && x0 && v0 && out, "null argument")) return rc;
  return guarded([&] {
    const int n = chart->chart.dim();
    *out = new focallab_geodesic{
        integrate_geodesic(chart->chart, Vec(x0, x0 + n), Vec(v0, v0 + n), t_end)};
  });
}

void focallab_geodesic_free(focallab_geodesic* geo) { delete geo; }

int focallab_geodesic_sample(const focallab_geodesic* geo, double t, double* x, double* v) {
  if (int rc = require(geo != nullptr, "null geodesic")) return rc;
  return guarded([&] {
    GeodesicState st = geo->geo.at(t);
    const int n = geo->geo.dim();
    if (x)
      for (int i = 0; i < n; ++i) x[i] = st.x[static_cast<size_t>(i)];
    if (v)
      for (int i = 0; i < n; ++i) v[i] = st.v[static_cast<size_t>(i)];
  });
}

/* ------------------------------------------------------------------ */
/* Submanifolds                                                        */
/* ------------------------------------------------------------------ */

int focallab_submanifold_create(const focallab_chart* chart, int param_dim,
                                focallab_embed_fn embed, void* user, const double* lo,
                                const double* hi, const int* periodic,
                                focallab_submanifold** out) {
  if (int rc = require(chart && embed && lo && hi && out && param_dim >= 1 &&
                           param_dim < (chart ? chart->chart.dim() : 0),
                       "need embed, bounds, out, 1 <= param_dim < chart dim"))
    return rc;
  return guarded([&] {
    ParamDomain domain;
    domain.lo.assign(lo, lo + param_dim);
    domain.hi.assign(hi, hi + param_dim);
    domain.periodic.assign(param_dim, 0);
    if (periodic)
      for (int i = 0; i < param_dim; ++i) domain.periodic[static_cast<size_t>(i)] = periodic[i];
    EmbeddedSubmanifold sub(
        chart->chart, param_dim, "user_submanifold",
        [embed, user](const double* u, double* x) { embed(u, x, user); }, domain);
    *out = new focallab_submanifold{std::move(sub)};
  });
}

void focallab_submanifold_free(focallab_submanifold* sub) { delete sub; }

int focallab_shape_operator(const focallab_submanifold* sub, const double* u, const double* v,
                            double* out) {
  if (int rc = require(sub && u && v && out, "null argument")) return rc;
  return guarded([&] {
    const int n = sub->sub.ambient_dim();
    Mat s = shape_operator(sub->sub, u, Vec(v, v + n));
    for (int i = 0; i < s.nr; ++i)
      for (int j = 0; j < s.nc; ++j) out[i * s.nc + j] = s(i, j);
  });
}

int focallab_ii_norm(const focallab_submanifold* sub, const double* u, double* out) {
  if (int rc = require(sub && u && out, "null argument")) return rc;
  return guarded([&] { *out = second_fundamental_form_norm(sub->sub, u); });
}

int focallab_focal_radius(const focallab_submanifold* sub, const int* grid_counts,
                          int normals_per_point, double t_max, int jobs,
                          double* out_radius) {
  if (int rc = require(sub && grid_counts && out_radius, "null argument")) return rc;
  return guarded([&] {
    std::vector<int> counts(grid_counts, grid_counts + sub->sub.param_dim());
    FocalRadiusResult res = focal_radius(sub->sub, counts, normals_per_point, t_max,
                                         jobs < 1 ? 1 : jobs);
    *out_radius = res.radius ? *res.radius : kNan;
  });
}

int focallab_tube_volume(const focallab_submanifold* sub, double r, const int* grid_counts,
                         int normal_count, int radial_nodes, int jobs, double* out_value,
                         double* out_error, int* out_focal_inside) {
  if (int rc = require(sub && grid_counts && out_value, "null argument")) return rc;
  return guarded([&] {
    TubeQuadrature quad;
    quad.param_counts.assign(grid_counts, grid_counts + sub->sub.param_dim());
    quad.normal_count = normal_count;
    quad.radial_nodes = radial_nodes;
    quad.jobs = jobs < 1 ? 1 : jobs;
    TubeVolume tv = tube_volume(sub->sub, r, quad);
    *out_value = tv.value;
    if (out_error) *out_error = tv.error_estimate;
    if (out_focal_inside) *out_focal_inside = tv.focal_inside ? 1 : 0;
  });
}

/* ------------------------------------------------------------------ */
/* Scenario reports                                                    */
/* ------------------------------------------------------------------ */

int focallab_catalog_json(char** out_json) {
  if (int rc = require(out_json != nullptr, "null out_json")) return rc;
  return guarded([&] { *out_json = dup_string(catalog_json()); });
}

int focallab_run(const char* command, const char* scenario_id, const char* const* keys,
                 const double* values, int n_overrides, int jobs, int timings,
                 char** out_json, int* out_pass) {
  if (int rc = require(command && scenario_id && out_json &&
                           (n_overrides == 0 || (keys && values)) && n_overrides >= 0,
                       "need command, scenario_id, out_json, override arrays"))
    return rc;
  return guarded([&] {
    RunOptions opts;
    for (int i = 0; i < n_overrides; ++i) {
      if (!keys[i]) raise(ErrorCode::BadConfig, "override key is null");
      opts.overrides[keys[i]] = values[i];
    }
    opts.jobs = jobs < 1 ? 1 : jobs;
    opts.timings = timings != 0;

    const std::string cmd = command;
    const std::string id = scenario_id;
    int pass = -1;
    std::string json;
    if (cmd == "scenario") {
      ScenarioRun run = run_scenario(id, opts);
      pass = run.pass ? 1 : 0;
      json = scenario_report_json(run);
    } else if (cmd.rfind("verify:", 0) == 0) {
      opts.only = {verify_bound_to_check(id, cmd.substr(7))};
      ScenarioRun run = run_scenario(id, opts);
      pass = run.pass ? 1 : 0;
      json = scenario_report_json(run);
    } else if (cmd == "curvature") {
      json = curvature_table_json(id, opts);
    } else if (cmd == "focal") {
      json = focal_scan_json(id, opts);
    } else if (cmd == "shape") {
      json = shape_table_json(id, opts);
    } else if (cmd == "tube") {
      json = tube_report_json(id, opts);
    } else {
      raise(ErrorCode::BadConfig, "unknown command '" + cmd + "'");
    }
    *out_json = dup_string(json);
    if (out_pass) *out_pass = pass;
  });
}

} /* extern "C" */
