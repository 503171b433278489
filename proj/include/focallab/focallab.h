#ifndef FOCALLAB_H
#define FOCALLAB_H

/*
 * focallab — numerical comparison-geometry laboratory.
 *
 * C interface to the core library: coordinate charts with metric callbacks,
 * embedded submanifolds, geodesics, curvature queries, focal/conjugate radius
 * estimation, tube volumes, and the built-in verification scenario catalog.
 *
 * Conventions:
 *   - All functions returning `int` yield FOCALLAB_OK (0) on success and a
 *     FOCALLAB_ERR_* code on failure; focallab_last_error_message() describes
 *     the most recent failure on the calling thread.
 *   - Matrices are row-major double arrays.
 *   - Strings returned through `char**` are heap-allocated; release them with
 *     focallab_string_free().
 *   - Handles are opaque; each *_create has a matching *_free.  Handles are
 *     immutable after creation and may be shared across threads.
 */

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#define FOCALLAB_API __attribute__((visibility("default")))

/* ------------------------------------------------------------------ */
/* Status codes                                                        */
/* ------------------------------------------------------------------ */

enum {
  FOCALLAB_OK = 0,
  FOCALLAB_ERR_INVALID_ARGUMENT = 1,
  FOCALLAB_ERR_STEP_UNDERFLOW = 2,
  FOCALLAB_ERR_NON_FINITE_RHS = 3,
  FOCALLAB_ERR_NOT_SQUARE = 4,
  FOCALLAB_ERR_NON_SYMMETRIC = 5,
  FOCALLAB_ERR_DEGENERATE_SPAN = 6,
  FOCALLAB_ERR_NO_SIGN_CHANGE = 7,
  FOCALLAB_ERR_METRIC_NOT_PD = 8,
  FOCALLAB_ERR_DEGENERATE_PLANE = 9,
  FOCALLAB_ERR_K_OUT_OF_RANGE = 10,
  FOCALLAB_ERR_LEFT_CHART_DOMAIN = 11,
  FOCALLAB_ERR_RANK_DEFICIENT_EMBEDDING = 12,
  FOCALLAB_ERR_NOT_NORMAL = 13,
  FOCALLAB_ERR_NOT_LAGRANGIAN = 14,
  FOCALLAB_ERR_SINGULAR_AT_T = 15,
  FOCALLAB_ERR_POLE_AT_T = 16,
  FOCALLAB_ERR_BEYOND_BLOWUP = 17,
  FOCALLAB_ERR_HYPOTHESIS_VIOLATED = 18,
  FOCALLAB_ERR_SINGULAR_GRID = 19,
  FOCALLAB_ERR_NOT_INFINITE_FOCAL = 20,
  FOCALLAB_ERR_UNKNOWN_SCENARIO = 21,
  FOCALLAB_ERR_BAD_CONFIG = 22,
  FOCALLAB_ERR_INTERNAL = 23
};

/* Library version string ("MAJOR.MINOR.PATCH"). */
FOCALLAB_API const char* focallab_version(void);

/* Code and message of the last failure on this thread (message valid until
 * the next failing focallab call on the same thread). */
FOCALLAB_API int focallab_last_error_code(void);
FOCALLAB_API const char* focallab_last_error_message(void);

FOCALLAB_API void focallab_string_free(char* s);

/* ------------------------------------------------------------------ */
/* Charts                                                              */
/* ------------------------------------------------------------------ */

typedef struct focallab_chart focallab_chart;

/* Writes the dim x dim metric tensor at x into g (row-major). */
typedef void (*focallab_metric_fn)(const double* x, double* g, void* user);
/* Returns nonzero when x lies inside the chart domain. */
typedef int (*focallab_domain_fn)(const double* x, void* user);

/* Chart from a user metric callback.  `domain` may be NULL (all of R^dim).
 * The callback must remain valid for the lifetime of the chart; metric
 * derivatives are taken by central differences. */
FOCALLAB_API int focallab_chart_create(int dim, focallab_metric_fn metric,
                                       focallab_domain_fn domain, void* user,
                                       focallab_chart** out);

/* Built-in constant-curvature charts: kind is "euclidean" (flat),
 * "sphere" (round sphere of the given radius, stereographic coordinates), or
 * "hyperbolic" (curvature -1 Poincare ball; radius ignored). */
FOCALLAB_API int focallab_chart_create_builtin(const char* kind, int dim, double radius,
                                               focallab_chart** out);

FOCALLAB_API void focallab_chart_free(focallab_chart* chart);
FOCALLAB_API int focallab_chart_dim(const focallab_chart* chart);

/* Sectional curvature of the plane spanned by u, w at x. */
FOCALLAB_API int focallab_sectional_curvature(const focallab_chart* chart, const double* x,
                                              const double* u, const double* w, double* out);

/* k-direction partial Ricci trace at x along v: the minimum over orthonormal
 * k-frames orthogonal to v of the summed sectional curvatures. */
FOCALLAB_API int focallab_ric_k(const focallab_chart* chart, const double* x, const double* v,
                                int k, double* out);

/* First conjugate time from x, minimized over `directions` unit directions;
 * writes NaN when no conjugate point occurs within t_max. */
FOCALLAB_API int focallab_conjugate_radius(const focallab_chart* chart, const double* x,
                                           int directions, double t_max, int jobs,
                                           double* out_radius);

/* ------------------------------------------------------------------ */
/* Geodesics                                                           */
/* ------------------------------------------------------------------ */

typedef struct focallab_geodesic focallab_geodesic;

/* Unit-speed geodesic from x0 in direction v0 (normalized internally),
 * integrated on [0, t_end] with a parallel orthonormal frame. */
FOCALLAB_API int focallab_geodesic_create(const focallab_chart* chart, const double* x0,
                                          const double* v0, double t_end,
                                          focallab_geodesic** out);
FOCALLAB_API void focallab_geodesic_free(focallab_geodesic* geo);

/* Position and velocity at t in [0, t_end]; either output may be NULL. */
FOCALLAB_API int focallab_geodesic_sample(const focallab_geodesic* geo, double t, double* x,
                                          double* v);

/* ------------------------------------------------------------------ */
/* Embedded submanifolds                                               */
/* ------------------------------------------------------------------ */

typedef struct focallab_submanifold focallab_submanifold;

/* Writes the chart coordinates F(u) of the parameter point u. */
typedef void (*focallab_embed_fn)(const double* u, double* x, void* user);

/* Submanifold of the chart given by an embedding callback on the parameter
 * box [lo, hi] (per-dimension); periodic[i] nonzero marks a periodic
 * parameter direction.  The chart handle is copied internally and may be
 * freed afterwards; the callback must outlive the submanifold. */
FOCALLAB_API int focallab_submanifold_create(const focallab_chart* chart, int param_dim,
                                             focallab_embed_fn embed, void* user,
                                             const double* lo, const double* hi,
                                             const int* periodic,
                                             focallab_submanifold** out);
FOCALLAB_API void focallab_submanifold_free(focallab_submanifold* sub);

/* Shape operator <II(.,.), v> at parameter point u in an orthonormal tangent
 * basis, for a unit normal v (chart coordinates); writes param_dim^2 values
 * row-major.  Sign: the inward normal of a round sphere in flat space gives
 * +1/radius times the identity. */
FOCALLAB_API int focallab_shape_operator(const focallab_submanifold* sub, const double* u,
                                         const double* v, double* out);

/* Largest-singular-value norm of the second fundamental form at u, maximized
 * over unit normals. */
FOCALLAB_API int focallab_ii_norm(const focallab_submanifold* sub, const double* u,
                                  double* out);

/* Focal radius estimated over a deterministic grid of footpoints
 * (grid_counts: param_dim entries) and unit normals; writes NaN when no
 * focal point occurs within t_max on any sampled normal geodesic. */
FOCALLAB_API int focallab_focal_radius(const focallab_submanifold* sub,
                                       const int* grid_counts, int normals_per_point,
                                       double t_max, int jobs, double* out_radius);

/* Volume of the tube of radius r by quadrature of the normal-exponential
 * Jacobian.  out_error receives a half-resolution error estimate and
 * out_focal_inside is set nonzero when a focal point lies inside the tube
 * (any output pointer may be NULL). */
FOCALLAB_API int focallab_tube_volume(const focallab_submanifold* sub, double r,
                                      const int* grid_counts, int normal_count,
                                      int radial_nodes, int jobs, double* out_value,
                                      double* out_error, int* out_focal_inside);

/* ------------------------------------------------------------------ */
/* Scenario catalog and reports                                        */
/* ------------------------------------------------------------------ */

/* JSON description of every built-in scenario (ids, summaries, hypotheses,
 * default parameters, checks, expected values with their derivations). */
FOCALLAB_API int focallab_catalog_json(char** out_json);

/* Runs `command` on a catalog scenario and returns the JSON report.
 *
 * Commands: "scenario" (all checks), "curvature", "focal", "shape", "tube",
 * and "verify:<name>" with <name> one of shape-bound, comparison-lemma,
 * focal-pi2, soul, conjugate-radius (runs exactly that check).
 *
 * Overrides are (keys[i], values[i]) pairs matched strictly against the
 * scenario's declared parameters; unknown keys fail with
 * FOCALLAB_ERR_BAD_CONFIG.  jobs <= 0 means 1.  `timings` nonzero adds
 * wall-clock times to the report (re-runs then differ byte-for-byte).
 *
 * When out_pass is non-NULL it receives 1 if every executed check passed,
 * 0 if some check failed, and -1 when the command carries no checks
 * (catalog/curvature/focal/shape/tube reports). */
FOCALLAB_API int focallab_run(const char* command, const char* scenario_id,
                              const char* const* keys, const double* values,
                              int n_overrides, int jobs, int timings, char** out_json,
                              int* out_pass);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* FOCALLAB_H */
