#pragma once

// Inequality verifiers.  Each returns a VerifierReport whose samples encode
// one inequality (or equality) instance; all refuse to run on data that does
// not satisfy their curvature hypothesis (HypothesisViolated) so that a pass
// is never vacuous.

#include <optional>

#include "comparison/model.hpp"
#include "comparison/report.hpp"
#include "jacobi/focal.hpp"

namespace focallab {

struct CurvatureHypothesis {
  double kappa = 0.0;  // lower curvature bound
  int k = 1;           // number of directions in the trace
};

struct SampleSpec {
  std::vector<int> grid_counts;  // parameter samples per submanifold dimension
  int normals_per_point = 8;     // unit normal directions (codim >= 2)
  int jobs = 1;
};

// Trace comparison along one evolution: with lambda0 = min_trace_k(t0)/k
// matched at the first grid time, checks
//   min_trace_k(t) <= k * model(t - t0) + tol
// at every later grid time before min(model blow-up, first focal time).
// Requires the k smallest eigenvalues of R(t) to sum to at least k*kappa
// (sampled on the grid).
VerifierReport verify_comparison_lemma(const JacobiEvolution& evol,
                                       const CurvatureHypothesis& hyp,
                                       const std::vector<double>& grid,
                                       double tolerance = 1e-6);

// Shape-operator bound: for each sampled footpoint u and unit normal v, with
// r the first focal time of the submanifold family along +v or -v (T_max when
// none is found), checks
//   max(|min k-trace of S_v|, |max k-trace of S_v|) <= k * ct_kappa(r) + tol.
VerifierReport verify_shape_bound(const EmbeddedSubmanifold& sub,
                                  const CurvatureHypothesis& hyp, const SampleSpec& spec,
                                  double t_max, double tolerance = 1e-6,
                                  const OdeOptions& geo_ode = {},
                                  const OdeOptions& jac_ode = default_jacobi_ode());

// kappa = 1 focal bounds: every sampled normal geodesic carries at least
// dim N - k + 1 focal points (multiplicity counted, both directions) with
// |t| <= pi/2 + tol, and the focal radius over the samples is <= pi/2 + tol.
VerifierReport verify_focal_pi_over_2(const EmbeddedSubmanifold& sub,
                                      const CurvatureHypothesis& hyp, const SampleSpec& spec,
                                      double tolerance = 1e-6,
                                      const OdeOptions& geo_ode = {},
                                      const OdeOptions& jac_ode = default_jacobi_ode());

// Checks for submanifolds with no focal point up to t_max (raises
// NotInfiniteFocal otherwise): (a) |II| below tol at every sampled footpoint,
// (b) the normal strip spanned by a parallel unit normal field along the
// submanifold has ambient sectional curvature below tol in absolute value,
// (c) radial curvature operators along normal geodesics have smallest
// eigenvalue >= -tol.
VerifierReport soul_checks(const EmbeddedSubmanifold& sub, double t_max,
                           const SampleSpec& spec, double tolerance = 1e-7,
                           const OdeOptions& geo_ode = {},
                           const OdeOptions& jac_ode = default_jacobi_ode());

// Evolved A(t) against the constant-curvature closed form
// cn_kappa(t) A0 + sn_kappa(t) A0' (max-abs entry difference per time).
VerifierReport verify_model_jacobi(const JacobiEvolution& evol, double kappa,
                                   const std::vector<double>& times, double tolerance = 1e-6);

// Wronskian defect max_t |A'^T A - A^T A'| at the given times (self-adjoint
// Riccati check).
VerifierReport verify_wronskian(const JacobiEvolution& evol, const std::vector<double>& times,
                                double tolerance = 1e-8);

struct TubeQuadrature {
  std::vector<int> param_counts;
  int normal_count = 16;  // used when codim >= 2
  int radial_nodes = 32;
  int jobs = 1;
};

struct TubeVolume {
  double value = 0.0;
  double error_estimate = 0.0;  // difference against a half-resolution pass
  bool focal_inside = false;    // a focal point was detected at distance < r
};

// Volume of the tube of radius r around the submanifold by quadrature of
// |det A_v(t)| over footpoints, unit normals, and the radial parameter.
TubeVolume tube_volume(const EmbeddedSubmanifold& sub, double r, const TubeQuadrature& quad,
                       const OdeOptions& geo_ode = {},
                       const OdeOptions& jac_ode = default_jacobi_ode());

struct ConjugateSample {
  Vec direction;
  std::optional<double> first_conjugate;
};

struct ConjugateRadiusResult {
  std::optional<double> radius;  // empty = no conjugate point within t_max
  int argmin = -1;
  std::vector<ConjugateSample> samples;
  double t_max = 0.0;
};

// First zero of det A(t) for point-source families (A(0)=0, A'(0)=Id) from x,
// minimized over a deterministic set of unit directions.
ConjugateRadiusResult base_conjugate_radius(const Chart& chart, const Vec& x,
                                            int direction_count, double t_max, int jobs = 1,
                                            const OdeOptions& geo_ode = {},
                                            const OdeOptions& jac_ode = default_jacobi_ode());

// Gauss-Legendre nodes/weights on [-1, 1] (ascending nodes).
std::vector<std::pair<double, double>> gauss_legendre(int n);

}  // namespace focallab
