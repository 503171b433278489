#include "comparison/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "manifold/curvature.hpp"
#include "numerics/rootfind.hpp"
#include "support/parallel.hpp"

namespace focallab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Samples the k smallest eigenvalue sum of the radial curvature operator
// along the geodesic and raises HypothesisViolated when it undercuts
// k * kappa beyond tolerance.
void check_hypothesis_along(const FramedGeodesic& geo, const CurvatureHypothesis& hyp,
                            const std::vector<double>& times) {
  const double tol = 1e-6 * std::max(1.0, std::abs(hyp.k * hyp.kappa));
  for (double t : times) {
    const Mat r = geo.curvature_operator(t);
    if (hyp.k < 1 || hyp.k > r.nr)
      raise(ErrorCode::KOutOfRange, "hypothesis k exceeds the frame dimension");
    const SymEigen eig = sym_eigen(r, 1e-6);
    double sum = 0.0;
    for (int i = 0; i < hyp.k; ++i) sum += eig.values[i];
    if (sum < hyp.k * hyp.kappa - tol) {
      std::ostringstream os;
      os << "sampled curvature sum " << sum << " at t = " << t << " undercuts "
         << hyp.k * hyp.kappa;
      raise(ErrorCode::HypothesisViolated, os.str());
    }
  }
}

std::vector<double> span_times(double t_max, int count) {
  std::vector<double> ts(count);
  for (int i = 0; i < count; ++i) ts[i] = t_max * (double)i / (count - 1);
  return ts;
}

std::vector<std::pair<std::string, double>> point_params(const Vec& u, const Vec& v) {
  std::vector<std::pair<std::string, double>> p;
  for (size_t a = 0; a < u.size(); ++a) p.emplace_back("u" + std::to_string(a), u[a]);
  for (size_t i = 0; i < v.size(); ++i) p.emplace_back("v" + std::to_string(i), v[i]);
  return p;
}

struct NormalJob {
  Vec u;
  Vec normal;
};

std::vector<NormalJob> normal_jobs(const EmbeddedSubmanifold& sub,
                                   const std::vector<int>& grid_counts, int normals_per_point) {
  std::vector<NormalJob> jobs;
  for (const Vec& u : parameter_grid(sub, grid_counts)) {
    const NormalFrame frame = tangent_normal_split(sub, u.data());
    const Mat g = sub.chart().metric(frame.point.data());
    for (Vec& d : normal_directions(frame, g, normals_per_point))
      jobs.push_back({u, std::move(d)});
  }
  return jobs;
}

}  // namespace

VerifierReport verify_comparison_lemma(const JacobiEvolution& evol,
                                       const CurvatureHypothesis& hyp,
                                       const std::vector<double>& grid, double tolerance) {
  VerifierReport report;
  report.check_name = "comparison_lemma";
  report.tolerance = tolerance;

  if (grid.size() < 2) raise(ErrorCode::InvalidArgument, "comparison grid needs two points");
  for (size_t i = 0; i + 1 < grid.size(); ++i)
    if (!(grid[i] < grid[i + 1]))
      raise(ErrorCode::InvalidArgument, "comparison grid must increase strictly");
  if (grid.front() <= 0.0 || grid.back() > evol.t_end() + 1e-12)
    raise(ErrorCode::InvalidArgument, "comparison grid must lie in (0, t_end]");

  check_hypothesis_along(evol.family().geodesic, hyp, grid);

  const double t0 = grid.front();
  double lambda0 = 0.0;
  try {
    lambda0 = min_trace_k(evol, t0, hyp.k) / hyp.k;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::SingularAtT)
      raise(ErrorCode::SingularGrid, "evolution is singular at the matching grid point");
    throw;
  }
  const ModelRiccati model = model_riccati(hyp.kappa, lambda0);

  double first_focal = kInf;
  for (const FocalPoint& fp : focal_report(evol, grid.back()).focal_points)
    if (fp.t > t0 + 1e-9) {
      first_focal = fp.t;
      break;
    }
  const double t_stop = std::min(t0 + model.blow_up, first_focal);

  report.quantities.emplace_back("lambda0", lambda0);
  report.quantities.emplace_back("blow_up_time", t0 + model.blow_up);

  // Conditioning guard: the scalar Riccati flow amplifies phase error by
  // 1 + lambda^2, so once either side exceeds ~15 per eigenvalue a
  // double-precision evolution cannot resolve a 1e-6 margin; both sides
  // diverge together toward the common pole, so such points carry no
  // information and are skipped.
  const double trace_cap = 15.0 * hyp.k;
  for (size_t i = 1; i < grid.size(); ++i) {
    const double t = grid[i];
    if (t >= t_stop - 1e-8 * std::max(1.0, std::abs(t0))) break;
    double lhs = 0.0;
    try {
      lhs = min_trace_k(evol, t, hyp.k);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::SingularAtT) continue;
      throw;
    }
    const double rhs = hyp.k * model.value(t - t0);
    if (std::abs(lhs) > trace_cap || std::abs(rhs) > trace_cap) continue;
    report.samples.push_back(inequality_sample({{"t", t}}, lhs, rhs, tolerance));
  }

  finalize_report(report);
  return report;
}

VerifierReport verify_shape_bound(const EmbeddedSubmanifold& sub, const CurvatureHypothesis& hyp,
                                  const SampleSpec& spec, double t_max, double tolerance,
                                  const OdeOptions& geo_ode, const OdeOptions& jac_ode) {
  VerifierReport report;
  report.check_name = "shape_bound";
  report.tolerance = tolerance;

  if (hyp.k < 1 || hyp.k > sub.param_dim())
    raise(ErrorCode::KOutOfRange, "hypothesis k must lie in [1, dim N]");

  const std::vector<NormalJob> jobs = normal_jobs(sub, spec.grid_counts, spec.normals_per_point);
  std::vector<CheckSample> samples(jobs.size());

  parallel_for(jobs.size(), spec.jobs, [&](size_t i) {
    const NormalJob& job = jobs[i];
    const NormalFrame frame = tangent_normal_split(sub, job.u.data());
    const Mat s = shape_operator_in_frame(sub, job.u.data(), job.normal, frame);
    const TraceExtremes ext = partial_trace_extremes(s, hyp.k);
    const double lhs = std::max(-ext.min_sum, ext.max_sum);

    LagrangianFamily fam = lambda_n(sub, job.u.data(), job.normal, t_max, geo_ode);
    check_hypothesis_along(fam.geodesic, hyp, span_times(t_max, 5));
    LagrangianFamily rev = reversed_family(fam, t_max, geo_ode);

    const auto forward = first_focal_along(std::move(fam), t_max, jac_ode);
    const auto backward = first_focal_along(std::move(rev), t_max, jac_ode);
    double r = t_max;
    if (forward) r = std::min(r, *forward);
    if (backward) r = std::min(r, *backward);

    const double rhs = hyp.k * ct_kappa(hyp.kappa, r);
    auto params = point_params(job.u, job.normal);
    params.emplace_back("focal_radius", r);
    samples[i] = inequality_sample(std::move(params), lhs, rhs, tolerance);
  });

  report.samples = std::move(samples);
  finalize_report(report);
  return report;
}

VerifierReport verify_focal_pi_over_2(const EmbeddedSubmanifold& sub,
                                      const CurvatureHypothesis& hyp, const SampleSpec& spec,
                                      double tolerance, const OdeOptions& geo_ode,
                                      const OdeOptions& jac_ode) {
  VerifierReport report;
  report.check_name = "focal_pi_over_2";
  report.tolerance = tolerance;

  if (hyp.kappa <= 0.0)
    raise(ErrorCode::InvalidArgument, "focal window bound needs a positive curvature bound");
  if (hyp.k < 1 || hyp.k > sub.param_dim())
    raise(ErrorCode::KOutOfRange, "hypothesis k must lie in [1, dim N]");

  const double window = M_PI / (2.0 * std::sqrt(hyp.kappa));
  const double scan = window * 1.02;
  const int required = sub.param_dim() - hyp.k + 1;

  const std::vector<NormalJob> jobs = normal_jobs(sub, spec.grid_counts, spec.normals_per_point);
  std::vector<CheckSample> samples(jobs.size());
  std::vector<double> line_radius(jobs.size());

  parallel_for(jobs.size(), spec.jobs, [&](size_t i) {
    const NormalJob& job = jobs[i];
    LagrangianFamily fam = lambda_n(sub, job.u.data(), job.normal, scan, geo_ode);
    check_hypothesis_along(fam.geodesic, hyp, span_times(scan, 5));
    LagrangianFamily rev = reversed_family(fam, scan, geo_ode);

    int count = 0;
    double first = kInf;
    for (LagrangianFamily* f : {&fam, &rev}) {
      const JacobiEvolution ev = evolve(std::move(*f), scan, jac_ode);
      for (const FocalPoint& fp : focal_report(ev, scan).focal_points) {
        if (fp.t <= window + 1e-6) count += fp.multiplicity;
        first = std::min(first, fp.t);
      }
    }
    line_radius[i] = first;

    auto params = point_params(job.u, job.normal);
    params.emplace_back("focal_count", (double)count);
    samples[i] = inequality_sample(std::move(params), (double)required, (double)count, 0.0);
  });

  double radius = kInf;
  for (double r : line_radius) radius = std::min(radius, r);

  report.samples = std::move(samples);
  report.samples.push_back(
      inequality_sample({{"focal_radius", radius}}, radius, window, tolerance));
  report.quantities.emplace_back("focal_radius", radius);
  report.quantities.emplace_back("window", window);

  finalize_report(report);
  return report;
}

VerifierReport soul_checks(const EmbeddedSubmanifold& sub, double t_max, const SampleSpec& spec,
                           double tolerance, const OdeOptions& geo_ode,
                           const OdeOptions& jac_ode) {
  VerifierReport report;
  report.check_name = "soul_checks";
  report.tolerance = tolerance;

  const FocalRadiusResult scan = focal_radius(sub, spec.grid_counts, spec.normals_per_point,
                                              t_max, spec.jobs, geo_ode, jac_ode);
  if (scan.radius) {
    std::ostringstream os;
    os << "focal point found at t = " << *scan.radius << " (scan to " << t_max << ")";
    raise(ErrorCode::NotInfiniteFocal, os.str());
  }
  report.quantities.emplace_back("focal_scan_t_max", t_max);

  // (a) vanishing second fundamental form at every sampled footpoint.
  const std::vector<Vec> grid = parameter_grid(sub, spec.grid_counts);
  for (const Vec& u : grid) {
    const double lhs = second_fundamental_form_norm(sub, u.data());
    auto params = point_params(u, {});
    params.emplace_back("part", 1.0);
    report.samples.push_back(equality_sample(std::move(params), lhs, 0.0, tolerance));
  }

  // (b) curvature of the strip swept by a parallel unit normal field along a
  // one-dimensional submanifold (closed geodesic scenarios).
  if (sub.param_dim() == 1) {
    const double h = 1e-4;
    auto strip_geodesic = [&](double s, double span) {
      const NormalFrame f = tangent_normal_split(sub, &s);
      return normal_exp(sub, &s, f.normal[0], span, geo_ode);
    };
    for (const Vec& u : grid) {
      const double s = u[0];
      const FramedGeodesic center = strip_geodesic(s, t_max);
      const FramedGeodesic plus = strip_geodesic(s + h, t_max);
      const FramedGeodesic minus = strip_geodesic(s - h, t_max);
      for (int j = 1; j <= 5; ++j) {
        const double t = t_max * (double)j / 5.0;
        const GeodesicState st = center.at(t);
        Vec du(sub.ambient_dim());
        Vec xp(sub.ambient_dim()), xm(sub.ambient_dim());
        plus.position(t, xp.data());
        minus.position(t, xm.data());
        for (int c = 0; c < sub.ambient_dim(); ++c) du[c] = (xp[c] - xm[c]) / (2.0 * h);
        const double sec = sectional_curvature(sub.chart(), st.x.data(), du, st.v);
        report.samples.push_back(
            equality_sample({{"part", 2.0}, {"s", s}, {"t", t}}, std::abs(sec), 0.0, tolerance));
      }
    }
  }

  // (c) radial curvature operators along the scanned normal geodesics.
  for (const Vec& u : grid) {
    const NormalFrame frame = tangent_normal_split(sub, u.data());
    const Mat g = sub.chart().metric(frame.point.data());
    for (const Vec& v : normal_directions(frame, g, spec.normals_per_point)) {
      const LagrangianFamily fam = lambda_n(sub, u.data(), v, t_max, geo_ode);
      for (int j = 1; j <= 4; ++j) {
        const double t = t_max * (double)j / 4.0;
        const SymEigen eig = sym_eigen(fam.geodesic.curvature_operator(t), 1e-6);
        auto params = point_params(u, v);
        params.emplace_back("part", 3.0);
        params.emplace_back("t", t);
        report.samples.push_back(
            inequality_sample(std::move(params), -eig.values.front(), 0.0, tolerance));
      }
    }
  }

  finalize_report(report);
  return report;
}

VerifierReport verify_model_jacobi(const JacobiEvolution& evol, double kappa,
                                   const std::vector<double>& times, double tolerance) {
  VerifierReport report;
  report.check_name = "model_jacobi";
  report.tolerance = tolerance;
  const Mat& a0 = evol.family().a0;
  const Mat& a0p = evol.family().a0prime;
  for (double t : times) {
    const double diff = max_abs(evol.a(t) - model_jacobi(kappa, a0, a0p, t));
    report.samples.push_back(equality_sample({{"t", t}}, diff, 0.0, tolerance));
  }
  finalize_report(report);
  return report;
}

VerifierReport verify_wronskian(const JacobiEvolution& evol, const std::vector<double>& times,
                                double tolerance) {
  VerifierReport report;
  report.check_name = "wronskian";
  report.tolerance = tolerance;
  for (double t : times)
    report.samples.push_back(
        equality_sample({{"t", t}}, evol.wronskian_defect(t), 0.0, tolerance));
  finalize_report(report);
  return report;
}

namespace {

struct TubePass {
  double value = 0.0;
  bool focal_inside = false;
};

TubePass tube_pass(const EmbeddedSubmanifold& sub, double r, const std::vector<int>& counts,
                   int normal_count, int radial_nodes, int jobs, const OdeOptions& geo_ode,
                   const OdeOptions& jac_ode) {
  const int m = sub.param_dim();
  const int codim = sub.codim();
  if (codim > 3)
    raise(ErrorCode::InvalidArgument, "tube quadrature supports codimension <= 3");

  // Parameter-cell weights matching parameter_grid's node layout (last axis
  // fastest): rectangle rule on periodic axes, trapezoid otherwise.
  const ParamDomain& dom = sub.domain();
  std::vector<std::vector<double>> waxes(m);
  for (int a = 0; a < m; ++a) {
    const int c = std::max(1, counts[a]);
    const double len = dom.hi[a] - dom.lo[a];
    for (int i = 0; i < c; ++i) {
      double w;
      if (dom.periodic[a])
        w = len / c;
      else if (c == 1)
        w = len;
      else
        w = (len / (c - 1)) * ((i == 0 || i == c - 1) ? 0.5 : 1.0);
      waxes[a].push_back(w);
    }
  }
  const std::vector<Vec> grid = parameter_grid(sub, counts);

  struct Job {
    Vec u;
    Vec normal;
    double weight;  // parameter cell x density x normal measure
  };
  std::vector<Job> jobs_list;
  for (size_t gi = 0; gi < grid.size(); ++gi) {
    // decompose the flat grid index into per-axis indices
    size_t rem = gi;
    double cell = 1.0;
    for (int a = m - 1; a >= 0; --a) {
      const size_t c = waxes[a].size();
      cell *= waxes[a][rem % c];
      rem /= c;
    }
    const Vec& u = grid[gi];
    const NormalFrame frame = tangent_normal_split(sub, u.data());
    const Mat g = sub.chart().metric(frame.point.data());
    const Mat jac = sub.jacobian(u.data());
    Mat gram(m, m);
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) {
        double acc = 0.0;
        for (int i = 0; i < sub.ambient_dim(); ++i)
          for (int j = 0; j < sub.ambient_dim(); ++j)
            acc += jac(i, a) * g(i, j) * jac(j, b);
        gram(a, b) = acc;
      }
    const double density = std::sqrt(std::max(0.0, determinant(gram)));

    if (codim == 1) {
      for (int sgn : {1, -1}) {
        Vec v(frame.normal[0]);
        for (double& e : v) e *= sgn;
        jobs_list.push_back({u, std::move(v), cell * density});
      }
    } else if (codim == 2) {
      const int c = std::max(4, normal_count);
      for (int i = 0; i < c; ++i) {
        const double th = 2.0 * M_PI * (i + 0.5) / c;
        Vec v(sub.ambient_dim(), 0.0);
        for (int j = 0; j < sub.ambient_dim(); ++j)
          v[j] = std::cos(th) * frame.normal[0][j] + std::sin(th) * frame.normal[1][j];
        jobs_list.push_back({u, std::move(v), cell * density * (2.0 * M_PI / c)});
      }
    } else {
      const int c = std::max(8, normal_count);
      const double golden = (1.0 + std::sqrt(5.0)) / 2.0;
      for (int i = 0; i < c; ++i) {
        const double z = 1.0 - (2.0 * i + 1.0) / c;
        const double rr = std::sqrt(std::max(0.0, 1.0 - z * z));
        const double th = 2.0 * M_PI * i / golden;
        Vec v(sub.ambient_dim(), 0.0);
        for (int j = 0; j < sub.ambient_dim(); ++j)
          v[j] = rr * std::cos(th) * frame.normal[0][j] + rr * std::sin(th) * frame.normal[1][j] +
                 z * frame.normal[2][j];
        jobs_list.push_back({u, std::move(v), cell * density * (4.0 * M_PI / c)});
      }
    }
  }

  const auto gl = gauss_legendre(std::max(4, radial_nodes));
  std::vector<double> contrib(jobs_list.size(), 0.0);
  std::vector<char> focal_flags(jobs_list.size(), 0);

  parallel_for(jobs_list.size(), jobs, [&](size_t i) {
    const Job& job = jobs_list[i];
    LagrangianFamily fam = lambda_n(sub, job.u.data(), job.normal, r, geo_ode);
    const JacobiEvolution ev = evolve(std::move(fam), r, jac_ode);
    const FocalReport fr = focal_report(ev, r);
    if (fr.first_focal_time && *fr.first_focal_time < r * (1.0 - 1e-9)) focal_flags[i] = 1;
    double acc = 0.0;
    for (const auto& [node, weight] : gl) {
      const double t = 0.5 * r * (node + 1.0);
      acc += 0.5 * r * weight * std::abs(determinant(ev.a(t)));
    }
    contrib[i] = job.weight * acc;
  });

  TubePass pass;
  for (size_t i = 0; i < contrib.size(); ++i) {
    pass.value += contrib[i];
    if (focal_flags[i]) pass.focal_inside = true;
  }
  return pass;
}

}  // namespace

TubeVolume tube_volume(const EmbeddedSubmanifold& sub, double r, const TubeQuadrature& quad,
                       const OdeOptions& geo_ode, const OdeOptions& jac_ode) {
  if (r <= 0.0) raise(ErrorCode::InvalidArgument, "tube radius must be positive");
  if (quad.param_counts.size() != (size_t)sub.param_dim())
    raise(ErrorCode::InvalidArgument, "tube quadrature needs one count per parameter");

  const TubePass full = tube_pass(sub, r, quad.param_counts, quad.normal_count,
                                  quad.radial_nodes, quad.jobs, geo_ode, jac_ode);
  std::vector<int> half_counts;
  for (int c : quad.param_counts) half_counts.push_back(std::max(2, c / 2));
  const TubePass half = tube_pass(sub, r, half_counts, std::max(4, quad.normal_count / 2),
                                  std::max(4, quad.radial_nodes / 2), quad.jobs, geo_ode, jac_ode);

  TubeVolume out;
  out.value = full.value;
  out.error_estimate = std::abs(full.value - half.value);
  out.focal_inside = full.focal_inside;
  return out;
}

ConjugateRadiusResult base_conjugate_radius(const Chart& chart, const Vec& x,
                                            int direction_count, double t_max, int jobs,
                                            const OdeOptions& geo_ode,
                                            const OdeOptions& jac_ode) {
  if ((int)x.size() != chart.dim())
    raise(ErrorCode::InvalidArgument, "base point dimension mismatch");
  const Mat g = chart.metric(x.data());
  NormalFrame pseudo;
  pseudo.point = x;
  pseudo.normal = complete_orthonormal_basis(g, {});
  const std::vector<Vec> dirs = normal_directions(pseudo, g, direction_count);

  ConjugateRadiusResult result;
  result.t_max = t_max;
  result.samples.resize(dirs.size());

  parallel_for(dirs.size(), jobs, [&](size_t i) {
    GeodesicOptions opts;
    opts.ode = geo_ode;
    FramedGeodesic geo = integrate_geodesic(chart, x, dirs[i], t_max, opts);
    ConjugateSample s;
    s.direction = dirs[i];
    s.first_conjugate = first_focal_along(point_source_family(std::move(geo)), t_max, jac_ode);
    result.samples[i] = std::move(s);
  });

  for (size_t i = 0; i < result.samples.size(); ++i) {
    const auto& f = result.samples[i].first_conjugate;
    if (f && (!result.radius || *f < *result.radius)) {
      result.radius = *f;
      result.argmin = (int)i;
    }
  }
  return result;
}

std::vector<std::pair<double, double>> gauss_legendre(int n) {
  if (n < 1) raise(ErrorCode::InvalidArgument, "quadrature order must be positive");
  std::vector<std::pair<double, double>> out(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (x * p0 - p1) / (x * x - 1.0);
      const double dx = p0 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * pp * pp);
    out[i] = {-x, w};
    out[n - 1 - i] = {x, w};
  }
  return out;
}

}  // namespace focallab
