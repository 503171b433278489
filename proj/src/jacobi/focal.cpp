#include "jacobi/focal.hpp"

#include <algorithm>
#include <cmath>

#include "numerics/rootfind.hpp"
#include "submanifold/embedding.hpp"
#include "support/parallel.hpp"

namespace focallab {

namespace {

double det_at(const JacobiEvolution& evol, double t) {
  return determinant(evol.a(t));
}

double smin_at(const JacobiEvolution& evol, double t) {
  return singular_values(evol.a(t)).front();
}

struct Candidate {
  double t;
  double smin;
};

}  // namespace

FocalReport focal_report(const JacobiEvolution& evol, double t_max,
                         const FocalOptions& options) {
  if (t_max <= 0.0) raise(ErrorCode::InvalidArgument, "focal scan span must be positive");
  if (t_max > evol.t_end() + 1e-12)
    raise(ErrorCode::InvalidArgument, "focal scan exceeds the evolved span");

  const Mat& a0 = evol.family().a0;
  const Vec sv0 = singular_values(a0);
  const bool initial_singular = sv0.front() < 1e-8 * std::max(1.0, frobenius_norm(a0));
  const double t_lo = initial_singular ? std::min(1e-4, 0.5 * t_max) : 0.0;

  const int intervals = std::max(200, (int)std::ceil(50.0 * t_max));
  std::vector<double> ts(intervals + 1), dets(intervals + 1), smins(intervals + 1);
  for (int i = 0; i <= intervals; ++i) {
    ts[i] = t_lo + (t_max - t_lo) * (double)i / intervals;
    const Mat at = evol.a(ts[i]);
    dets[i] = determinant(at);
    smins[i] = singular_values(at).front();
  }

  std::vector<Candidate> cands;
  auto accept_dip = [&](double lo, double hi) {
    const double t = minimize_scalar([&](double x) { return smin_at(evol, x); }, lo, hi, 1e-10);
    const Mat at = evol.a(t);
    const double smin = singular_values(at).front();
    if (smin < 1e-8 * std::max(1.0, frobenius_norm(at))) cands.push_back({t, smin});
  };

  for (int i = 0; i < intervals; ++i) {
    if (dets[i] == 0.0) {
      cands.push_back({ts[i], smins[i]});
      continue;
    }
    if (dets[i] * dets[i + 1] < 0.0) {
      const double t =
          bracketed_root([&](double x) { return det_at(evol, x); }, ts[i], ts[i + 1], 1e-12);
      cands.push_back({t, smin_at(evol, t)});
    }
  }
  if (dets[intervals] == 0.0) cands.push_back({ts[intervals], smins[intervals]});

  // Even-order roots: the determinant touches zero without changing sign, so
  // also chase every interior local minimum of the smallest singular value.
  for (int i = 1; i < intervals; ++i)
    if (smins[i] < smins[i - 1] && smins[i] < smins[i + 1]) accept_dip(ts[i - 1], ts[i + 1]);
  // Trailing edge: a focal point at (or just before) t_max shows up as a
  // monotone dip into the last node.
  if (intervals >= 1 && smins[intervals] < smins[intervals - 1] &&
      smins[intervals] < 1e-8 * std::max(1.0, frobenius_norm(evol.a(t_max))))
    cands.push_back({ts[intervals], smins[intervals]});

  std::sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
    return a.t < b.t || (a.t == b.t && a.smin < b.smin);
  });

  FocalReport report;
  report.t_max = t_max;
  const double merge = options.merge_tol * std::max(1.0, t_max);
  for (size_t i = 0; i < cands.size();) {
    size_t j = i;
    Candidate best = cands[i];
    while (j + 1 < cands.size() && cands[j + 1].t - cands[i].t <= merge) {
      ++j;
      if (cands[j].smin < best.smin) best = cands[j];
    }
    const Mat at = evol.a(best.t);
    const Vec sv = singular_values(at);
    const double scale = std::max(1.0, frobenius_norm(at));
    int mult = 0;
    for (double s : sv)
      if (s < options.det_tol * scale) ++mult;
    report.focal_points.push_back({best.t, std::max(1, mult)});
    report.total_multiplicity += std::max(1, mult);
    i = j + 1;
  }
  if (!report.focal_points.empty()) report.first_focal_time = report.focal_points.front().t;
  return report;
}

std::optional<double> first_focal_along(LagrangianFamily family, double t_max,
                                        const OdeOptions& jac_ode, const FocalOptions& options) {
  const JacobiEvolution evol = evolve(std::move(family), t_max, jac_ode);
  return focal_report(evol, t_max, options).first_focal_time;
}

std::vector<Vec> normal_directions(const NormalFrame& frame, const Mat& g, int count) {
  const int codim = (int)frame.normal.size();
  const int n = (int)frame.point.size();
  (void)g;  // the normal frame is already g-orthonormal
  std::vector<Vec> dirs;
  if (codim == 1) {
    dirs.push_back(frame.normal[0]);
    Vec neg(n);
    for (int i = 0; i < n; ++i) neg[i] = -frame.normal[0][i];
    dirs.push_back(neg);
    return dirs;
  }

  const int half = std::max(2, (count + 1) / 2);
  if (codim == 2) {
    // Uniform half circle, then its antipodes.
    for (int i = 0; i < half; ++i) {
      const double th = M_PI * (i + 0.5) / half;
      Vec d(n, 0.0);
      for (int j = 0; j < n; ++j)
        d[j] = std::cos(th) * frame.normal[0][j] + std::sin(th) * frame.normal[1][j];
      dirs.push_back(d);
    }
  } else {
    // Fibonacci-style lattice on the unit sphere of the normal space (first
    // three coordinates; higher normal ranks reuse the same construction on
    // the leading axes plus coordinate directions).
    const double golden = (1.0 + std::sqrt(5.0)) / 2.0;
    for (int i = 0; i < half; ++i) {
      const double z = 1.0 - (2.0 * i + 1.0) / (2.0 * half);
      const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
      const double th = 2.0 * M_PI * i / golden;
      Vec w(codim, 0.0);
      w[0] = r * std::cos(th);
      w[1] = r * std::sin(th);
      w[2] = z;
      Vec d(n, 0.0);
      for (int c = 0; c < std::min(codim, 3); ++c)
        for (int j = 0; j < n; ++j) d[j] += w[c] * frame.normal[c][j];
      dirs.push_back(d);
    }
    // Touch the remaining normal axes with plain coordinate directions.
    for (int c = 3; c < codim; ++c) dirs.push_back(frame.normal[c]);
  }
  const size_t sz = dirs.size();
  for (size_t i = 0; i < sz; ++i) {
    Vec neg(n);
    for (int j = 0; j < n; ++j) neg[j] = -dirs[i][j];
    dirs.push_back(neg);
  }
  return dirs;
}

FocalRadiusResult focal_radius(const EmbeddedSubmanifold& sub,
                               const std::vector<int>& grid_counts, int normals_per_point,
                               double t_max, int jobs, const OdeOptions& geo_ode,
                               const OdeOptions& jac_ode, const FocalOptions& options) {
  const std::vector<Vec> grid = parameter_grid(sub, grid_counts);

  struct Job {
    Vec u;
    Vec normal;
  };
  std::vector<Job> jobs_list;
  for (const Vec& u : grid) {
    const NormalFrame frame = tangent_normal_split(sub, u.data());
    const Mat g = sub.chart().metric(frame.point.data());
    for (Vec& d : normal_directions(frame, g, normals_per_point))
      jobs_list.push_back({u, std::move(d)});
  }

  FocalRadiusResult result;
  result.t_max = t_max;
  result.samples.resize(jobs_list.size());

  parallel_for(jobs_list.size(), jobs, [&](size_t i) {
    const Job& job = jobs_list[i];
    LagrangianFamily fam = lambda_n(sub, job.u.data(), job.normal, t_max, geo_ode);
    FocalSample sample;
    sample.u = job.u;
    sample.normal = job.normal;
    sample.first_focal = first_focal_along(std::move(fam), t_max, jac_ode, options);
    result.samples[i] = std::move(sample);
  });

  for (size_t i = 0; i < result.samples.size(); ++i) {
    const auto& f = result.samples[i].first_focal;
    if (f && (!result.radius || *f < *result.radius)) {
      result.radius = *f;
      result.argmin = (int)i;
    }
  }
  return result;
}

Mat riccati(const JacobiEvolution& evol, double t) {
  const Mat at = evol.a(t);
  const Vec sv = singular_values(at);
  if (sv.front() < 1e-10 * std::max(1.0, sv.back()))
    raise(ErrorCode::SingularAtT, "Jacobi matrix is singular at the requested time");
  const Lu fac = lu_factor(transpose(at));
  if (fac.singular)
    raise(ErrorCode::SingularAtT, "Jacobi matrix is singular at the requested time");
  // S = A' A^{-1} via A^T S^T = A'^T.
  const Mat st = fac.solve_matrix(transpose(evol.a_prime(t)));
  return symmetrize(transpose(st));
}

double min_trace_k(const JacobiEvolution& evol, double t, int k) {
  const Mat s = riccati(evol, t);
  if (k < 1 || k > s.nr) raise(ErrorCode::KOutOfRange, "k must lie in [1, dim N]");
  const SymEigen eig = sym_eigen(s, 1e-6);
  double sum = 0.0;
  for (int i = 0; i < k; ++i) sum += eig.values[i];
  return sum;
}

}  // namespace focallab
