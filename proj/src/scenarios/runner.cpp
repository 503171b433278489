#include "scenarios/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>

#include "jacobi/focal.hpp"
#include "manifold/curvature.hpp"
#include "submanifold/shape.hpp"
#include "support/error.hpp"
#include "support/json_writer.hpp"

namespace focallab {

const char* tool_version() { return "0.1.0"; }

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

// Deterministic per-check seeding: FNV-1a of "<scenario>/<check>".
std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

// Top 53 bits of the generator output; uniform_real_distribution is not
// pinned down by the standard, and reports must be reproducible bit for bit.
double u01(std::mt19937_64& gen) { return static_cast<double>(gen() >> 11) * 0x1.0p-53; }

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> out(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i)
    out[static_cast<size_t>(i)] = a + (b - a) * (n == 1 ? 0.0 : double(i) / (n - 1));
  return out;
}

Vec basis_vec(int n, int i) {
  Vec e(static_cast<size_t>(n), 0.0);
  e[static_cast<size_t>(i)] = 1.0;
  return e;
}

struct Context {
  explicit Context(const Scenario& s) : sc(s) {}
  const Scenario& sc;
  Params params;
  int jobs = 1;
  Chart chart;
  std::optional<EmbeddedSubmanifold> sub;
  std::vector<int> grid;
  std::vector<ExpectedValue> expected;
  std::optional<FramedGeodesic> probe;
  double probe_span = 0.0;
  std::optional<Vec> probe_u;       // submanifold scenarios: footpoint of the probe
  std::optional<Vec> probe_normal;  // and its unit normal direction
};

double get(const Context& ctx, const std::string& key) {
  auto it = ctx.params.find(key);
  if (it == ctx.params.end())
    raise(ErrorCode::Internal, "scenario '" + ctx.sc.id + "' has no parameter '" + key + "'");
  return it->second;
}

int get_count(const Context& ctx, const std::string& key, int lo) {
  double v = get(ctx, key);
  int n = static_cast<int>(std::llround(v));
  if (n < lo)
    raise(ErrorCode::BadConfig, "parameter '" + key + "' must be at least " + std::to_string(lo));
  return n;
}

const ExpectedValue& find_expected(const Context& ctx, const std::string& name) {
  for (const auto& e : ctx.expected)
    if (e.name == name) return e;
  raise(ErrorCode::Internal,
        "scenario '" + ctx.sc.id + "' declares no expected value '" + name + "'");
}

// All sampled (footpoint, unit normal) lines of the submanifold, in grid
// order then normal-design order.
std::vector<std::pair<Vec, Vec>> sampled_lines(const Context& ctx) {
  const auto& sub = *ctx.sub;
  const int normals = get_count(ctx, "normals", 2);
  std::vector<std::pair<Vec, Vec>> lines;
  for (const Vec& u : parameter_grid(sub, ctx.grid)) {
    NormalFrame frame = tangent_normal_split(sub, u.data());
    Mat g = sub.chart().metric(frame.point.data());
    for (const Vec& v : normal_directions(frame, g, normals)) lines.emplace_back(u, v);
  }
  return lines;
}

std::vector<std::pair<std::string, double>> line_params(const Vec& u, const Vec& v) {
  std::vector<std::pair<std::string, double>> p;
  for (size_t a = 0; a < u.size(); ++a) p.emplace_back("u" + std::to_string(a), u[a]);
  for (size_t i = 0; i < v.size(); ++i) p.emplace_back("n" + std::to_string(i), v[i]);
  return p;
}

// ---------------------------------------------------------------------------
// Individual checks
// ---------------------------------------------------------------------------

VerifierReport check_constant_curvature(const Context& ctx) {
  const ExpectedValue& want = find_expected(ctx, "sec");
  VerifierReport rep;
  rep.tolerance = want.tolerance;
  const int n = ctx.chart.dim();
  const CurvatureHypothesis hyp = ctx.sc.hypothesis;
  for (double f : {0.0, 0.35, 0.7}) {
    const double t = f * ctx.probe_span;
    GeodesicState st = ctx.probe->at(t);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        double sec = sectional_curvature(ctx.chart, st.x.data(), basis_vec(n, i),
                                         basis_vec(n, j));
        rep.samples.push_back(equality_sample(
            {{"t", t}, {"i", double(i)}, {"j", double(j)}}, sec, want.value, want.tolerance));
      }
    // one plane not spanned by coordinate directions
    Vec u = basis_vec(n, 0), w = basis_vec(n, n > 2 ? 2 : 1);
    u[1] += 1.0;
    w[n > 2 ? 1 : 0] -= 0.7;
    double sec = sectional_curvature(ctx.chart, st.x.data(), u, w);
    rep.samples.push_back(
        equality_sample({{"t", t}, {"mixed", 1.0}}, sec, want.value, want.tolerance));
    // partial Ricci trace along the geodesic direction
    double r = ric_k(ctx.chart, st.x.data(), st.v, hyp.k);
    rep.samples.push_back(equality_sample({{"t", t}, {"trace_k", double(hyp.k)}}, r,
                                          hyp.k * want.value, want.tolerance));
  }
  finalize_report(rep);
  return rep;
}

VerifierReport check_model_jacobi(const Context& ctx) {
  const double span = std::min(get(ctx, "t_max"), 3.0);
  const int d = ctx.chart.dim() - 1;
  std::vector<double> times = linspace(span / 12.0, span, 12);
  JacobiEvolution sine = evolve(point_source_family(*ctx.probe), span);
  VerifierReport rep_sine = verify_model_jacobi(sine, ctx.sc.hypothesis.kappa, times, 1e-6);
  JacobiEvolution cosine =
      evolve(custom_family(*ctx.probe, Mat::identity(d), Mat(d, d)), span);
  VerifierReport rep_cos = verify_model_jacobi(cosine, ctx.sc.hypothesis.kappa, times, 1e-6);

  VerifierReport rep;
  rep.tolerance = 1e-6;
  auto absorb = [&rep](const VerifierReport& part, double family) {
    for (CheckSample s : part.samples) {
      s.params.insert(s.params.begin(), {"family", family});
      rep.samples.push_back(std::move(s));
    }
    if (rep.error.empty()) rep.error = part.error;
  };
  absorb(rep_sine, 0.0);
  absorb(rep_cos, 1.0);
  finalize_report(rep);
  return rep;
}

VerifierReport check_wronskian(const Context& ctx) {
  const double span = ctx.probe_span;
  std::vector<double> times = linspace(span / 8.0, span, 8);
  JacobiEvolution evol = ctx.sub ? evolve(lambda_n(*ctx.sub, ctx.probe_u->data(),
                                                   ctx.probe_normal.value(), span),
                                          span)
                                 : evolve(point_source_family(*ctx.probe), span);
  return verify_wronskian(evol, times, 1e-8);
}

VerifierReport check_comparison_point_source(const Context& ctx) {
  const double hi = get(ctx, "cmp_hi");
  JacobiEvolution evol = evolve(point_source_family(*ctx.probe), hi);
  return verify_comparison_lemma(evol, ctx.sc.hypothesis, linspace(0.1, hi, 30), 1e-6);
}

VerifierReport check_comparison_random(const Context& ctx) {
  const double hi = get(ctx, "cmp_hi");
  const int families = get_count(ctx, "samples", 1);
  const int d = ctx.chart.dim() - 1;
  const std::vector<double> grid = linspace(0.1, hi, 30);
  std::mt19937_64 gen(fnv1a(ctx.sc.id + "/comparison_random"));

  VerifierReport rep;
  rep.tolerance = 1e-6;
  rep.quantities.emplace_back("families", double(families));
  for (int f = 0; f < families; ++f) {
    Mat s0(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = i; j < d; ++j) s0(i, j) = s0(j, i) = 1.8 * u01(gen) - 0.9;
    JacobiEvolution evol = evolve(custom_family(*ctx.probe, Mat::identity(d), s0), hi);
    VerifierReport part = verify_comparison_lemma(evol, ctx.sc.hypothesis, grid, 1e-6);
    if (!part.error.empty()) {
      rep.error = part.error;
      break;
    }
    if (part.worst < 0) {
      rep.error = "comparison produced no samples for family " + std::to_string(f);
      break;
    }
    CheckSample worst = part.samples[static_cast<size_t>(part.worst)];
    worst.params.insert(worst.params.begin(), {"family", double(f)});
    rep.samples.push_back(std::move(worst));
  }
  finalize_report(rep);
  return rep;
}

VerifierReport check_comparison_normal_family(const Context& ctx) {
  const double hi = get(ctx, "cmp_hi");
  const double span = hi + 0.2;
  const std::vector<double> grid = linspace(0.05, hi, 25);
  auto lines = sampled_lines(ctx);
  VerifierReport rep;
  rep.tolerance = 1e-6;
  const int want = std::min<int>(4, static_cast<int>(lines.size()));
  int last = -1;
  for (int i = 0; i < want; ++i) {
    int idx = static_cast<int>((static_cast<size_t>(i) * lines.size()) / want);
    if (idx == last) continue;
    last = idx;
    const auto& [u, v] = lines[static_cast<size_t>(idx)];
    JacobiEvolution evol = evolve(lambda_n(*ctx.sub, u.data(), v, span), span);
    VerifierReport part = verify_comparison_lemma(evol, ctx.sc.hypothesis, grid, 1e-6);
    if (!part.error.empty() && rep.error.empty()) rep.error = part.error;
    for (CheckSample s : part.samples) {
      s.params.insert(s.params.begin(), {"line", double(idx)});
      rep.samples.push_back(std::move(s));
    }
  }
  finalize_report(rep);
  return rep;
}

VerifierReport check_focal_radius(const Context& ctx, bool expect_none) {
  const double t_max = get(ctx, "t_max");
  FocalRadiusResult scan = focal_radius(*ctx.sub, ctx.grid, get_count(ctx, "normals", 2),
                                        t_max, ctx.jobs);
  VerifierReport rep;
  rep.quantities.emplace_back("focal_radius", scan.radius ? *scan.radius : kNan);
  rep.quantities.emplace_back("focal_scan_t_max", t_max);
  std::vector<std::pair<std::string, double>> params;
  if (scan.argmin >= 0) {
    const FocalSample& s = scan.samples[static_cast<size_t>(scan.argmin)];
    params = line_params(s.u, s.normal);
  }
  if (expect_none) {
    rep.tolerance = 0.0;
    rep.samples.push_back(
        inequality_sample(std::move(params), scan.radius ? 1.0 : 0.0, 0.0, 0.0));
  } else {
    const ExpectedValue& want = find_expected(ctx, "focal_radius");
    rep.tolerance = want.tolerance;
    rep.samples.push_back(equality_sample(std::move(params), scan.radius ? *scan.radius : kNan,
                                          want.value, want.tolerance));
  }
  finalize_report(rep);
  return rep;
}

VerifierReport check_ii_norm(const Context& ctx) {
  const ExpectedValue& want = find_expected(ctx, "ii_norm");
  double worst = -1.0;
  Vec argmax;
  for (const Vec& u : parameter_grid(*ctx.sub, ctx.grid)) {
    double v = second_fundamental_form_norm(*ctx.sub, u.data());
    if (v > worst) {
      worst = v;
      argmax = u;
    }
  }
  VerifierReport rep;
  rep.tolerance = want.tolerance;
  rep.quantities.emplace_back("ii_norm", worst);
  std::vector<std::pair<std::string, double>> params;
  for (size_t a = 0; a < argmax.size(); ++a)
    params.emplace_back("u" + std::to_string(a), argmax[a]);
  rep.samples.push_back(equality_sample(std::move(params), worst, want.value, want.tolerance));
  finalize_report(rep);
  return rep;
}

VerifierReport check_shape_bound(const Context& ctx) {
  SampleSpec spec{ctx.grid, get_count(ctx, "normals", 2), ctx.jobs};
  return verify_shape_bound(*ctx.sub, ctx.sc.hypothesis, spec, get(ctx, "t_max"), 1e-6);
}

VerifierReport check_focal_window(const Context& ctx) {
  SampleSpec spec{ctx.grid, get_count(ctx, "normals", 2), ctx.jobs};
  return verify_focal_pi_over_2(*ctx.sub, ctx.sc.hypothesis, spec, 1e-6);
}

VerifierReport check_soul(const Context& ctx) {
  SampleSpec spec{ctx.grid, get_count(ctx, "normals", 2), ctx.jobs};
  return soul_checks(*ctx.sub, get(ctx, "t_max"), spec, 1e-7);
}

VerifierReport check_soul_rejection(const Context& ctx) {
  SampleSpec spec{ctx.grid, get_count(ctx, "normals", 2), ctx.jobs};
  VerifierReport rep;
  rep.tolerance = 0.0;
  try {
    soul_checks(*ctx.sub, get(ctx, "t_max"), spec, 1e-7);
    // No focal point was detected: the rejection we expect did not happen.
    rep.samples.push_back(equality_sample({{"focal_detected", 0.0}}, 0.0, 1.0, 0.0));
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NotInfiniteFocal) throw;
    rep.samples.push_back(equality_sample({{"focal_detected", 1.0}}, 1.0, 1.0, 0.0));
  }
  finalize_report(rep);
  return rep;
}

VerifierReport check_tube_volume(const Context& ctx) {
  const ExpectedValue& want = find_expected(ctx, "tube_volume");
  const double r = get(ctx, "tube_r");
  if (r <= 0.0) raise(ErrorCode::BadConfig, "tube_r must be positive");
  TubeQuadrature quad;
  quad.param_counts = ctx.grid;
  quad.normal_count = get_count(ctx, "normals", 2);
  quad.radial_nodes = 32;
  quad.jobs = ctx.jobs;
  TubeVolume tv = tube_volume(*ctx.sub, r, quad);
  VerifierReport rep;
  rep.tolerance = want.tolerance;
  rep.quantities.emplace_back("tube_volume", tv.value);
  rep.quantities.emplace_back("tube_error_estimate", tv.error_estimate);
  rep.quantities.emplace_back("focal_inside", tv.focal_inside ? 1.0 : 0.0);
  rep.samples.push_back(equality_sample({{"tube_r", r}}, tv.value, want.value, want.tolerance));
  finalize_report(rep);
  return rep;
}

VerifierReport check_conjugate_radius(const Context& ctx) {
  const ExpectedValue& want = find_expected(ctx, "conjugate_radius");
  ConjugateRadiusResult res = base_conjugate_radius(
      ctx.chart, ctx.sc.probe_x, get_count(ctx, "normals", 2), get(ctx, "t_max"), ctx.jobs);
  VerifierReport rep;
  rep.tolerance = want.tolerance;
  rep.quantities.emplace_back("conjugate_radius", res.radius ? *res.radius : kNan);
  std::vector<std::pair<std::string, double>> params;
  if (res.argmin >= 0) {
    const Vec& dir = res.samples[static_cast<size_t>(res.argmin)].direction;
    for (size_t i = 0; i < dir.size(); ++i)
      params.emplace_back("v" + std::to_string(i), dir[i]);
  }
  rep.samples.push_back(equality_sample(std::move(params), res.radius ? *res.radius : kNan,
                                        want.value, want.tolerance));
  finalize_report(rep);
  return rep;
}

VerifierReport dispatch(const Context& ctx, const std::string& name) {
  if (name == "constant_curvature") return check_constant_curvature(ctx);
  if (name == "model_jacobi") return check_model_jacobi(ctx);
  if (name == "wronskian") return check_wronskian(ctx);
  if (name == "comparison_point_source") return check_comparison_point_source(ctx);
  if (name == "comparison_random") return check_comparison_random(ctx);
  if (name == "comparison_normal_family") return check_comparison_normal_family(ctx);
  if (name == "focal_radius") return check_focal_radius(ctx, false);
  if (name == "focal_infinite") return check_focal_radius(ctx, true);
  if (name == "ii_norm") return check_ii_norm(ctx);
  if (name == "shape_bound") return check_shape_bound(ctx);
  if (name == "focal_window") return check_focal_window(ctx);
  if (name == "soul") return check_soul(ctx);
  if (name == "soul_rejection") return check_soul_rejection(ctx);
  if (name == "tube_volume") return check_tube_volume(ctx);
  if (name == "conjugate_radius") return check_conjugate_radius(ctx);
  raise(ErrorCode::Internal, "scenario declares unknown check '" + name + "'");
}

void validate_params(const Scenario& sc, const Params& overrides) {
  for (const auto& [key, value] : overrides) {
    bool known = false;
    for (const auto& [dk, dv] : sc.defaults)
      if (dk == key) known = true;
    if (!known)
      raise(ErrorCode::BadConfig,
            "scenario '" + sc.id + "' has no parameter '" + key + "'");
    if (!std::isfinite(value))
      raise(ErrorCode::BadConfig, "parameter '" + key + "' must be finite");
  }
}

void sanity_check(const Context& ctx) {
  auto positive = [&ctx](const char* key, double lo) {
    auto it = ctx.params.find(key);
    if (it != ctx.params.end() && it->second <= lo)
      raise(ErrorCode::BadConfig,
            std::string("parameter '") + key + "' must exceed " + format_double(lo));
  };
  positive("t_max", 0.0);
  positive("cmp_hi", 0.2);  // must leave room past the matching times 0.05/0.1
  positive("tube_r", 0.0);
}

// Samples the k-direction partial Ricci trace along the probe geodesic and
// refuses to run checks whose curvature hypothesis the data violates.
void hypothesis_precheck(const Context& ctx) {
  const CurvatureHypothesis hyp = ctx.sc.hypothesis;
  const double floor = hyp.k * hyp.kappa - 1e-6 * std::max(1.0, std::fabs(hyp.k * hyp.kappa));
  for (double f : {0.0, 0.45, 0.9}) {
    GeodesicState st = ctx.probe->at(f * ctx.probe_span);
    const double val = ric_k(ctx.chart, st.x.data(), st.v, hyp.k);
    if (val < floor)
      raise(ErrorCode::HypothesisViolated,
            "sampled " + std::to_string(hyp.k) + "-direction Ricci trace " +
                format_double(val) + " at t=" + format_double(f * ctx.probe_span) +
                " falls below the declared bound " + format_double(hyp.k * hyp.kappa));
  }
}

Context make_context(const Scenario& sc, const RunOptions& options) {
  validate_params(sc, options.overrides);

  Context ctx(sc);
  ctx.jobs = std::max(1, options.jobs);
  for (const auto& [k, v] : sc.defaults) ctx.params[k] = v;
  for (const auto& [k, v] : options.overrides) ctx.params[k] = v;
  ctx.chart = sc.make_chart(ctx.params);
  sanity_check(ctx);

  if (sc.make_submanifold) {
    ctx.sub = sc.make_submanifold(ctx.params);
    ctx.grid = sc.grid_counts(ctx.params);
  }
  ctx.expected = sc.expected ? sc.expected(ctx.params) : std::vector<ExpectedValue>{};

  // Probe geodesic: chart scenarios launch from the catalog's base point;
  // submanifold scenarios use the first sampled normal line.
  if (ctx.sub) {
    double hi = ctx.params.count("cmp_hi") ? get(ctx, "cmp_hi") : 1.0;
    ctx.probe_span = hi + 0.2;
    Vec u0 = parameter_grid(*ctx.sub, ctx.grid).front();
    NormalFrame frame = tangent_normal_split(*ctx.sub, u0.data());
    Mat g = ctx.chart.metric(frame.point.data());
    Vec v0 = normal_directions(frame, g, get_count(ctx, "normals", 2)).front();
    ctx.probe = normal_exp(*ctx.sub, u0.data(), v0, ctx.probe_span);
    ctx.probe_u = u0;
    ctx.probe_normal = v0;
  } else {
    ctx.probe_span = get(ctx, "t_max");
    ctx.probe = integrate_geodesic(ctx.chart, sc.probe_x, sc.probe_v, ctx.probe_span);
  }
  return ctx;
}

void write_header(JsonWriter& w, const std::string& id, const Params& params) {
  w.key("tool_version");
  w.value(tool_version());
  w.key("scenario");
  w.value(id);
  w.key("params");
  w.begin_object();
  for (const auto& [k, v] : params) {
    w.key(k);
    w.value(v);
  }
  w.end_object();
}

void write_vec(JsonWriter& w, const Vec& v) {
  w.begin_array();
  for (double x : v) w.value(x);
  w.end_array();
}

}  // namespace

ScenarioRun run_scenario(const std::string& id, const RunOptions& options) {
  const Scenario& sc = find_scenario(id);
  Context ctx = make_context(sc, options);

  std::vector<std::string> checks = sc.checks;
  if (!options.only.empty()) {
    for (const std::string& name : options.only)
      if (std::find(sc.checks.begin(), sc.checks.end(), name) == sc.checks.end())
        raise(ErrorCode::BadConfig,
              "scenario '" + sc.id + "' declares no check '" + name + "'");
    checks = options.only;
  }

  hypothesis_precheck(ctx);

  ScenarioRun run;
  run.id = sc.id;
  run.hypothesis = sc.hypothesis;
  run.params = ctx.params;
  run.timings = options.timings;
  run.pass = true;

  const auto t_start = std::chrono::steady_clock::now();
  for (const std::string& check : checks) {
    const auto c_start = std::chrono::steady_clock::now();
    VerifierReport rep;
    try {
      rep = dispatch(ctx, check);
    } catch (const Error& e) {
      rep = VerifierReport{};
      rep.error = e.what();
      finalize_report(rep);
    }
    rep.check_name = check;
    const auto c_end = std::chrono::steady_clock::now();
    run.check_seconds.emplace_back(
        check, std::chrono::duration<double>(c_end - c_start).count());
    run.pass = run.pass && rep.pass;
    for (const auto& [qn, qv] : rep.quantities) {
      bool seen = false;
      for (const auto& [rn, rv] : run.quantities) seen = seen || rn == qn;
      if (!seen) run.quantities.emplace_back(qn, qv);
    }
    run.checks.push_back(std::move(rep));
  }
  run.total_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
  return run;
}

std::string scenario_report_json(const ScenarioRun& run) {
  JsonWriter w;
  w.begin_object();
  w.key("tool_version");
  w.value(tool_version());
  w.key("scenario");
  w.value(run.id);
  w.key("hypothesis");
  w.begin_object();
  w.key("kappa");
  w.value(run.hypothesis.kappa);
  w.key("k");
  w.value(run.hypothesis.k);
  w.end_object();
  w.key("params");
  w.begin_object();
  for (const auto& [k, v] : run.params) {
    w.key(k);
    w.value(v);
  }
  w.end_object();
  w.key("quantities");
  w.begin_object();
  for (const auto& [k, v] : run.quantities) {
    w.key(k);
    w.value(v);
  }
  w.end_object();
  w.key("checks");
  w.begin_array();
  for (const auto& rep : run.checks) write_report(w, rep);
  w.end_array();
  w.key("pass");
  w.value(run.pass);
  w.key("timings");
  w.begin_object();
  if (run.timings) {
    w.key("total_seconds");
    w.value(run.total_seconds);
    w.key("checks");
    w.begin_object();
    for (const auto& [k, v] : run.check_seconds) {
      w.key(k);
      w.value(v);
    }
    w.end_object();
  }
  w.end_object();
  w.end_object();
  return w.str();
}

std::string curvature_table_json(const std::string& id, const RunOptions& options) {
  const Scenario& sc = find_scenario(id);
  Context ctx = make_context(sc, options);
  const int n = ctx.chart.dim();
  JsonWriter w;
  w.begin_object();
  write_header(w, sc.id, ctx.params);
  w.key("hypothesis");
  w.begin_object();
  w.key("kappa");
  w.value(sc.hypothesis.kappa);
  w.key("k");
  w.value(sc.hypothesis.k);
  w.end_object();
  w.key("points");
  w.begin_array();
  for (double f : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    const double t = f * ctx.probe_span;
    GeodesicState st = ctx.probe->at(t);
    w.begin_object();
    w.key("t");
    w.value(t);
    w.key("x");
    write_vec(w, st.x);
    w.key("v");
    write_vec(w, st.v);
    w.key("sec");
    w.begin_array();
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        w.begin_object();
        w.key("i");
        w.value(i);
        w.key("j");
        w.value(j);
        w.key("value");
        w.value(sectional_curvature(ctx.chart, st.x.data(), basis_vec(n, i), basis_vec(n, j)));
        w.end_object();
      }
    w.end_array();
    w.key("ric_k");
    w.value(ric_k(ctx.chart, st.x.data(), st.v, sc.hypothesis.k));
    w.end_object();
  }
  w.end_array();
  w.end_object();
  return w.str();
}

std::string focal_scan_json(const std::string& id, const RunOptions& options) {
  const Scenario& sc = find_scenario(id);
  Context ctx = make_context(sc, options);
  if (!ctx.sub)
    raise(ErrorCode::BadConfig, "scenario '" + sc.id + "' has no submanifold to scan");
  const double t_max = get(ctx, "t_max");
  FocalRadiusResult scan =
      focal_radius(*ctx.sub, ctx.grid, get_count(ctx, "normals", 2), t_max, ctx.jobs);
  JsonWriter w;
  w.begin_object();
  write_header(w, sc.id, ctx.params);
  w.key("t_max");
  w.value(scan.t_max);
  w.key("focal_radius");
  if (scan.radius)
    w.value(*scan.radius);
  else
    w.null_value();
  w.key("argmin");
  if (scan.argmin < 0)
    w.null_value();
  else
    w.value(scan.argmin);
  w.key("samples");
  w.begin_array();
  for (const FocalSample& s : scan.samples) {
    w.begin_object();
    w.key("u");
    write_vec(w, s.u);
    w.key("normal");
    write_vec(w, s.normal);
    w.key("first_focal");
    if (s.first_focal)
      w.value(*s.first_focal);
    else
      w.null_value();
    w.end_object();
  }
  w.end_array();
  w.end_object();
  return w.str();
}

std::string shape_table_json(const std::string& id, const RunOptions& options) {
  const Scenario& sc = find_scenario(id);
  Context ctx = make_context(sc, options);
  if (!ctx.sub)
    raise(ErrorCode::BadConfig, "scenario '" + sc.id + "' has no submanifold");
  const EmbeddedSubmanifold& sub = *ctx.sub;
  JsonWriter w;
  w.begin_object();
  write_header(w, sc.id, ctx.params);
  double max_ii = 0.0;
  w.key("points");
  w.begin_array();
  for (const Vec& u : parameter_grid(sub, ctx.grid)) {
    NormalFrame frame = tangent_normal_split(sub, u.data());
    Mat g = sub.chart().metric(frame.point.data());
    Vec v = normal_directions(frame, g, get_count(ctx, "normals", 2)).front();
    Mat s = shape_operator_in_frame(sub, u.data(), v, frame);
    double ii = second_fundamental_form_norm(sub, u.data());
    max_ii = std::max(max_ii, ii);
    w.begin_object();
    w.key("u");
    write_vec(w, u);
    w.key("x");
    write_vec(w, frame.point);
    w.key("normal");
    write_vec(w, v);
    w.key("shape_operator");
    w.begin_array();
    for (int i = 0; i < s.nr; ++i) {
      w.begin_array();
      for (int j = 0; j < s.nc; ++j) w.value(s(i, j));
      w.end_array();
    }
    w.end_array();
    w.key("ii_norm");
    w.value(ii);
    w.end_object();
  }
  w.end_array();
  w.key("max_ii_norm");
  w.value(max_ii);
  w.end_object();
  return w.str();
}

std::string tube_report_json(const std::string& id, const RunOptions& options) {
  const Scenario& sc = find_scenario(id);
  Context ctx = make_context(sc, options);
  if (!ctx.sub)
    raise(ErrorCode::BadConfig, "scenario '" + sc.id + "' has no submanifold");
  if (!ctx.params.count("tube_r"))
    raise(ErrorCode::BadConfig, "scenario '" + sc.id + "' has no tube_r parameter");
  const double r = get(ctx, "tube_r");
  if (r <= 0.0) raise(ErrorCode::BadConfig, "tube_r must be positive");
  TubeQuadrature quad;
  quad.param_counts = ctx.grid;
  quad.normal_count = get_count(ctx, "normals", 2);
  quad.radial_nodes = 32;
  quad.jobs = ctx.jobs;
  TubeVolume tv = tube_volume(*ctx.sub, r, quad);
  JsonWriter w;
  w.begin_object();
  write_header(w, sc.id, ctx.params);
  w.key("tube_r");
  w.value(r);
  w.key("value");
  w.value(tv.value);
  w.key("error_estimate");
  w.value(tv.error_estimate);
  w.key("focal_inside");
  w.value(tv.focal_inside);
  w.end_object();
  return w.str();
}

std::string verify_bound_to_check(const std::string& id, const std::string& bound) {
  const Scenario& sc = find_scenario(id);
  std::string check;
  if (bound == "shape-bound") {
    check = "shape_bound";
  } else if (bound == "comparison-lemma") {
    check = sc.make_submanifold ? "comparison_normal_family" : "comparison_point_source";
  } else if (bound == "focal-pi2") {
    check = "focal_window";
  } else if (bound == "soul") {
    check = std::find(sc.checks.begin(), sc.checks.end(), "soul") != sc.checks.end()
                ? "soul"
                : "soul_rejection";
  } else if (bound == "conjugate-radius") {
    check = "conjugate_radius";
  } else {
    raise(ErrorCode::BadConfig, "unknown verifier '" + bound + "'");
  }
  if (std::find(sc.checks.begin(), sc.checks.end(), check) == sc.checks.end())
    raise(ErrorCode::BadConfig,
          "scenario '" + sc.id + "' does not support the '" + bound + "' verifier");
  return check;
}

std::string catalog_json() {
  JsonWriter w;
  w.begin_object();
  w.key("tool_version");
  w.value(tool_version());
  w.key("scenarios");
  w.begin_array();
  for (const Scenario& sc : catalog()) {
    w.begin_object();
    w.key("id");
    w.value(sc.id);
    w.key("summary");
    w.value(sc.summary);
    w.key("hypothesis");
    w.begin_object();
    w.key("kappa");
    w.value(sc.hypothesis.kappa);
    w.key("k");
    w.value(sc.hypothesis.k);
    w.end_object();
    w.key("defaults");
    w.begin_object();
    for (const auto& [k, v] : sc.defaults) {
      w.key(k);
      w.value(v);
    }
    w.end_object();
    w.key("checks");
    w.begin_array();
    for (const auto& c : sc.checks) w.value(c);
    w.end_array();
    w.key("expected");
    w.begin_array();
    if (sc.expected) {
      Params defaults;
      for (const auto& [k, v] : sc.defaults) defaults[k] = v;
      for (const ExpectedValue& e : sc.expected(defaults)) {
        w.begin_object();
        w.key("name");
        w.value(e.name);
        w.key("value");
        w.value(e.value);
        w.key("tolerance");
        w.value(e.tolerance);
        w.key("oracle");
        w.value(e.oracle);
        w.end_object();
      }
    }
    w.end_array();
    w.end_object();
  }
  w.end_array();
  w.end_object();
  return w.str();
}

}  // namespace focallab
