#pragma once

// Built-in scenario catalog: constant-curvature charts and submanifolds with
// closed-form geometry, each carrying a curvature hypothesis, default
// parameters, the list of checks it runs, and expected values with their
// independent derivations.

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "comparison/verify.hpp"
#include "submanifold/embedding.hpp"

namespace focallab {

using Params = std::map<std::string, double>;

struct ExpectedValue {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  std::string oracle;  // how the value was derived independently of the code
};

struct Scenario {
  std::string id;
  std::string summary;
  CurvatureHypothesis hypothesis;
  std::vector<std::pair<std::string, double>> defaults;  // override keys + defaults
  std::vector<std::string> checks;
  std::function<Chart(const Params&)> make_chart;
  std::function<EmbeddedSubmanifold(const Params&)> make_submanifold;  // null for charts
  std::function<std::vector<int>(const Params&)> grid_counts;          // null for charts
  std::function<std::vector<ExpectedValue>(const Params&)> expected;
  Vec probe_x;  // base point for chart-level geodesics
  Vec probe_v;  // launch direction (normalized internally)
};

const std::vector<Scenario>& catalog();

// Raises UnknownScenario for ids not in the catalog.
const Scenario& find_scenario(const std::string& id);

// Constant-curvature chart builders (exposed for tests and the C API).
Chart euclidean_chart(int dim, std::string name);
Chart sphere_chart(int dim, double radius, std::string name);
Chart hyperbolic_chart(int dim, std::string name);  // Poincare ball, curvature -1

}  // namespace focallab
