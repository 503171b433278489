#pragma once

// Executes catalog scenarios: merges overrides over scenario defaults
// (unknown keys are rejected), runs every check the scenario declares, and
// renders deterministic JSON reports.

#include <string>

#include "scenarios/catalog.hpp"

namespace focallab {

struct RunOptions {
  Params overrides;
  int jobs = 1;
  bool timings = false;  // adds wall-clock times to the report (breaks re-run
                         // byte-identity; off by default)
  std::vector<std::string> only;  // when nonempty, run just these checks
                                  // (each must be declared by the scenario)
};

struct ScenarioRun {
  std::string id;
  CurvatureHypothesis hypothesis;
  Params params;  // defaults with overrides applied
  std::vector<std::pair<std::string, double>> quantities;
  std::vector<VerifierReport> checks;
  bool pass = false;
  bool timings = false;
  double total_seconds = 0.0;
  std::vector<std::pair<std::string, double>> check_seconds;
};

ScenarioRun run_scenario(const std::string& id, const RunOptions& options = {});

std::string scenario_report_json(const ScenarioRun& run);

// Focused reports backing the command-line subcommands.  Each validates
// overrides exactly like run_scenario and renders deterministic JSON.
std::string curvature_table_json(const std::string& id, const RunOptions& options = {});
std::string focal_scan_json(const std::string& id, const RunOptions& options = {});
std::string shape_table_json(const std::string& id, const RunOptions& options = {});
std::string tube_report_json(const std::string& id, const RunOptions& options = {});

// Maps a verifier name from the command line ("shape-bound",
// "comparison-lemma", "focal-pi2", "soul", "conjugate-radius") to the check
// the scenario declares for it; BadConfig when the scenario has no such check.
std::string verify_bound_to_check(const std::string& id, const std::string& bound);

// The catalog as JSON: id, summary, hypothesis, defaults, checks, expected
// values (computed at default parameters) with their derivations.
std::string catalog_json();

const char* tool_version();

}  // namespace focallab
