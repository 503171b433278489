// focallab command-line tool.
//
// Thin shell over the shared-library C API: every computation, catalog
// lookup, and parameter validation lives in the library; this file only
// parses flags, forwards overrides, and renders the returned JSON report as
// json, csv, or text.  All three formats print the same numeric values.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "focallab/focallab.h"
#include "json.hpp"

namespace {

using Json = nlohmann::ordered_json;

// Matches the library's serialization (printf %.17g) so that re-rendered
// values are byte-identical to the JSON report.
std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string scalar_to_string(const Json& j) {
  if (j.is_number_float()) return fmt_double(j.get<double>());
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  if (j.is_boolean()) return j.get<bool>() ? "true" : "false";
  if (j.is_null()) return "null";
  if (j.is_string()) return j.get<std::string>();
  return j.dump();
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void flatten(const Json& j, const std::string& prefix,
             std::vector<std::pair<std::string, std::string>>& rows) {
  if (j.is_object()) {
    if (j.empty() && !prefix.empty()) rows.emplace_back(prefix, "{}");
    for (const auto& item : j.items()) {
      const std::string key = prefix.empty() ? item.key() : prefix + "." + item.key();
      flatten(item.value(), key, rows);
    }
  } else if (j.is_array()) {
    if (j.empty() && !prefix.empty()) rows.emplace_back(prefix, "[]");
    for (size_t i = 0; i < j.size(); ++i)
      flatten(j[i], prefix + "[" + std::to_string(i) + "]", rows);
  } else {
    rows.emplace_back(prefix, scalar_to_string(j));
  }
}

std::string render_csv(const Json& report) {
  std::vector<std::pair<std::string, std::string>> rows;
  flatten(report, "", rows);
  std::ostringstream os;
  os << "key,value\n";
  for (const auto& [k, v] : rows) os << csv_escape(k) << "," << csv_escape(v) << "\n";
  return os.str();
}

void render_text_value(const Json& j, const std::string& label, int indent,
                       std::ostringstream& os) {
  const std::string pad(static_cast<size_t>(indent), ' ');
  if (j.is_object()) {
    if (j.empty()) {
      os << pad << label << " = {}\n";
      return;
    }
    if (!label.empty()) os << pad << label << ":\n";
    for (const auto& item : j.items())
      render_text_value(item.value(), item.key(), label.empty() ? indent : indent + 2, os);
  } else if (j.is_array()) {
    bool all_scalar = true;
    for (const auto& e : j)
      if (e.is_object() || e.is_array()) all_scalar = false;
    if (all_scalar) {
      os << pad << label << " = [";
      for (size_t i = 0; i < j.size(); ++i) os << (i ? ", " : "") << scalar_to_string(j[i]);
      os << "]\n";
    } else {
      os << pad << label << ":\n";
      for (size_t i = 0; i < j.size(); ++i)
        render_text_value(j[i], "[" + std::to_string(i) + "]", indent + 2, os);
    }
  } else {
    os << pad << label << " = " << scalar_to_string(j) << "\n";
  }
}

void render_text_check(const Json& check, std::ostringstream& os) {
  const bool pass = check.value("pass", false);
  os << "  [" << (pass ? "PASS" : "FAIL") << "] " << check.value("name", std::string("?"));
  if (check.contains("tolerance"))
    os << "  (tolerance = " << scalar_to_string(check["tolerance"]);
  if (check.contains("worst") && check["worst"].is_object() &&
      check["worst"].contains("margin"))
    os << ", worst margin = " << scalar_to_string(check["worst"]["margin"]);
  if (check.contains("tolerance")) os << ")";
  os << "\n";
  if (check.contains("error") && !check["error"].is_null())
    os << "         error: " << scalar_to_string(check["error"]) << "\n";
}

std::string render_text(const Json& report) {
  std::ostringstream os;
  for (const auto& item : report.items()) {
    if (item.key() == "checks" && item.value().is_array()) {
      os << "checks:\n";
      for (const auto& check : item.value()) render_text_check(check, os);
    } else if (item.key() == "pass") {
      os << "RESULT: " << (item.value().get<bool>() ? "PASS" : "FAIL") << "\n";
    } else {
      render_text_value(item.value(), item.key(), 0, os);
    }
  }
  return os.str();
}

std::string render_list_text(const Json& catalog) {
  std::ostringstream os;
  for (const auto& sc : catalog["scenarios"])
    os << sc.value("id", std::string("?")) << " - " << sc.value("summary", std::string())
       << "\n";
  return os.str();
}

std::string render_list_csv(const Json& catalog) {
  std::ostringstream os;
  os << "id,summary,checks\n";
  for (const auto& sc : catalog["scenarios"]) {
    std::string checks;
    for (const auto& c : sc["checks"]) {
      if (!checks.empty()) checks += ";";
      checks += c.get<std::string>();
    }
    os << csv_escape(sc.value("id", std::string())) << ","
       << csv_escape(sc.value("summary", std::string())) << "," << csv_escape(checks)
       << "\n";
  }
  return os.str();
}

int emit(const std::string& rendered, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << rendered;
    return 0;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) {
    std::cerr << "focallab: cannot open output file '" << out_path << "'\n";
    return 1;
  }
  f << rendered;
  return 0;
}

struct CommonArgs {
  std::string scenario;
  std::string format = "text";
  std::string out_path;
  std::string config_path;
  int jobs = 1;
  bool timings = false;
  std::vector<std::string> sets;
  std::map<std::string, double> flag_overrides;  // populated from named flags
};

void add_common(CLI::App* cmd, CommonArgs& args, bool scenario_required) {
  auto* sopt = cmd->add_option("--scenario,--id,-s", args.scenario, "Catalog scenario id");
  if (scenario_required) sopt->required();
  cmd->add_option("--format,-f", args.format, "Output format")
      ->check(CLI::IsMember({"json", "csv", "text"}))
      ->capture_default_str();
  cmd->add_option("--out,-o", args.out_path, "Write the report to this file");
  cmd->add_option("--config", args.config_path,
                  "JSON file of scenario parameter overrides (strict keys)");
  cmd->add_option("--jobs,-j", args.jobs, "Worker threads for independent samples")
      ->envname("FOCALLAB_JOBS")
      ->check(CLI::PositiveNumber);
  cmd->add_flag("--timings", args.timings, "Include wall-clock timings in the report");
  cmd->add_option("--set", args.sets, "Extra override key=value (repeatable)");

  // Named shortcuts for catalog parameters; forwarded only when given.
  static const std::pair<const char*, const char*> named[] = {
      {"--rho", "rho"},       {"--r", "r"},           {"--a", "a"},
      {"--scale", "scale"},   {"--p", "p"},           {"--q", "q"},
      {"--t-max", "t_max"},   {"--cmp-hi", "cmp_hi"}, {"--samples", "samples"},
      {"--normals", "normals"}, {"--tube-r", "tube_r"}};
  for (const auto& [flag, key] : named) {
    const std::string key_copy = key;
    cmd->add_option_function<double>(
        flag,
        [&args, key_copy](double v) { args.flag_overrides[key_copy] = v; },
        std::string("Override scenario parameter '") + key + "'");
  }
}

// Collects overrides in precedence order: config file, named flags, --set.
bool collect_overrides(const CommonArgs& args, std::map<std::string, double>& overrides) {
  if (!args.config_path.empty()) {
    std::ifstream f(args.config_path);
    if (!f) {
      std::cerr << "focallab: cannot read config file '" << args.config_path << "'\n";
      return false;
    }
    Json cfg;
    try {
      cfg = Json::parse(f);
    } catch (const std::exception& e) {
      std::cerr << "focallab: config parse error: " << e.what() << "\n";
      return false;
    }
    if (!cfg.is_object()) {
      std::cerr << "focallab: config file must hold a JSON object\n";
      return false;
    }
    for (const auto& item : cfg.items()) {
      if (!item.value().is_number()) {
        std::cerr << "focallab: config key '" << item.key() << "' must be a number\n";
        return false;
      }
      overrides[item.key()] = item.value().get<double>();
    }
  }
  for (const auto& [k, v] : args.flag_overrides) overrides[k] = v;
  for (const std::string& kv : args.sets) {
    const size_t eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) {
      std::cerr << "focallab: --set expects key=value, got '" << kv << "'\n";
      return false;
    }
    const std::string key = kv.substr(0, eq);
    const std::string val = kv.substr(eq + 1);
    try {
      size_t used = 0;
      const double v = std::stod(val, &used);
      if (used != val.size()) throw std::invalid_argument(val);
      overrides[key] = v;
    } catch (const std::exception&) {
      std::cerr << "focallab: --set value for '" << key << "' is not a number: '" << val
                << "'\n";
      return false;
    }
  }
  return true;
}

// Runs a library command and renders the result.  Returns the process exit
// code: 0 all good, 2 a verification check failed, 1 usage/config/run error.
int run_command(const std::string& command, const CommonArgs& args) {
  std::map<std::string, double> overrides;
  if (!collect_overrides(args, overrides)) return 1;

  std::vector<const char*> keys;
  std::vector<double> values;
  keys.reserve(overrides.size());
  values.reserve(overrides.size());
  for (const auto& [k, v] : overrides) {
    keys.push_back(k.c_str());
    values.push_back(v);
  }

  char* json_out = nullptr;
  int pass = -1;
  const int rc = focallab_run(command.c_str(), args.scenario.c_str(), keys.data(),
                              values.data(), static_cast<int>(keys.size()), args.jobs,
                              args.timings ? 1 : 0, &json_out, &pass);
  if (rc != FOCALLAB_OK) {
    std::cerr << "focallab: " << focallab_last_error_message() << "\n";
    return 1;
  }
  std::string report_json(json_out);
  focallab_string_free(json_out);

  std::string rendered;
  if (args.format == "json") {
    rendered = report_json + "\n";
  } else {
    Json report = Json::parse(report_json);
    rendered = args.format == "csv" ? render_csv(report) : render_text(report);
  }
  const int emit_rc = emit(rendered, args.out_path);
  if (emit_rc != 0) return emit_rc;
  return pass == 0 ? 2 : 0;
}

int run_list(const CommonArgs& args) {
  char* json_out = nullptr;
  if (focallab_catalog_json(&json_out) != FOCALLAB_OK) {
    std::cerr << "focallab: " << focallab_last_error_message() << "\n";
    return 1;
  }
  std::string catalog_json(json_out);
  focallab_string_free(json_out);

  std::string rendered;
  if (args.format == "json") {
    rendered = catalog_json + "\n";
  } else {
    Json catalog = Json::parse(catalog_json);
    rendered = args.format == "csv" ? render_list_csv(catalog) : render_list_text(catalog);
  }
  return emit(rendered, args.out_path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{std::string("focallab ") + focallab_version() +
               " - curvature, focal radii, and comparison checks on model manifolds"};
  app.require_subcommand(1);

  CommonArgs curvature_args, focal_args, shape_args, tube_args, scenario_args, verify_args,
      list_args;
  std::string bound;

  auto* curvature =
      app.add_subcommand("curvature", "Sectional and Ric_k tables at sampled points");
  add_common(curvature, curvature_args, true);

  auto* focal = app.add_subcommand("focal", "Focal radius scan over the sampled normals");
  add_common(focal, focal_args, true);

  auto* shape = app.add_subcommand("shape", "Shape operators and |II| over the grid");
  add_common(shape, shape_args, true);

  auto* verify = app.add_subcommand("verify", "Run one named bound check");
  verify
      ->add_option("bound", bound,
                   "shape-bound | comparison-lemma | focal-pi2 | soul | conjugate-radius")
      ->required()
      ->check(CLI::IsMember(
          {"shape-bound", "comparison-lemma", "focal-pi2", "soul", "conjugate-radius"}));
  add_common(verify, verify_args, true);

  auto* tube = app.add_subcommand("tube", "Tube volume by quadrature");
  add_common(tube, tube_args, true);

  auto* scenario = app.add_subcommand("scenario", "Full scenario run with all checks");
  add_common(scenario, scenario_args, true);

  auto* list = app.add_subcommand("list", "List the scenario catalog");
  list->add_option("--format,-f", list_args.format, "Output format")
      ->check(CLI::IsMember({"json", "csv", "text"}))
      ->capture_default_str();
  list->add_option("--out,-o", list_args.out_path, "Write the listing to this file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  if (curvature->parsed()) return run_command("curvature", curvature_args);
  if (focal->parsed()) return run_command("focal", focal_args);
  if (shape->parsed()) return run_command("shape", shape_args);
  if (tube->parsed()) return run_command("tube", tube_args);
  if (scenario->parsed()) return run_command("scenario", scenario_args);
  if (verify->parsed()) return run_command("verify:" + bound, verify_args);
  if (list->parsed()) return run_list(list_args);
  return 1;
}
