#include "comparison/report.hpp"

#include <cmath>

namespace focallab {

CheckSample inequality_sample(std::vector<std::pair<std::string, double>> params, double lhs,
                              double rhs, double tolerance) {
  CheckSample s;
  s.params = std::move(params);
  s.lhs = lhs;
  s.rhs = rhs;
  s.margin = rhs - lhs + tolerance;
  return s;
}

CheckSample equality_sample(std::vector<std::pair<std::string, double>> params, double lhs,
                            double rhs, double tolerance) {
  CheckSample s;
  s.params = std::move(params);
  s.lhs = lhs;
  s.rhs = rhs;
  s.margin = tolerance - std::abs(lhs - rhs);
  return s;
}

void finalize_report(VerifierReport& report) {
  report.pass = report.error.empty();
  report.worst = -1;
  double worst_margin = 0.0;
  for (size_t i = 0; i < report.samples.size(); ++i) {
    const double m = report.samples[i].margin;
    if (!(m >= 0.0)) report.pass = false;  // NaN margins fail too
    if (report.worst < 0 || m < worst_margin) {
      report.worst = (int)i;
      worst_margin = m;
    }
  }
}

namespace {

void write_sample(JsonWriter& w, const CheckSample& s) {
  w.begin_object();
  w.key("params");
  w.begin_object();
  for (const auto& [name, v] : s.params) {
    w.key(name);
    w.value(v);
  }
  w.end_object();
  w.key("lhs");
  w.value(s.lhs);
  w.key("rhs");
  w.value(s.rhs);
  w.key("margin");
  w.value(s.margin);
  w.end_object();
}

}  // namespace

void write_report(JsonWriter& w, const VerifierReport& report) {
  w.begin_object();
  w.key("name");
  w.value(report.check_name);
  w.key("pass");
  w.value(report.pass);
  w.key("tolerance");
  w.value(report.tolerance);
  w.key("error");
  if (report.error.empty())
    w.null_value();
  else
    w.value(report.error);
  w.key("samples");
  w.begin_array();
  for (const CheckSample& s : report.samples) write_sample(w, s);
  w.end_array();
  w.key("worst");
  if (report.worst < 0) {
    w.null_value();
  } else {
    w.begin_object();
    w.key("index");
    w.value(report.worst);
    w.key("margin");
    w.value(report.samples[report.worst].margin);
    w.end_object();
  }
  w.end_object();
}

}  // namespace focallab
