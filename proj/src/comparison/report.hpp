#pragma once

// Uniform result record for every verifier: a list of samples, each carrying
// the two sides of an inequality (or an equality and its target) plus a
// margin.  A check passes when every margin is nonnegative; `worst` indexes
// the sample with the smallest margin.
//
//   inequality lhs <= rhs:  margin = rhs - lhs + tolerance
//   equality   lhs == rhs:  margin = tolerance - |lhs - rhs|

#include <string>
#include <utility>
#include <vector>

#include "support/json_writer.hpp"

namespace focallab {

struct CheckSample {
  std::vector<std::pair<std::string, double>> params;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
};

struct VerifierReport {
  std::string check_name;
  bool pass = false;
  double tolerance = 0.0;
  std::vector<CheckSample> samples;
  int worst = -1;
  std::string error;  // empty when the check ran to completion
  std::vector<std::pair<std::string, double>> quantities;
};

CheckSample inequality_sample(std::vector<std::pair<std::string, double>> params, double lhs,
                              double rhs, double tolerance);
CheckSample equality_sample(std::vector<std::pair<std::string, double>> params, double lhs,
                            double rhs, double tolerance);

// Computes pass/worst from the samples; an errored report never passes.
void finalize_report(VerifierReport& report);

// Writes the report as a JSON object on the current writer position.
void write_report(JsonWriter& w, const VerifierReport& report);

}  // namespace focallab
