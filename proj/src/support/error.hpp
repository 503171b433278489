#pragma once

#include <stdexcept>
#include <string>

namespace focallab {

enum class ErrorCode {
  InvalidArgument,
  StepUnderflow,
  NonFiniteRhs,
  NotSquare,
  NonSymmetric,
  DegenerateSpan,
  NoSignChange,
  MetricNotPD,
  DegeneratePlane,
  KOutOfRange,
  LeftChartDomain,
  RankDeficientEmbedding,
  NotNormal,
  NotLagrangian,
  SingularAtT,
  PoleAtT,
  BeyondBlowup,
  HypothesisViolated,
  SingularGrid,
  NotInfiniteFocal,
  UnknownScenario,
  BadConfig,
  Internal,
};

const char* error_code_name(ErrorCode c);

// All recoverable failures in the library surface as this exception; the C API
// translates it into status codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace focallab
