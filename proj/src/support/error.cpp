#include "support/error.hpp"

namespace focallab {

const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::StepUnderflow: return "StepUnderflow";
    case ErrorCode::NonFiniteRhs: return "NonFiniteRhs";
    case ErrorCode::NotSquare: return "NotSquare";
    case ErrorCode::NonSymmetric: return "NonSymmetric";
    case ErrorCode::DegenerateSpan: return "DegenerateSpan";
    case ErrorCode::NoSignChange: return "NoSignChange";
    case ErrorCode::MetricNotPD: return "MetricNotPD";
    case ErrorCode::DegeneratePlane: return "DegeneratePlane";
    case ErrorCode::KOutOfRange: return "KOutOfRange";
    case ErrorCode::LeftChartDomain: return "LeftChartDomain";
    case ErrorCode::RankDeficientEmbedding: return "RankDeficientEmbedding";
    case ErrorCode::NotNormal: return "NotNormal";
    case ErrorCode::NotLagrangian: return "NotLagrangian";
    case ErrorCode::SingularAtT: return "SingularAtT";
    case ErrorCode::PoleAtT: return "PoleAtT";
    case ErrorCode::BeyondBlowup: return "BeyondBlowup";
    case ErrorCode::HypothesisViolated: return "HypothesisViolated";
    case ErrorCode::SingularGrid: return "SingularGrid";
    case ErrorCode::NotInfiniteFocal: return "NotInfiniteFocal";
    case ErrorCode::UnknownScenario: return "UnknownScenario";
    case ErrorCode::BadConfig: return "BadConfig";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

}  // namespace focallab
