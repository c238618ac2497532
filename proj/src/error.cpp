#include "comporank/error.hpp"

namespace comporank {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::NonReciprocalMatrix: return "NonReciprocalMatrix";
    case ErrorCode::OutOfScaleEntry: return "OutOfScaleEntry";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InconsistentMatrix: return "InconsistentMatrix";
    case ErrorCode::MissingWeights: return "MissingWeights";
    case ErrorCode::UnknownCriterion: return "UnknownCriterion";
    case ErrorCode::MissingRating: return "MissingRating";
    case ErrorCode::RatingOutOfRange: return "RatingOutOfRange";
    case ErrorCode::DuplicateId: return "DuplicateId";
    case ErrorCode::TooManyComponents: return "TooManyComponents";
    case ErrorCode::InvalidValue: return "InvalidValue";
    case ErrorCode::EmptyCandidateSet: return "EmptyCandidateSet";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::MissingLeaf: return "MissingLeaf";
    case ErrorCode::CapExceeded: return "CapExceeded";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, std::string subject, const std::string& message)
    : std::runtime_error(message), code_(code), subject_(std::move(subject)) {}

}  // namespace comporank
