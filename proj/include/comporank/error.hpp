#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace comporank {

enum class ErrorCode {
  ParseError,
  NonReciprocalMatrix,
  OutOfScaleEntry,
  DimensionMismatch,
  InconsistentMatrix,
  MissingWeights,
  UnknownCriterion,
  MissingRating,
  RatingOutOfRange,
  DuplicateId,
  TooManyComponents,
  InvalidValue,
  EmptyCandidateSet,
  DomainError,
  MissingLeaf,
  CapExceeded,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library. `subject()` names the offending
/// item: a matrix cell such as "quality[0][2]", a component id, a JSON
/// location, or a tree node id.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string subject, const std::string& message);

  ErrorCode code() const noexcept { return code_; }
  const std::string& subject() const noexcept { return subject_; }

 private:
  ErrorCode code_;
  std::string subject_;
};

}  // namespace comporank
