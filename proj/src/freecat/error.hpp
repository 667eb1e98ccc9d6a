#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace freecat {

enum class ErrorCode {
  MalformedTable,
  LawViolation,
  UnknownObject,
  UnknownMorphism,
  NotComposable,
  NotProductComplete,
  NoPullbacks,
  NotAClassifier,
  NotFinitelyComplete,
  NotMono,
  NotEquivalenceRelation,
  ParseError,
  InvalidArgument,
  Io,
};

std::string_view to_string(ErrorCode code);

// Base of every exception thrown by the engine. Outcomes such as a missing
// multi-limit are ordinary return values, not errors.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace freecat
