#include "freecat/error.hpp"

namespace freecat {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::MalformedTable: return "MalformedTable";
    case ErrorCode::LawViolation: return "LawViolation";
    case ErrorCode::UnknownObject: return "UnknownObject";
    case ErrorCode::UnknownMorphism: return "UnknownMorphism";
    case ErrorCode::NotComposable: return "NotComposable";
    case ErrorCode::NotProductComplete: return "NotProductComplete";
    case ErrorCode::NoPullbacks: return "NoPullbacks";
    case ErrorCode::NotAClassifier: return "NotAClassifier";
    case ErrorCode::NotFinitelyComplete: return "NotFinitelyComplete";
    case ErrorCode::NotMono: return "NotMono";
    case ErrorCode::NotEquivalenceRelation: return "NotEquivalenceRelation";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace freecat
