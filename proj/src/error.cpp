#include "agt/error.hpp"

namespace agt {

  std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
      case ErrorCode::syntax:
        return "syntax";
      case ErrorCode::incomplete:
        return "incomplete";
      case ErrorCode::duplicate_transition:
        return "duplicate_transition";
      case ErrorCode::unknown_identifier:
        return "unknown_identifier";
      case ErrorCode::invalid_argument:
        return "invalid_argument";
      case ErrorCode::not_invertible:
        return "not_invertible";
      case ErrorCode::not_reversible:
        return "not_reversible";
      case ErrorCode::alphabet_mismatch:
        return "alphabet_mismatch";
      case ErrorCode::budget_exceeded:
        return "budget_exceeded";
      case ErrorCode::no_sink:
        return "no_sink";
      case ErrorCode::verification_failed:
        return "verification_failed";
      case ErrorCode::not_associative:
        return "not_associative";
      case ErrorCode::no_identity:
        return "no_identity";
      case ErrorCode::no_inverse:
        return "no_inverse";
    }
    return "unknown";
  }

}  // namespace agt
