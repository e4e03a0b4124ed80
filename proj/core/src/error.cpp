#include "gesturemap/error.hpp"

namespace gesturemap {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::parse:
      return "parse";
    case ErrorCode::duplicate_id:
      return "duplicate-id";
    case ErrorCode::unknown_category:
      return "unknown-category";
    case ErrorCode::invalid_value:
      return "invalid-value";
    case ErrorCode::missing_context:
      return "missing-context";
    case ErrorCode::empty_criteria:
      return "empty-criteria";
    case ErrorCode::infeasible:
      return "infeasible";
    case ErrorCode::guard_exceeded:
      return "guard-exceeded";
    case ErrorCode::non_separable:
      return "non-separable";
    case ErrorCode::invalid_mapping:
      return "invalid-mapping";
  }
  return "unknown";
}

}  // namespace gesturemap
