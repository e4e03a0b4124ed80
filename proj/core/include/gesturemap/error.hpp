#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gesturemap {

enum class ErrorCode {
  parse,
  duplicate_id,
  unknown_category,
  invalid_value,
  missing_context,
  empty_criteria,
  infeasible,
  guard_exceeded,
  non_separable,
  invalid_mapping,
};

std::string_view to_string(ErrorCode code) noexcept;

// All library failures surface as this exception; code() discriminates.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace gesturemap
