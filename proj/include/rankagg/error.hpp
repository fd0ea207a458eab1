#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rankagg {

enum class ErrorCode {
  invalid_size,
  out_of_range,
  unknown_candidate,
  invalid_permutation,
  dimension_mismatch,
  invalid_weights,
  size_cap_exceeded,
  infinite_cost,
  non_convergence,
  parse_error,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_size: return "invalid-size";
    case ErrorCode::out_of_range: return "out-of-range";
    case ErrorCode::unknown_candidate: return "unknown-candidate";
    case ErrorCode::invalid_permutation: return "invalid-permutation";
    case ErrorCode::dimension_mismatch: return "dimension-mismatch";
    case ErrorCode::invalid_weights: return "invalid-weights";
    case ErrorCode::size_cap_exceeded: return "size-cap-exceeded";
    case ErrorCode::infinite_cost: return "infinite-cost";
    case ErrorCode::non_convergence: return "non-convergence";
    case ErrorCode::parse_error: return "parse-error";
  }
  return "unknown";
}

/// Every failure raised by the library carries a machine-readable code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace rankagg
