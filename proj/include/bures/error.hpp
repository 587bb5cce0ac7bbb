#pragma once

#include <stdexcept>
#include <string>

namespace bures {

enum class ErrorCode {
  out_of_domain = 1,
  non_finite_input,
  degenerate_spectrum,
  singular_metric,
  retry_exhausted,
  degree_overflow,
  degree_mismatch,
  invalid_argument,
  io_error,
};

// Every failure raised by the library carries one of the codes above; the C
// API translates them into bures_status values.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

const char* error_code_name(ErrorCode code) noexcept;

}  // namespace bures
