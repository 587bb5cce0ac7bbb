#include "bures/error.hpp"

namespace bures {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::out_of_domain: return "OutOfDomain";
    case ErrorCode::non_finite_input: return "NonFiniteInput";
    case ErrorCode::degenerate_spectrum: return "DegenerateSpectrum";
    case ErrorCode::singular_metric: return "SingularMetric";
    case ErrorCode::retry_exhausted: return "RetryExhausted";
    case ErrorCode::degree_overflow: return "DegreeOverflow";
    case ErrorCode::degree_mismatch: return "DegreeMismatch";
    case ErrorCode::invalid_argument: return "InvalidArgument";
    case ErrorCode::io_error: return "IoError";
  }
  return "Unknown";
}

}  // namespace bures
