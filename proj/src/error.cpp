#include "plinar/error.hpp"

namespace plinar {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_parameter: return "invalid-parameter";
    case ErrorCode::degenerate_series: return "degenerate-series";
    case ErrorCode::invalid_mean: return "invalid-mean";
    case ErrorCode::non_convergence: return "non-convergence";
    case ErrorCode::domain_mismatch: return "domain-mismatch";
    case ErrorCode::degenerate_support: return "degenerate-support";
    case ErrorCode::invalid_range: return "invalid-range";
    case ErrorCode::non_integer_forecast: return "non-integer-forecast";
    case ErrorCode::invalid_config: return "invalid-config";
    case ErrorCode::parse_error: return "parse-error";
    case ErrorCode::invalid_value: return "negative-or-noninteger-value";
  }
  return "unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message),
      code_(code) {}

void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace plinar
