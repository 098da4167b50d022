#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace plinar {

enum class ErrorCode {
  invalid_parameter,
  degenerate_series,
  invalid_mean,
  non_convergence,
  domain_mismatch,
  degenerate_support,
  invalid_range,
  non_integer_forecast,
  invalid_config,
  parse_error,
  invalid_value,  // negative or non-integer count in an input file
};

/// Stable kebab-case name used in CLI error JSON.
std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

}  // namespace plinar
