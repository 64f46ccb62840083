#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cauchy_gof {

enum class ErrorCode {
  input_too_small,
  non_finite_input,
  degenerate_scale,
  tied_data,
  zero_bandwidth,
  invalid_window,
  invalid_estimator_argument,
  support_extension,
  domain,
  configuration,
  parse,
  io,
  simulation_failed,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library. The code lets callers (notably the
/// CLI) attach remediation hints without parsing messages.
class GofError : public std::runtime_error {
 public:
  GofError(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace cauchy_gof
