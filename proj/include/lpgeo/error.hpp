#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lpgeo {

/// Failure categories shared by every module. The numeric values are part of
/// the C API (lpgeo_status) and must stay stable.
enum class ErrorCode : int {
  ok = 0,
  invalid_argument = 1,
  grid_mismatch = 2,
  decay_violation = 3,
  not_monotone = 4,
  no_bracket = 5,
  not_in_image = 6,
  too_few_slices = 7,
  all_masked = 8,
  unsupported_exponent = 9,
  image_violation = 10,
  mixed_sign = 11,
  step_too_small = 12,
  degenerate = 13,
  not_closed = 14,
  non_finite_integral = 15,
  zero_denominator = 16,
  missing_inverse = 17,
  positivity_violation = 18,
  non_integrable_score = 19,
  config_error = 20,
};

std::string_view error_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& what);

inline void require(bool cond, ErrorCode code, const char* what) {
  if (!cond) fail(code, what);
}

}  // namespace lpgeo
