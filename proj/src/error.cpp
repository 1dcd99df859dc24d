#include "lpgeo/error.hpp"

namespace lpgeo {

std::string_view error_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::ok: return "Ok";
    case ErrorCode::invalid_argument: return "InvalidArgument";
    case ErrorCode::grid_mismatch: return "GridMismatch";
    case ErrorCode::decay_violation: return "DecayViolation";
    case ErrorCode::not_monotone: return "NotMonotone";
    case ErrorCode::no_bracket: return "NoBracket";
    case ErrorCode::not_in_image: return "NotInImage";
    case ErrorCode::too_few_slices: return "TooFewSlices";
    case ErrorCode::all_masked: return "AllMasked";
    case ErrorCode::unsupported_exponent: return "UnsupportedExponent";
    case ErrorCode::image_violation: return "ImageViolation";
    case ErrorCode::mixed_sign: return "MixedSign";
    case ErrorCode::step_too_small: return "StepTooSmall";
    case ErrorCode::degenerate: return "Degenerate";
    case ErrorCode::not_closed: return "NotClosed";
    case ErrorCode::non_finite_integral: return "NonFiniteIntegral";
    case ErrorCode::zero_denominator: return "ZeroDenominator";
    case ErrorCode::missing_inverse: return "MissingInverse";
    case ErrorCode::positivity_violation: return "PositivityViolation";
    case ErrorCode::non_integrable_score: return "NonIntegrableScore";
    case ErrorCode::config_error: return "ConfigError";
  }
  return "Unknown";
}

void fail(ErrorCode code, const std::string& what) {
  throw Error(code, std::string(error_name(code)) + ": " + what);
}

}  // namespace lpgeo
