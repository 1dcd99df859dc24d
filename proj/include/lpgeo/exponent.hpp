#pragma once

#include <limits>

#include "lpgeo/error.hpp"

namespace lpgeo {

/// Exponent p of an L^p construction: finite p in [1, 1e6], or infinity.
class PExponent {
 public:
  static PExponent finite(double p) {
    require(p >= 1.0 && p <= 1e6, ErrorCode::invalid_argument, "exponent must lie in [1, 1e6]");
    return PExponent(p);
  }
  static PExponent infinity() { return PExponent(std::numeric_limits<double>::infinity()); }
  /// Accepts HUGE_VAL / +inf as infinity.
  static PExponent from_double(double p) { return p == infinity().value() ? infinity() : finite(p); }

  bool is_infinite() const noexcept { return value_ == std::numeric_limits<double>::infinity(); }
  double value() const noexcept { return value_; }

 private:
  explicit PExponent(double p) : value_(p) {}
  double value_;
};

}  // namespace lpgeo
