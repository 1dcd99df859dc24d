#pragma once

// The acceptance suite: nine groups of property checks with derived numeric
// anchors, each reporting measured values against its bounds.

#include <string>
#include <vector>

namespace lpgeo {

struct VerifyCheck {
  std::string name;
  double measured;
  double lo;  // -inf when unbounded below
  double hi;  // +inf when unbounded above
  bool passed;
};

struct CriterionResult {
  int id;
  std::string title;
  std::vector<VerifyCheck> checks;
  /// Module error ("Name: message") that aborted the criterion, empty otherwise.
  std::string error;

  bool passed() const;
};

/// Number of criteria, numbered 1..kCriteria.
inline constexpr int kCriteria = 9;

/// Runs one criterion. Upper bounds on residuals are multiplied by
/// tol_scale; lower bounds on controls and ratio windows are not.
CriterionResult verify_criterion(int id, double tol_scale = 1.0);
std::vector<CriterionResult> verify_suite(double tol_scale = 1.0);

}  // namespace lpgeo
