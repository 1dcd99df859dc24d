#pragma once

// Fisher information of location-scale families g(x; t, s) = g((x - t)/s)/s
// on the line and the check that it is diag(c1, c2)/s^2.

#include <array>
#include <vector>

#include "lpgeo/grid.hpp"

namespace lpgeo {

class LocationScaleFamily {
 public:
  /// g >= 0 and decaying on a line grid with unit mass (tol.normalization).
  /// Symmetry within tol.symmetry is required unless allow_asymmetric.
  explicit LocationScaleFamily(SampledFunction generator, bool allow_asymmetric = false, const Tolerances& tol = {});

  const SampledFunction& generator() const noexcept { return g_; }
  const SampledFunction& generator_derivative() const noexcept { return dg_; }
  bool symmetric() const noexcept { return symmetric_; }

 private:
  SampledFunction g_;
  SampledFunction dg_;
  bool symmetric_;
};

/// [[g_tt, g_ts], [g_ts, g_ss]] at (t, s) by trapezoid quadrature in x on
/// [-|t| - sL, |t| + sL] with 2(n-1) intervals, g and g' interpolated at
/// (x - t)/s. Nodes where g vanishes are skipped.
/// NonIntegrableScore when every-other-node quadrature disagrees by more than
/// tol.score_refinement (relative to max(1, |entry|)).
std::array<std::array<double, 2>, 2> fisher_matrix(const LocationScaleFamily& family, double t, double sigma,
                                                   const Tolerances& tol = {});

struct HyperbolicSample {
  double t;
  double sigma;
  double c_tt;  // sigma^2 g_tt
  double c_ss;  // sigma^2 g_ss
  double offdiag;
};

struct HyperbolicReport {
  std::vector<HyperbolicSample> samples;
  double c_tt;  // mean over samples
  double c_ss;
  double max_spread;   // max relative deviation from the means
  double max_offdiag;
  bool positive_definite;
  /// Constant c's, vanishing off-diagonal and positive definiteness, within
  /// tol.hyperbolic_constancy and tol.hyperbolic_offdiag.
  bool hyperbolic;
};

/// Sweeps the Fisher matrix over ts x sigmas.
HyperbolicReport hyperbolic_check(const LocationScaleFamily& family, const std::vector<double>& ts,
                                  const std::vector<double>& sigmas, const Tolerances& tol = {});
/// Default 5 x 5 sweep t in {-1, -0.5, 0, 0.5, 1}, sigma in {0.5, .., 1.5}.
HyperbolicReport hyperbolic_check(const LocationScaleFamily& family, const Tolerances& tol = {});

}  // namespace lpgeo
