#pragma once

// Young functions, the Luxemburg norm, its first variation and
// diffeomorphism invariance, the Phi-embedding onto the unit sphere and the
// Orlicz geodesic residual on paths of Jacobians.

#include <functional>
#include <optional>
#include <string>

#include "lpgeo/densities.hpp"

namespace lpgeo {

class YoungFunction {
 public:
  using Fn = std::function<double(double)>;

  /// Spot-checks Phi(0) = 0, symmetry, strict increase and nondecreasing
  /// Phi(t)/t on a 64-point log grid over [1e-6, 1e6], and growth
  /// Phi(1e6)/1e6 >= 10 Phi(1) unless Phi(t)/t is constant (the linear
  /// case). InvalidArgument on failure. `derivative` must be odd; `inverse`
  /// acts on [0, inf).
  YoungFunction(std::string label, Fn evaluate, Fn derivative, std::optional<Fn> inverse = std::nullopt);

  /// |t|^p, p >= 1.
  static YoungFunction power(double p);
  /// |t| log(1 + |t|), with a bisection inverse.
  static YoungFunction log_young();
  /// "power:<p>" or "loglinear".
  static YoungFunction from_label(const std::string& label);

  double operator()(double t) const { return eval_(t); }
  double derivative(double t) const { return deriv_(t); }
  bool has_inverse() const noexcept { return inverse_.has_value(); }
  /// MissingInverse when absent.
  double inverse(double y) const;
  const std::string& label() const noexcept { return label_; }
  /// Scaled copy lambda * Phi.
  YoungFunction scaled(double lambda) const;

 private:
  std::string label_;
  Fn eval_;
  Fn deriv_;
  std::optional<Fn> inverse_;
};

/// inf { r > 0 : integral Phi(f/r) mu <= 1 } by doubling then bisection.
double luxemburg_norm(const SampledFunction& f, const Density& mu, const YoungFunction& phi,
                      const Tolerances& tol = {});

/// K1 = K0 integral h Phi'(f/K0) mu / integral f Phi'(f/K0) mu.
double luxemburg_first_variation(const SampledFunction& f, const SampledFunction& h, const Density& mu,
                                 const YoungFunction& phi, const Tolerances& tol = {});

struct InvariancePair {
  double before;
  double after;
};

/// Norm of a/mu against mu, before and after pulling a and mu back by phi.
InvariancePair orlicz_finsler_invariance(const SampledFunction& a, const Density& mu, const YoungFunction& phi,
                                         const SampledFunction& map, const Tolerances& tol = {});

/// Phi^-1(rho) pointwise.
SampledFunction phi_embedding(const ProbabilityDensity& rho, const YoungFunction& phi);

/// Time slices of the Jacobian phi_x(t, .) of a path of circle maps.
struct JacobianPath {
  double t0 = 0.0;
  double dt = 0.0;
  std::vector<SampledFunction> jacobians;

  static JacobianPath from_maps(double t0, double dt, const std::vector<SampledFunction>& maps);
  /// Uses the density coefficients as Jacobians; f = rho_t/rho.
  static JacobianPath from_densities(const DensityPath& path);
};

/// LHS - RHS of the Luxemburg geodesic equation with f = phi_tx/phi_x,
/// K0 the Luxemburg norm of f against phi_x dx and D = integral f Phi'(f/K0)
/// phi_x dx. Output at slices 2 .. N-3. PositivityViolation if
/// f < tol.positivity_floor, TooFewSlices below 5.
SpaceTimeField orlicz_geodesic_residual(const JacobianPath& path, const YoungFunction& phi,
                                        const Tolerances& tol = {});

/// p d/dt (f^(p-1)) + (p-1) f^p at slices 2 .. N-3.
SpaceTimeField lp_reduction_residual(const JacobianPath& path, double p, const Tolerances& tol = {});

}  // namespace lpgeo
