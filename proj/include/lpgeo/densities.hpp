#pragma once

// Densities on the circle: the L^p Fisher-Rao Finsler metric, its explicit
// geodesics and geodesic-equation residuals, the flat embedding and the
// one-dimensional Moser map.

#include <vector>

#include "lpgeo/exponent.hpp"
#include "lpgeo/grid.hpp"

namespace lpgeo {

/// Strictly positive coefficient rho of rho*dx on a circle grid.
class Density {
 public:
  explicit Density(SampledFunction rho);

  const SampledFunction& rho() const noexcept { return rho_; }
  const Grid& grid() const noexcept { return rho_.grid(); }
  double mass() const { return integrate(rho_); }

 private:
  SampledFunction rho_;
};

/// Density of total mass 1 (within tol.mass).
class ProbabilityDensity : public Density {
 public:
  explicit ProbabilityDensity(SampledFunction rho, const Tolerances& tol = {});
  /// Rescales a positive function to unit mass.
  static ProbabilityDensity normalized(const SampledFunction& rho);
};

/// Throws InvalidArgument unless the tangent has zero total mass.
void require_zero_mass(const SampledFunction& a, const Tolerances& tol = {});

/// (integral |f|^p dx)^(1/p), or max |f| for p = infinity.
double lp_norm(const SampledFunction& f, PExponent p);

/// F(mu, a) = (integral |a/mu|^p mu)^(1/p); sup |a/mu| for p = infinity.
double lp_fisher_norm(const Density& mu, const SampledFunction& a, PExponent p);

/// (t rho1^(1/p) + (1-t) rho0^(1/p))^p.
Density geodesic_explicit(const Density& rho0, const Density& rho1, double t, double p);

/// Uniformly spaced time slices t0, t0+dt, ...
struct DensityPath {
  double t0 = 0.0;
  double dt = 0.0;
  std::vector<Density> slices;
};

DensityPath sample_explicit_geodesic(const Density& rho0, const Density& rho1, double p, double t0,
                                     double dt, std::size_t count);

/// Residual field over interior times. `masked` counts nodes reported as 0.
struct SpaceTimeField {
  std::vector<double> times;
  std::vector<SampledFunction> slices;
  std::size_t masked = 0;

  double sup() const;
};

/// d/dt(rho_t/rho) + (1/p)(rho_t/rho)^2, p > 1.
SpaceTimeField dens_geodesic_residual(const DensityPath& path, double p);

/// d/dx of |w|^(p-2) w_t + |w|^p / p with w = rho_t/rho, p > 1. For p < 2
/// nodes with |w| < tol.mask_delta are masked (AllMasked above one half).
SpaceTimeField prob_geodesic_residual(const DensityPath& path, double p, const Tolerances& tol = {});

/// Formal Chern-connection geodesic residual; 1 < p <= 2 only.
SpaceTimeField chern_geodesic_residual(const DensityPath& path, double p);

/// p (rho)^(1/p).
SampledFunction flat_embed(const Density& mu, double p);
/// (f/p)^p; NotInImage unless f > 0.
Density flat_embed_inverse(const SampledFunction& f, double p);
/// Pointwise differential of the flat embedding: a * rho^(1/p - 1).
SampledFunction flat_embed_differential(const Density& mu, const SampledFunction& a, double p);

/// Pullback coefficient (rho o phi) * phi' of a density or tangent by a
/// circle map.
SampledFunction pullback(const SampledFunction& rho, const SampledFunction& map);

/// Derivative of a circle map (degree-one lift).
SampledFunction map_derivative(const SampledFunction& map);

/// Monotone circle map phi with phi^* nu = mu, built from the cumulative
/// distributions: phi = G^-1 o F.
SampledFunction moser_map_1d(const ProbabilityDensity& mu, const ProbabilityDensity& nu,
                             const Tolerances& tol = {});

}  // namespace lpgeo
