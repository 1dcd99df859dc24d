#pragma once

// Diffeomorphisms of the line that decay to the identity at minus infinity,
// their affine extension, and the isometries onto function and density
// spaces.

#include "lpgeo/exponent.hpp"
#include "lpgeo/grid.hpp"

namespace lpgeo {

/// phi = id + f on a line grid with f' > -1, f -> 0 on the left and f'
/// decaying at both ends. f' is stored exactly as given; f is its spectral
/// cumulative integral.
class LineDiffeo {
 public:
  static LineDiffeo from_derivative(SampledFunction fprime, const Tolerances& tol = {});
  /// Displacement given directly; f' is taken by finite differences.
  static LineDiffeo from_displacement(const SampledFunction& f, const Tolerances& tol = {});
  static LineDiffeo identity(const Grid& grid);

  const Grid& grid() const noexcept { return f_.grid(); }
  const SampledFunction& displacement() const noexcept { return f_; }
  const SampledFunction& displacement_derivative() const noexcept { return fprime_; }
  /// Samples phi(x_i).
  SampledFunction map() const;
  /// phi' = 1 + f'.
  SampledFunction jacobian() const;
  /// phi'' and higher: derivatives of f'.
  SampledFunction higher_derivative(int order, const Tolerances& tol = {}) const;
  double operator()(double y) const;

 protected:
  LineDiffeo(SampledFunction f, SampledFunction fprime) : f_(std::move(f)), fprime_(std::move(fprime)) {}

 private:
  SampledFunction f_;
  SampledFunction fprime_;
};

/// Subgroup with f' > 0.
class StrictLineDiffeo : public LineDiffeo {
 public:
  explicit StrictLineDiffeo(const LineDiffeo& phi);
};

/// phi = a (id + f) + b with a > 0.
class ExtendedLineDiffeo {
 public:
  ExtendedLineDiffeo(double a, double b, LineDiffeo core);

  double scale() const noexcept { return a_; }
  double shift() const noexcept { return b_; }
  const LineDiffeo& core() const noexcept { return core_; }
  SampledFunction map() const;

 private:
  double a_;
  double b_;
  LineDiffeo core_;
};

/// Positive coefficient g of g dx on a line grid, decaying at both ends.
class LineDensity {
 public:
  explicit LineDensity(SampledFunction g, const Tolerances& tol = {});
  const SampledFunction& g() const noexcept { return g_; }

 private:
  SampledFunction g_;
};

/// phi o psi. Rejects results that leave the represented class.
LineDiffeo compose(const LineDiffeo& phi, const LineDiffeo& psi, const Tolerances& tol = {});

/// p (phi'^(1/p) - 1); log phi' for p = infinity.
SampledFunction phi_p(const LineDiffeo& phi, PExponent p);
/// Inverse of phi_p; NotInImage unless g > -p.
LineDiffeo phi_p_inverse(const SampledFunction& g, PExponent p, const Tolerances& tol = {});
/// Differential of phi_p at phi in direction h: h' phi'^(1/p - 1).
SampledFunction phi_p_differential(const LineDiffeo& phi, const SampledFunction& h, double p,
                                   const Tolerances& tol = {});

/// (integral phi'^(1-p) |h'|^p dx)^(1/p) for a displacement-type tangent h.
double w1p_energy(const LineDiffeo& phi, const SampledFunction& h, double p, const Tolerances& tol = {});

/// Gamma(phi) = f' dx.
LineDensity gamma(const StrictLineDiffeo& phi, const Tolerances& tol = {});
StrictLineDiffeo gamma_inverse(const LineDensity& mu, const Tolerances& tol = {});

/// F_p(mu, a) with the +dx shift. g is the coefficient of mu and only needs
/// g > -1, so the degenerate mu = 0 is allowed.
double line_fp_norm(const SampledFunction& g, const SampledFunction& a, PExponent p);

/// p ((1+g)^(1/p) - 1); log(1+g) for p = infinity.
SampledFunction psi_p(const SampledFunction& g, PExponent p);
/// Inverse of psi_p; NotInImage unless f > -p (finite p).
SampledFunction psi_p_inverse(const SampledFunction& f, PExponent p);

/// log a + log(1 + f_core'); independent of the shift b.
SampledFunction extended_phi_infty(const ExtendedLineDiffeo& phi);

}  // namespace lpgeo
