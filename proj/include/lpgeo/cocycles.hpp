#pragma once

// Bott-Thurston group cocycle, the mixed-derivative cocycle on tangent
// densities, its L^p-sphere form and the Virasoro bracket. The circle case
// (n = 1) works on Density; the flat 2-torus case (n = 2) on TorusFunction.
//
// Group product convention: phi * psi := psi o phi, so that
// alpha(phi * psi) = (alpha(psi) o phi) alpha(phi) for alpha(phi) = phi^* mu / mu.

#include <cstddef>
#include <span>
#include <vector>

#include "lpgeo/densities.hpp"

namespace lpgeo {

/// Periodic samples on an n1 x n2 uniform grid of [0,1)^2, row-major with
/// the y index fastest.
class TorusFunction {
 public:
  TorusFunction(std::size_t n1, std::size_t n2, std::vector<double> values);

  template <class Fn>
  static TorusFunction sample(std::size_t n1, std::size_t n2, Fn&& fn) {
    std::vector<double> v(n1 * n2);
    for (std::size_t i = 0; i < n1; ++i)
      for (std::size_t j = 0; j < n2; ++j)
        v[i * n2 + j] = fn(static_cast<double>(i) / static_cast<double>(n1),
                           static_cast<double>(j) / static_cast<double>(n2));
    return TorusFunction(n1, n2, std::move(v));
  }

  std::size_t n1() const noexcept { return n1_; }
  std::size_t n2() const noexcept { return n2_; }
  const std::vector<double>& values() const noexcept { return v_; }
  double at(std::size_t i, std::size_t j) const { return v_[i * n2_ + j]; }

  /// Spectral derivative along axis 0 (x) or 1 (y).
  TorusFunction partial(std::size_t axis, int order = 1) const;
  double integral() const;
  double min() const;
  void require_same_grid(const TorusFunction& other) const;

 private:
  std::size_t n1_;
  std::size_t n2_;
  std::vector<double> v_;
};

/// Coordinate-wise torus diffeomorphism (x, y) -> (fx(x), fy(y)); both
/// components are monotone circle lifts.
struct TorusDiffeo {
  SampledFunction fx;
  SampledFunction fy;

  static TorusDiffeo identity(std::size_t n1, std::size_t n2);
};

/// psi o phi, the product phi * psi.
SampledFunction group_product(const SampledFunction& phi, const SampledFunction& psi,
                              const Tolerances& tol = {});
TorusDiffeo group_product(const TorusDiffeo& phi, const TorusDiffeo& psi, const Tolerances& tol = {});

/// log(phi' (rho o phi) / rho). NotMonotone for non-monotone phi.
SampledFunction log_jacobian(const SampledFunction& phi, const Density& mu, const Tolerances& tol = {});
TorusFunction log_jacobian(const TorusDiffeo& phi, const TorusFunction& rho, const Tolerances& tol = {});

/// c = integral of log alpha(phi~1) d log alpha(phi~2) [^ d log alpha(phi~3)]
/// with partial products phi~i = phi1 * ... * phii. Two maps on the circle,
/// three on the torus.
double bott_thurston_c(std::span<const SampledFunction> phis, const Density& mu, const Tolerances& tol = {});
double bott_thurston_c(std::span<const TorusDiffeo> phis, const TorusFunction& rho, const Tolerances& tol = {});

/// omega = integral (a1/mu) d(a2/mu) [^ d(a3/mu)] for zero-mass tangents.
double gelfand_fuchs_omega(std::span<const SampledFunction> tangents, const Density& mu,
                           const Tolerances& tol = {});
double gelfand_fuchs_omega(std::span<const TorusFunction> tangents, const TorusFunction& rho,
                           const Tolerances& tol = {});

/// |mixed central difference of c(phi1^t1, phi2^t2) - omega(a1, a2)| on the
/// circle, with (phii^t)^* mu = mu + t ai from the Moser map and step
/// tol.cocycle_step. StepTooSmall when halving the step changes the
/// difference quotient by more than a tenth.
double mixed_derivative_check(const SampledFunction& a1, const SampledFunction& a2, const ProbabilityDensity& mu,
                              const Tolerances& tol = {});

/// p^(n+1) integral (b1/f) d(b2/f) [^ d(b3/f)] for sphere fields bi.
double omega_lp_sphere(const SampledFunction& f, std::span<const SampledFunction> fields, double p);
double omega_lp_sphere(const TorusFunction& f, std::span<const TorusFunction> fields, double p);

struct VirasoroElement {
  SampledFunction vector_part;
  double central = 0.0;
};

/// ((f'g - fg') d_x, integral f'g'' dx). Central parts of the inputs drop out.
VirasoroElement virasoro_bracket(const VirasoroElement& x, const VirasoroElement& y);

/// |c(psi,chi) - c(phi psi,chi) + c(phi,psi chi) - c(phi,psi)| on the circle.
double group_cocycle_residual(const SampledFunction& phi, const SampledFunction& psi, const SampledFunction& chi,
                              const Density& mu, const Tolerances& tol = {});

}  // namespace lpgeo
