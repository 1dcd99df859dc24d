#pragma once

// Schwarz potential, Schwarzian and L^p-Schwarzian derivatives of line
// diffeomorphisms, their chain rules, and the real Bers map.

#include "lpgeo/diff_line.hpp"

namespace lpgeo {

/// V(y,z) = log((phi(y) - phi(z)) / (y - z)); log phi'((y+z)/2) when
/// |y - z| < tol.potential_diagonal.
double schwarz_potential(const LineDiffeo& phi, double y, double z, const Tolerances& tol = {});
/// Potential of a (phi - b)/a extension: log a + V of the core.
double schwarz_potential(const ExtendedLineDiffeo& phi, double y, double z, const Tolerances& tol = {});
/// V_p = p (exp(V/p) - 1).
double lp_schwarz_potential(const LineDiffeo& phi, double p, double y, double z,
                            const Tolerances& tol = {});

/// S = u'' - u'^2 / 2 with u = log phi'.
SampledFunction schwarzian(const LineDiffeo& phi, const Tolerances& tol = {});
/// Left affine factors do not enter: computed from log phi' minus log a.
SampledFunction schwarzian(const ExtendedLineDiffeo& phi, const Tolerances& tol = {});
/// Schwarzian of a log-Jacobian u directly.
SampledFunction schwarzian_from_log_jacobian(const SampledFunction& u, const Tolerances& tol = {});

/// 6 d^2V/dydz on the diagonal by a fourth-order tensor stencil of step
/// tol.potential_step. Nodes in the outer decay band are left at 0.
SampledFunction schwarzian_via_potential(const LineDiffeo& phi, const Tolerances& tol = {});

/// (3/(2p) u'^2 + S) exp(u/p).
SampledFunction lp_schwarzian(const LineDiffeo& phi, double p, const Tolerances& tol = {});
SampledFunction lp_schwarzian_via_potential(const LineDiffeo& phi, double p, const Tolerances& tol = {});

/// sup over interior nodes of S{phi o psi} - (S{phi} o psi psi'^2 + S{psi}).
double schwarzian_chain_residual(const LineDiffeo& phi, const LineDiffeo& psi, const Tolerances& tol = {});
/// Same for the L^p-Schwarzian chain rule.
double lp_schwarzian_chain_residual(const LineDiffeo& phi, const LineDiffeo& psi, double p,
                                    const Tolerances& tol = {});

struct BersImage {
  SampledFunction field;
  double integral;
};

/// The Schwarzian together with its integral; ImageViolation if the
/// integral exceeds tol.bers_image.
BersImage bers_map(const LineDiffeo& phi, const Tolerances& tol = {});
/// Diffeomorphism whose log-Jacobian is u'' - u'^2/2.
LineDiffeo schwarzian_preimage(const SampledFunction& u, const Tolerances& tol = {});

/// sup |D beta(u)[chi (c0 integral e^u + c1)]| with u = log phi' and chi a
/// smooth window that truncates the kernel candidate to the grid. Zero
/// would indicate a numerical kernel direction.
double bers_kernel_probe(const LineDiffeo& phi, double c0, double c1, const Tolerances& tol = {});

struct Region {
  double lo;
  double hi;
};

struct DynamicsReport {
  double min_tangent;
  double max_tangent;
  /// +1, -1, or 0 when S vanishes on the region.
  int sign;
  double s_min;
  double s_max;
};

/// Builds xi = schwarzian_preimage(log (phi^m)'), iterates it n times and
/// reports the derivative of xi^n over the region together with the sign of
/// S{phi} there (MixedSign if it changes sign by more than tol.sign).
DynamicsReport dynamics_tangent_check(const LineDiffeo& phi, int n, int m, Region region,
                                      const Tolerances& tol = {});

}  // namespace lpgeo
