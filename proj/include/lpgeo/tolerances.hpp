#pragma once

namespace lpgeo {

// Every numerical threshold used by the library. Operations take a
// Tolerances by const reference (defaulted) and never hardcode these.
struct Tolerances {
  // |values| on the outer 5% of a line grid must stay below this for
  // functions that are meant to decay (f' of a diffeo, densities, ...).
  double decay = 1e-10;
  // Fraction of nodes at each end of a line grid covered by the decay check.
  double decay_fraction = 0.05;
  // Absolute bracket width at which monotone inversion stops.
  double bisection = 1e-12;
  // Total mass tolerance for probability densities and zero-mean tangents.
  double mass = 1e-10;
  // |rho_t/rho| below this is masked where |.|^(p-2) is evaluated with p < 2.
  double mask_delta = 1e-6;
  // Lower bound C for phi_tx/phi_x in the Orlicz geodesic residuals.
  double positivity_floor = 1e-3;
  // Relative tolerance of the Luxemburg bisection.
  double luxemburg_rel = 1e-12;
  // Below this separation the Schwarz potential switches to its diagonal limit.
  double potential_diagonal = 1e-6;
  // Step of the 2-d stencil for the mixed derivative of the Schwarz potential.
  double potential_step = 1e-3;
  // Quadrature slack of the integral constraint on Schwarzians.
  double bers_image = 1e-10;
  // |S| below this counts as zero when deciding the sign of a Schwarzian.
  double sign = 1e-8;
  // Step of the mixed finite difference of the Bott-Thurston cocycle.
  double cocycle_step = 1e-2;
  // Spectral closedness residual of a 2-form.
  double closedness = 1e-8;
  // Minimum |Pfaffian| of a non-degenerate 2-form on T^4.
  double pfaffian = 1e-6;
  // Relative disagreement between h and 2h quadrature of a Fisher integral.
  double score_refinement = 1e-6;
  // Location-scale generators: |g(-x) - g(x)| and |integral g - 1| bounds.
  double symmetry = 1e-10;
  double normalization = 1e-8;
  // Spread of sigma^2 g_tt, sigma^2 g_ss over a parameter grid, relative.
  double hyperbolic_constancy = 1e-5;
  // |g_ts| accepted as zero.
  double hyperbolic_offdiag = 1e-8;
};

}  // namespace lpgeo
