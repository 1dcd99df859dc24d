#ifndef LPGEO_LPGEO_H
#define LPGEO_LPGEO_H

/* C interface to liblpgeo. Objects are opaque handles released with the
 * matching *_free. Every fallible call returns an lpgeo_status; on failure
 * lpgeo_last_error() holds a message for the calling thread. Exponents p
 * accept INFINITY where the operation has an infinite-p form. A NULL
 * lpgeo_tol means the default tolerances. */

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define LPGEO_API __declspec(dllexport)
#else
#define LPGEO_API __attribute__((visibility("default")))
#endif

typedef enum lpgeo_status {
  LPGEO_OK = 0,
  LPGEO_INVALID_ARGUMENT = 1,
  LPGEO_GRID_MISMATCH = 2,
  LPGEO_DECAY_VIOLATION = 3,
  LPGEO_NOT_MONOTONE = 4,
  LPGEO_NO_BRACKET = 5,
  LPGEO_NOT_IN_IMAGE = 6,
  LPGEO_TOO_FEW_SLICES = 7,
  LPGEO_ALL_MASKED = 8,
  LPGEO_UNSUPPORTED_EXPONENT = 9,
  LPGEO_IMAGE_VIOLATION = 10,
  LPGEO_MIXED_SIGN = 11,
  LPGEO_STEP_TOO_SMALL = 12,
  LPGEO_DEGENERATE = 13,
  LPGEO_NOT_CLOSED = 14,
  LPGEO_NON_FINITE_INTEGRAL = 15,
  LPGEO_ZERO_DENOMINATOR = 16,
  LPGEO_MISSING_INVERSE = 17,
  LPGEO_POSITIVITY_VIOLATION = 18,
  LPGEO_NON_INTEGRABLE_SCORE = 19,
  LPGEO_CONFIG_ERROR = 20,
  LPGEO_INTERNAL_ERROR = 99
} lpgeo_status;

typedef enum lpgeo_residual_kind {
  LPGEO_RESIDUAL_DENS = 0,
  LPGEO_RESIDUAL_PROB = 1,
  LPGEO_RESIDUAL_CHERN = 2
} lpgeo_residual_kind;

typedef struct lpgeo_tol lpgeo_tol;
typedef struct lpgeo_grid lpgeo_grid;
typedef struct lpgeo_fn lpgeo_fn;
typedef struct lpgeo_young lpgeo_young;
typedef struct lpgeo_form lpgeo_form;
typedef struct lpgeo_report lpgeo_report;

LPGEO_API const char* lpgeo_status_name(int status);
LPGEO_API const char* lpgeo_last_error(void);

/* Tolerances. Names match the fields of the C++ Tolerances record. */
LPGEO_API lpgeo_status lpgeo_tol_new(lpgeo_tol** out);
LPGEO_API void lpgeo_tol_free(lpgeo_tol* tol);
/* CONFIG_ERROR for unknown names or non-positive values. */
LPGEO_API lpgeo_status lpgeo_tol_set(lpgeo_tol* tol, const char* name, double value);
LPGEO_API lpgeo_status lpgeo_tol_get(const lpgeo_tol* tol, const char* name, double* out);
/* Multiplies the acceptance-type thresholds; steps and bisection widths stay. */
LPGEO_API lpgeo_status lpgeo_tol_scale(lpgeo_tol* tol, double factor);

/* Grids. */
LPGEO_API lpgeo_status lpgeo_grid_circle(size_t n, lpgeo_grid** out);
LPGEO_API lpgeo_status lpgeo_grid_line(double half_width, size_t n, lpgeo_grid** out);
LPGEO_API void lpgeo_grid_free(lpgeo_grid* grid);
LPGEO_API size_t lpgeo_grid_size(const lpgeo_grid* grid);
LPGEO_API int lpgeo_grid_is_circle(const lpgeo_grid* grid);
LPGEO_API lpgeo_status lpgeo_grid_node(const lpgeo_grid* grid, size_t i, double* out);

/* Sampled functions. Circle maps are passed as their samples phi(x_i); line
 * diffeomorphisms id + f as the samples of f'. */
LPGEO_API lpgeo_status lpgeo_fn_new(const lpgeo_grid* grid, const double* values, size_t n, lpgeo_fn** out);
LPGEO_API void lpgeo_fn_free(lpgeo_fn* fn);
LPGEO_API size_t lpgeo_fn_size(const lpgeo_fn* fn);
LPGEO_API lpgeo_status lpgeo_fn_values(const lpgeo_fn* fn, double* out, size_t n);
LPGEO_API lpgeo_status lpgeo_fn_node(const lpgeo_fn* fn, size_t i, double* out);
LPGEO_API lpgeo_status lpgeo_fn_integral(const lpgeo_fn* fn, double* out);

/* Densities on the circle. */
LPGEO_API lpgeo_status lpgeo_lp_fisher_norm(const lpgeo_fn* mu, const lpgeo_fn* a, double p, double* out);
LPGEO_API lpgeo_status lpgeo_geodesic_explicit(const lpgeo_fn* rho0, const lpgeo_fn* rho1, double t, double p,
                                               lpgeo_fn** out);
/* Residual sup over the interior of a path of density slices t0 + k dt. */
LPGEO_API lpgeo_status lpgeo_geodesic_residual(const lpgeo_fn* const* slices, size_t count, double t0, double dt,
                                               double p, lpgeo_residual_kind kind, const lpgeo_tol* tol,
                                               double* sup);
LPGEO_API lpgeo_status lpgeo_flat_embed(const lpgeo_fn* mu, double p, lpgeo_fn** out);
LPGEO_API lpgeo_status lpgeo_flat_embed_inverse(const lpgeo_fn* f, double p, lpgeo_fn** out);
LPGEO_API lpgeo_status lpgeo_flat_embed_differential(const lpgeo_fn* mu, const lpgeo_fn* a, double p,
                                                     lpgeo_fn** out);
/* Monotone map phi with phi^* nu = mu; both must have unit mass. */
LPGEO_API lpgeo_status lpgeo_moser_map(const lpgeo_fn* mu, const lpgeo_fn* nu, const lpgeo_tol* tol,
                                       lpgeo_fn** out);
LPGEO_API lpgeo_status lpgeo_invert_map(const lpgeo_fn* map, const lpgeo_tol* tol, lpgeo_fn** out);
LPGEO_API lpgeo_status lpgeo_pullback(const lpgeo_fn* rho, const lpgeo_fn* map, lpgeo_fn** out);

/* Diffeomorphisms x + f(x) of the line, given by the decaying f' > -1. */
LPGEO_API lpgeo_status lpgeo_line_map(const lpgeo_fn* fprime, const lpgeo_tol* tol, lpgeo_fn** out);
LPGEO_API lpgeo_status lpgeo_phi_p(const lpgeo_fn* fprime, double p, const lpgeo_tol* tol, lpgeo_fn** out);
/* Returns the f' of the preimage. */
LPGEO_API lpgeo_status lpgeo_phi_p_inverse(const lpgeo_fn* g, double p, const lpgeo_tol* tol, lpgeo_fn** out);
LPGEO_API lpgeo_status lpgeo_psi_p(const lpgeo_fn* g, double p, lpgeo_fn** out);
LPGEO_API lpgeo_status lpgeo_psi_p_inverse(const lpgeo_fn* f, double p, lpgeo_fn** out);
/* Samples of the diffeomorphism whose Gamma image is g dx. */
LPGEO_API lpgeo_status lpgeo_gamma_inverse(const lpgeo_fn* g, const lpgeo_tol* tol, lpgeo_fn** out);
LPGEO_API lpgeo_status lpgeo_w1p_energy(const lpgeo_fn* fprime, const lpgeo_fn* h, double p, const lpgeo_tol* tol,
                                        double* out);
LPGEO_API lpgeo_status lpgeo_line_fp_norm(const lpgeo_fn* g, const lpgeo_fn* a, double p, double* out);

/* Schwarzian calculus on line diffeomorphisms. */
LPGEO_API lpgeo_status lpgeo_schwarzian(const lpgeo_fn* fprime, const lpgeo_tol* tol, lpgeo_fn** out);
LPGEO_API lpgeo_status lpgeo_schwarzian_via_potential(const lpgeo_fn* fprime, const lpgeo_tol* tol, lpgeo_fn** out);
LPGEO_API lpgeo_status lpgeo_lp_schwarzian(const lpgeo_fn* fprime, double p, const lpgeo_tol* tol, lpgeo_fn** out);
LPGEO_API lpgeo_status lpgeo_schwarz_potential(const lpgeo_fn* fprime, double y, double z, const lpgeo_tol* tol,
                                               double* out);
/* Classical chain rule for p = INFINITY, the L^p one otherwise. */
LPGEO_API lpgeo_status lpgeo_schwarzian_chain_residual(const lpgeo_fn* fprime_phi, const lpgeo_fn* fprime_psi,
                                                       double p, const lpgeo_tol* tol, double* out);
LPGEO_API lpgeo_status lpgeo_bers_map(const lpgeo_fn* fprime, const lpgeo_tol* tol, lpgeo_fn** field,
                                      double* integral);
/* f' of the diffeomorphism whose log-Jacobian is u'' - u'^2/2. */
LPGEO_API lpgeo_status lpgeo_schwarzian_preimage(const lpgeo_fn* u, const lpgeo_tol* tol, lpgeo_fn** out);
LPGEO_API lpgeo_status lpgeo_bers_kernel_probe(const lpgeo_fn* fprime, double c0, double c1, const lpgeo_tol* tol,
                                               double* out);

typedef struct lpgeo_dynamics {
  double min_tangent;
  double max_tangent;
  int sign;
  double s_min;
  double s_max;
} lpgeo_dynamics;

LPGEO_API lpgeo_status lpgeo_dynamics_check(const lpgeo_fn* fprime, int n, int m, double lo, double hi,
                                            const lpgeo_tol* tol, lpgeo_dynamics* out);

/* Cocycles on the circle. */
LPGEO_API lpgeo_status lpgeo_log_jacobian(const lpgeo_fn* map, const lpgeo_fn* mu, const lpgeo_tol* tol,
                                          lpgeo_fn** out);
LPGEO_API lpgeo_status lpgeo_bott_thurston(const lpgeo_fn* map1, const lpgeo_fn* map2, const lpgeo_fn* mu,
                                           const lpgeo_tol* tol, double* out);
LPGEO_API lpgeo_status lpgeo_gelfand_fuchs(const lpgeo_fn* a1, const lpgeo_fn* a2, const lpgeo_fn* mu,
                                           const lpgeo_tol* tol, double* out);
/* mu must have unit mass. */
LPGEO_API lpgeo_status lpgeo_mixed_derivative_check(const lpgeo_fn* a1, const lpgeo_fn* a2, const lpgeo_fn* mu,
                                                    const lpgeo_tol* tol, double* out);
LPGEO_API lpgeo_status lpgeo_omega_lp_sphere(const lpgeo_fn* f, const lpgeo_fn* b1, const lpgeo_fn* b2, double p,
                                             double* out);
LPGEO_API lpgeo_status lpgeo_virasoro_bracket(const lpgeo_fn* f, double cf, const lpgeo_fn* g, double cg,
                                              lpgeo_fn** vector_part, double* central);
LPGEO_API lpgeo_status lpgeo_group_cocycle_residual(const lpgeo_fn* map1, const lpgeo_fn* map2, const lpgeo_fn* map3,
                                                    const lpgeo_fn* mu, const lpgeo_tol* tol, double* out);

/* 2-forms on the flat 4-torus with n^4 nodes, first coordinate slowest.
 * Coefficient arrays hold 6 blocks of n^4 values in the order 12, 13, 14, 23,
 * 24, 34; 1-form arrays hold 4 blocks. */
LPGEO_API lpgeo_status lpgeo_form_new(size_t n, const double* coeffs, size_t count, lpgeo_form** out);
LPGEO_API lpgeo_status lpgeo_form_exact(size_t n, const double* sigma, size_t count, lpgeo_form** out);
LPGEO_API lpgeo_status lpgeo_form_add(const lpgeo_form* a, const lpgeo_form* b, lpgeo_form** out);
LPGEO_API void lpgeo_form_free(lpgeo_form* form);
LPGEO_API size_t lpgeo_form_n(const lpgeo_form* form);
LPGEO_API lpgeo_status lpgeo_form_coefficients(const lpgeo_form* form, double* out, size_t count);
LPGEO_API lpgeo_status lpgeo_form_closedness(const lpgeo_form* form, double* out);
LPGEO_API lpgeo_status lpgeo_symplectic_norm(const lpgeo_form* omega0, const lpgeo_form* beta, double p,
                                             const lpgeo_tol* tol, double* out);
LPGEO_API lpgeo_status lpgeo_symplectic_inner(const lpgeo_form* omega0, const lpgeo_form* alpha,
                                              const lpgeo_form* beta, const lpgeo_tol* tol, double* out);
LPGEO_API lpgeo_status lpgeo_pushforward_check(const lpgeo_form* omega0, const lpgeo_form* beta, double p,
                                               const lpgeo_tol* tol, double* lhs, double* rhs);
LPGEO_API lpgeo_status lpgeo_harmonic_part(const lpgeo_form* omega, const lpgeo_tol* tol, lpgeo_form** out);

/* Orlicz geometry. */
LPGEO_API lpgeo_status lpgeo_young_from_label(const char* label, lpgeo_young** out);
LPGEO_API void lpgeo_young_free(lpgeo_young* young);
LPGEO_API const char* lpgeo_young_label(const lpgeo_young* young);
LPGEO_API lpgeo_status lpgeo_luxemburg_norm(const lpgeo_fn* f, const lpgeo_fn* mu, const lpgeo_young* young,
                                            const lpgeo_tol* tol, double* out);
LPGEO_API lpgeo_status lpgeo_luxemburg_first_variation(const lpgeo_fn* f, const lpgeo_fn* h, const lpgeo_fn* mu,
                                                       const lpgeo_young* young, const lpgeo_tol* tol, double* out);
LPGEO_API lpgeo_status lpgeo_orlicz_invariance(const lpgeo_fn* a, const lpgeo_fn* mu, const lpgeo_young* young,
                                               const lpgeo_fn* map, const lpgeo_tol* tol, double* before,
                                               double* after);
/* rho must have unit mass. */
LPGEO_API lpgeo_status lpgeo_phi_embedding(const lpgeo_fn* rho, const lpgeo_young* young, lpgeo_fn** out);
/* Residual sup on a path of Jacobians t0 + k dt. */
LPGEO_API lpgeo_status lpgeo_orlicz_geodesic_residual(const lpgeo_fn* const* jacobians, size_t count, double dt,
                                                      const lpgeo_young* young, const lpgeo_tol* tol, double* sup);
LPGEO_API lpgeo_status lpgeo_lp_reduction_residual(const lpgeo_fn* const* jacobians, size_t count, double dt, double p,
                                                   const lpgeo_tol* tol, double* sup);

/* Location-scale families. */
typedef struct lpgeo_hyperbolic {
  double c_tt;
  double c_ss;
  double max_spread;
  double max_offdiag;
  int positive_definite;
  int hyperbolic;
} lpgeo_hyperbolic;

/* out receives g_tt, g_ts, g_st, g_ss. */
LPGEO_API lpgeo_status lpgeo_fisher_matrix(const lpgeo_fn* generator, int allow_asymmetric, double t, double sigma,
                                           const lpgeo_tol* tol, double out[4]);
LPGEO_API lpgeo_status lpgeo_hyperbolic_check(const lpgeo_fn* generator, int allow_asymmetric, const double* ts,
                                              size_t nt, const double* sigmas, size_t ns, const lpgeo_tol* tol,
                                              lpgeo_hyperbolic* out);

/* Acceptance suite. criterion = 0 runs all nine. */
LPGEO_API lpgeo_status lpgeo_verify(int criterion, double tol_scale, lpgeo_report** out);
LPGEO_API void lpgeo_report_free(lpgeo_report* report);
LPGEO_API size_t lpgeo_report_criteria(const lpgeo_report* report);
/* Strings stay valid until the report is freed; error is "" when none. */
LPGEO_API lpgeo_status lpgeo_report_criterion(const lpgeo_report* report, size_t i, int* id, const char** title,
                                              int* passed, const char** error, size_t* checks);
LPGEO_API lpgeo_status lpgeo_report_check(const lpgeo_report* report, size_t i, size_t j, const char** name,
                                          double* measured, double* lo, double* hi, int* passed);

#ifdef __cplusplus
}
#endif

#endif /* LPGEO_LPGEO_H */
