#include "lpgeo/lpgeo.h"

#include <array>
#include <cmath>
#include <cstring>
#include <new>
#include <string>
#include <utility>

#include "lpgeo/cocycles.hpp"
#include "lpgeo/diff_line.hpp"
#include "lpgeo/hyperbolic.hpp"
#include "lpgeo/orlicz.hpp"
#include "lpgeo/schwarzian.hpp"
#include "lpgeo/symplectic.hpp"
#include "lpgeo/verify.hpp"

struct lpgeo_tol {
  lpgeo::Tolerances t;
};
struct lpgeo_grid {
  lpgeo::Grid g;
};
struct lpgeo_fn {
  lpgeo::SampledFunction f;
};
struct lpgeo_young {
  lpgeo::YoungFunction y;
};
struct lpgeo_form {
  lpgeo::Form2OnT4 f;
};
struct lpgeo_report {
  std::vector<lpgeo::CriterionResult> r;
};

namespace {

using lpgeo::ErrorCode;

thread_local std::string g_last_error;

template <class F>
lpgeo_status guard(F&& body) {
  try {
    body();
    g_last_error.clear();
    return LPGEO_OK;
  } catch (const lpgeo::Error& e) {
    g_last_error = e.what();
    return static_cast<lpgeo_status>(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return LPGEO_INTERNAL_ERROR;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return LPGEO_INTERNAL_ERROR;
  }
}

template <class T>
const T& need(const T* p) {
  if (!p) lpgeo::fail(ErrorCode::invalid_argument, "null argument");
  return *p;
}

template <class T>
T& need_out(T* p) {
  if (!p) lpgeo::fail(ErrorCode::invalid_argument, "null output argument");
  return *p;
}

const lpgeo::Tolerances& tolerances(const lpgeo_tol* tol) {
  static const lpgeo::Tolerances defaults{};
  return tol ? tol->t : defaults;
}

struct TolField {
  const char* name;
  double lpgeo::Tolerances::*member;
  bool acceptance;  // scaled by lpgeo_tol_scale
};

constexpr TolField kTolFields[] = {
    {"decay", &lpgeo::Tolerances::decay, true},
    {"decay_fraction", &lpgeo::Tolerances::decay_fraction, false},
    {"bisection", &lpgeo::Tolerances::bisection, false},
    {"mass", &lpgeo::Tolerances::mass, true},
    {"mask_delta", &lpgeo::Tolerances::mask_delta, false},
    {"positivity_floor", &lpgeo::Tolerances::positivity_floor, false},
    {"luxemburg_rel", &lpgeo::Tolerances::luxemburg_rel, false},
    {"potential_diagonal", &lpgeo::Tolerances::potential_diagonal, false},
    {"potential_step", &lpgeo::Tolerances::potential_step, false},
    {"bers_image", &lpgeo::Tolerances::bers_image, true},
    {"sign", &lpgeo::Tolerances::sign, false},
    {"cocycle_step", &lpgeo::Tolerances::cocycle_step, false},
    {"closedness", &lpgeo::Tolerances::closedness, true},
    {"pfaffian", &lpgeo::Tolerances::pfaffian, false},
    {"score_refinement", &lpgeo::Tolerances::score_refinement, true},
    {"symmetry", &lpgeo::Tolerances::symmetry, true},
    {"normalization", &lpgeo::Tolerances::normalization, true},
    {"hyperbolic_constancy", &lpgeo::Tolerances::hyperbolic_constancy, true},
    {"hyperbolic_offdiag", &lpgeo::Tolerances::hyperbolic_offdiag, true},
};

const TolField& tol_field(const char* name) {
  if (!name) lpgeo::fail(ErrorCode::config_error, "null tolerance name");
  for (const auto& f : kTolFields)
    if (std::strcmp(f.name, name) == 0) return f;
  lpgeo::fail(ErrorCode::config_error, std::string("unknown tolerance '") + name + "'");
}

lpgeo_fn* wrap(lpgeo::SampledFunction f) { return new lpgeo_fn{std::move(f)}; }

lpgeo::PExponent exponent(double p) { return lpgeo::PExponent::from_double(p); }

lpgeo::LineDiffeo diffeo(const lpgeo_fn* fprime, const lpgeo_tol* tol) {
  return lpgeo::LineDiffeo::from_derivative(need(fprime).f, tolerances(tol));
}

std::vector<lpgeo::SampledFunction> slices_of(const lpgeo_fn* const* fs, size_t count) {
  if (!fs && count) lpgeo::fail(ErrorCode::invalid_argument, "null slice array");
  std::vector<lpgeo::SampledFunction> out;
  out.reserve(count);
  for (size_t k = 0; k < count; ++k) out.push_back(need(fs[k]).f);
  return out;
}

lpgeo::T4Grid t4(size_t n, size_t count, size_t blocks) {
  const lpgeo::T4Grid g(n);
  if (count != blocks * g.size()) lpgeo::fail(ErrorCode::invalid_argument, "coefficient array has the wrong length");
  return g;
}

lpgeo::JacobianPath jacobian_path(const lpgeo_fn* const* js, size_t count, double dt) {
  return lpgeo::JacobianPath{0.0, dt, slices_of(js, count)};
}

}  // namespace

extern "C" {

const char* lpgeo_status_name(int status) {
  if (status == LPGEO_INTERNAL_ERROR) return "InternalError";
  if (status < 0 || status > LPGEO_CONFIG_ERROR) return "Unknown";
  return lpgeo::error_name(static_cast<ErrorCode>(status)).data();
}

const char* lpgeo_last_error(void) { return g_last_error.c_str(); }

lpgeo_status lpgeo_tol_new(lpgeo_tol** out) {
  return guard([&] { need_out(out) = new lpgeo_tol{}; });
}

void lpgeo_tol_free(lpgeo_tol* tol) { delete tol; }

lpgeo_status lpgeo_tol_set(lpgeo_tol* tol, const char* name, double value) {
  return guard([&] {
    auto& t = need_out(tol);
    const auto& f = tol_field(name);
    if (!(std::isfinite(value) && value > 0.0))
      lpgeo::fail(ErrorCode::config_error, std::string("tolerance '") + name + "' must be positive");
    t.t.*(f.member) = value;
  });
}

lpgeo_status lpgeo_tol_get(const lpgeo_tol* tol, const char* name, double* out) {
  return guard([&] { need_out(out) = tolerances(tol).*(tol_field(name).member); });
}

lpgeo_status lpgeo_tol_scale(lpgeo_tol* tol, double factor) {
  return guard([&] {
    auto& t = need_out(tol);
    if (!(std::isfinite(factor) && factor > 0.0)) lpgeo::fail(ErrorCode::config_error, "tolerance scale must be positive");
    for (const auto& f : kTolFields)
      if (f.acceptance) t.t.*(f.member) *= factor;
  });
}

lpgeo_status lpgeo_grid_circle(size_t n, lpgeo_grid** out) {
  return guard([&] { need_out(out) = new lpgeo_grid{lpgeo::Grid::circle(n)}; });
}

lpgeo_status lpgeo_grid_line(double half_width, size_t n, lpgeo_grid** out) {
  return guard([&] { need_out(out) = new lpgeo_grid{lpgeo::Grid::line(half_width, n)}; });
}

void lpgeo_grid_free(lpgeo_grid* grid) { delete grid; }

size_t lpgeo_grid_size(const lpgeo_grid* grid) { return grid ? grid->g.size() : 0; }

int lpgeo_grid_is_circle(const lpgeo_grid* grid) { return grid && grid->g.is_circle() ? 1 : 0; }

lpgeo_status lpgeo_grid_node(const lpgeo_grid* grid, size_t i, double* out) {
  return guard([&] {
    const auto& g = need(grid).g;
    lpgeo::require(i < g.size(), ErrorCode::invalid_argument, "node index out of range");
    need_out(out) = g.node(i);
  });
}

lpgeo_status lpgeo_fn_new(const lpgeo_grid* grid, const double* values, size_t n, lpgeo_fn** out) {
  return guard([&] {
    const auto& g = need(grid).g;
    if (!values && n) lpgeo::fail(ErrorCode::invalid_argument, "null values");
    need_out(out) = wrap(lpgeo::SampledFunction(g, std::vector<double>(values, values + n)));
  });
}

void lpgeo_fn_free(lpgeo_fn* fn) { delete fn; }

size_t lpgeo_fn_size(const lpgeo_fn* fn) { return fn ? fn->f.size() : 0; }

lpgeo_status lpgeo_fn_values(const lpgeo_fn* fn, double* out, size_t n) {
  return guard([&] {
    const auto& f = need(fn).f;
    lpgeo::require(out && n == f.size(), ErrorCode::invalid_argument, "output buffer must match the grid size");
    std::copy(f.values().begin(), f.values().end(), out);
  });
}

lpgeo_status lpgeo_fn_node(const lpgeo_fn* fn, size_t i, double* out) {
  return guard([&] {
    const auto& g = need(fn).f.grid();
    lpgeo::require(i < g.size(), ErrorCode::invalid_argument, "node index out of range");
    need_out(out) = g.node(i);
  });
}

lpgeo_status lpgeo_fn_integral(const lpgeo_fn* fn, double* out) {
  return guard([&] { need_out(out) = lpgeo::integrate(need(fn).f); });
}

lpgeo_status lpgeo_lp_fisher_norm(const lpgeo_fn* mu, const lpgeo_fn* a, double p, double* out) {
  return guard([&] { need_out(out) = lpgeo::lp_fisher_norm(lpgeo::Density(need(mu).f), need(a).f, exponent(p)); });
}

lpgeo_status lpgeo_geodesic_explicit(const lpgeo_fn* rho0, const lpgeo_fn* rho1, double t, double p, lpgeo_fn** out) {
  return guard([&] {
    need_out(out) =
        wrap(lpgeo::geodesic_explicit(lpgeo::Density(need(rho0).f), lpgeo::Density(need(rho1).f), t, p).rho());
  });
}

lpgeo_status lpgeo_geodesic_residual(const lpgeo_fn* const* slices, size_t count, double t0, double dt, double p,
                                     lpgeo_residual_kind kind, const lpgeo_tol* tol, double* sup) {
  return guard([&] {
    lpgeo::DensityPath path{t0, dt, {}};
    for (auto& s : slices_of(slices, count)) path.slices.emplace_back(std::move(s));
    auto& o = need_out(sup);
    switch (kind) {
      case LPGEO_RESIDUAL_DENS: o = lpgeo::dens_geodesic_residual(path, p).sup(); break;
      case LPGEO_RESIDUAL_PROB: o = lpgeo::prob_geodesic_residual(path, p, tolerances(tol)).sup(); break;
      case LPGEO_RESIDUAL_CHERN: o = lpgeo::chern_geodesic_residual(path, p).sup(); break;
      default: lpgeo::fail(ErrorCode::invalid_argument, "unknown residual kind");
    }
  });
}

lpgeo_status lpgeo_flat_embed(const lpgeo_fn* mu, double p, lpgeo_fn** out) {
  return guard([&] { need_out(out) = wrap(lpgeo::flat_embed(lpgeo::Density(need(mu).f), p)); });
}

lpgeo_status lpgeo_flat_embed_inverse(const lpgeo_fn* f, double p, lpgeo_fn** out) {
  return guard([&] { need_out(out) = wrap(lpgeo::flat_embed_inverse(need(f).f, p).rho()); });
}

lpgeo_status lpgeo_flat_embed_differential(const lpgeo_fn* mu, const lpgeo_fn* a, double p, lpgeo_fn** out) {
  return guard([&] { need_out(out) = wrap(lpgeo::flat_embed_differential(lpgeo::Density(need(mu).f), need(a).f, p)); });
}

lpgeo_status lpgeo_moser_map(const lpgeo_fn* mu, const lpgeo_fn* nu, const lpgeo_tol* tol, lpgeo_fn** out) {
  return guard([&] {
    const auto& t = tolerances(tol);
    need_out(out) = wrap(
        lpgeo::moser_map_1d(lpgeo::ProbabilityDensity(need(mu).f, t), lpgeo::ProbabilityDensity(need(nu).f, t), t));
  });
}

lpgeo_status lpgeo_invert_map(const lpgeo_fn* map, const lpgeo_tol* tol, lpgeo_fn** out) {
  return guard([&] { need_out(out) = wrap(lpgeo::invert_monotone(need(map).f, tolerances(tol))); });
}

lpgeo_status lpgeo_pullback(const lpgeo_fn* rho, const lpgeo_fn* map, lpgeo_fn** out) {
  return guard([&] { need_out(out) = wrap(lpgeo::pullback(need(rho).f, need(map).f)); });
}

lpgeo_status lpgeo_line_map(const lpgeo_fn* fprime, const lpgeo_tol* tol, lpgeo_fn** out) {
  return guard([&] { need_out(out) = wrap(diffeo(fprime, tol).map()); });
}

lpgeo_status lpgeo_phi_p(const lpgeo_fn* fprime, double p, const lpgeo_tol* tol, lpgeo_fn** out) {
  return guard([&] { need_out(out) = wrap(lpgeo::phi_p(diffeo(fprime, tol), exponent(p))); });
}

lpgeo_status lpgeo_phi_p_inverse(const lpgeo_fn* g, double p, const lpgeo_tol* tol, lpgeo_fn** out) {
  return guard([&] {
    need_out(out) = wrap(lpgeo::phi_p_inverse(need(g).f, exponent(p), tolerances(tol)).displacement_derivative());
  });
}

lpgeo_status lpgeo_psi_p(const lpgeo_fn* g, double p, lpgeo_fn** out) {
  return guard([&] { need_out(out) = wrap(lpgeo::psi_p(need(g).f, exponent(p))); });
}

lpgeo_status lpgeo_psi_p_inverse(const lpgeo_fn* f, double p, lpgeo_fn** out) {
  return guard([&] { need_out(out) = wrap(lpgeo::psi_p_inverse(need(f).f, exponent(p))); });
}

lpgeo_status lpgeo_gamma_inverse(const lpgeo_fn* g, const lpgeo_tol* tol, lpgeo_fn** out) {
  return guard([&] {
    const auto& t = tolerances(tol);
    need_out(out) = wrap(lpgeo::gamma_inverse(lpgeo::LineDensity(need(g).f, t), t).map());
  });
}

lpgeo_status lpgeo_w1p_energy(const lpgeo_fn* fprime, const lpgeo_fn* h, double p, const lpgeo_tol* tol, double* out) {
  return guard([&] { need_out(out) = lpgeo::w1p_energy(diffeo(fprime, tol), need(h).f, p, tolerances(tol)); });
}

lpgeo_status lpgeo_line_fp_norm(const lpgeo_fn* g, const lpgeo_fn* a, double p, double* out) {
  return guard([&] { need_out(out) = lpgeo::line_fp_norm(need(g).f, need(a).f, exponent(p)); });
}

lpgeo_status lpgeo_schwarzian(const lpgeo_fn* fprime, const lpgeo_tol* tol, lpgeo_fn** out) {
  return guard([&] { need_out(out) = wrap(lpgeo::schwarzian(diffeo(fprime, tol), tolerances(tol))); });
}

lpgeo_status lpgeo_schwarzian_via_potential(const lpgeo_fn* fprime, const lpgeo_tol* tol, lpgeo_fn** out) {
  return guard([&] { need_out(out) = wrap(lpgeo::schwarzian_via_potential(diffeo(fprime, tol), tolerances(tol))); });
}

lpgeo_status lpgeo_lp_schwarzian(const lpgeo_fn* fprime, double p, const lpgeo_tol* tol, lpgeo_fn** out) {
  return guard([&] { need_out(out) = wrap(lpgeo::lp_schwarzian(diffeo(fprime, tol), p, tolerances(tol))); });
}

lpgeo_status lpgeo_schwarz_potential(const lpgeo_fn* fprime, double y, double z, const lpgeo_tol* tol, double* out) {
  return guard([&] { need_out(out) = lpgeo::schwarz_potential(diffeo(fprime, tol), y, z, tolerances(tol)); });
}

lpgeo_status lpgeo_schwarzian_chain_residual(const lpgeo_fn* fprime_phi, const lpgeo_fn* fprime_psi, double p,
                                             const lpgeo_tol* tol, double* out) {
  return guard([&] {
    const auto phi = diffeo(fprime_phi, tol);
    const auto psi = diffeo(fprime_psi, tol);
    need_out(out) = std::isinf(p) ? lpgeo::schwarzian_chain_residual(phi, psi, tolerances(tol))
                                  : lpgeo::lp_schwarzian_chain_residual(phi, psi, p, tolerances(tol));
  });
}

lpgeo_status lpgeo_bers_map(const lpgeo_fn* fprime, const lpgeo_tol* tol, lpgeo_fn** field, double* integral) {
  return guard([&] {
    auto image = lpgeo::bers_map(diffeo(fprime, tol), tolerances(tol));
    need_out(integral) = image.integral;
    need_out(field) = wrap(std::move(image.field));
  });
}

lpgeo_status lpgeo_schwarzian_preimage(const lpgeo_fn* u, const lpgeo_tol* tol, lpgeo_fn** out) {
  return guard([&] {
    need_out(out) = wrap(lpgeo::schwarzian_preimage(need(u).f, tolerances(tol)).displacement_derivative());
  });
}

lpgeo_status lpgeo_bers_kernel_probe(const lpgeo_fn* fprime, double c0, double c1, const lpgeo_tol* tol, double* out) {
  return guard([&] { need_out(out) = lpgeo::bers_kernel_probe(diffeo(fprime, tol), c0, c1, tolerances(tol)); });
}

lpgeo_status lpgeo_dynamics_check(const lpgeo_fn* fprime, int n, int m, double lo, double hi, const lpgeo_tol* tol,
                                  lpgeo_dynamics* out) {
  return guard([&] {
    const auto r = lpgeo::dynamics_tangent_check(diffeo(fprime, tol), n, m, {lo, hi}, tolerances(tol));
    need_out(out) = {r.min_tangent, r.max_tangent, r.sign, r.s_min, r.s_max};
  });
}

lpgeo_status lpgeo_log_jacobian(const lpgeo_fn* map, const lpgeo_fn* mu, const lpgeo_tol* tol, lpgeo_fn** out) {
  return guard([&] {
    need_out(out) = wrap(lpgeo::log_jacobian(need(map).f, lpgeo::Density(need(mu).f), tolerances(tol)));
  });
}

lpgeo_status lpgeo_bott_thurston(const lpgeo_fn* map1, const lpgeo_fn* map2, const lpgeo_fn* mu, const lpgeo_tol* tol,
                                 double* out) {
  return guard([&] {
    const std::array<lpgeo::SampledFunction, 2> maps{need(map1).f, need(map2).f};
    need_out(out) = lpgeo::bott_thurston_c(maps, lpgeo::Density(need(mu).f), tolerances(tol));
  });
}

lpgeo_status lpgeo_gelfand_fuchs(const lpgeo_fn* a1, const lpgeo_fn* a2, const lpgeo_fn* mu, const lpgeo_tol* tol,
                                 double* out) {
  return guard([&] {
    const std::array<lpgeo::SampledFunction, 2> args{need(a1).f, need(a2).f};
    need_out(out) = lpgeo::gelfand_fuchs_omega(args, lpgeo::Density(need(mu).f), tolerances(tol));
  });
}

lpgeo_status lpgeo_mixed_derivative_check(const lpgeo_fn* a1, const lpgeo_fn* a2, const lpgeo_fn* mu,
                                          const lpgeo_tol* tol, double* out) {
  return guard([&] {
    const auto& t = tolerances(tol);
    need_out(out) = lpgeo::mixed_derivative_check(need(a1).f, need(a2).f, lpgeo::ProbabilityDensity(need(mu).f, t), t);
  });
}

lpgeo_status lpgeo_omega_lp_sphere(const lpgeo_fn* f, const lpgeo_fn* b1, const lpgeo_fn* b2, double p, double* out) {
  return guard([&] {
    const std::array<lpgeo::SampledFunction, 2> fields{need(b1).f, need(b2).f};
    need_out(out) = lpgeo::omega_lp_sphere(need(f).f, fields, p);
  });
}

lpgeo_status lpgeo_virasoro_bracket(const lpgeo_fn* f, double cf, const lpgeo_fn* g, double cg,
                                    lpgeo_fn** vector_part, double* central) {
  return guard([&] {
    auto r = lpgeo::virasoro_bracket({need(f).f, cf}, {need(g).f, cg});
    need_out(central) = r.central;
    need_out(vector_part) = wrap(std::move(r.vector_part));
  });
}

lpgeo_status lpgeo_group_cocycle_residual(const lpgeo_fn* map1, const lpgeo_fn* map2, const lpgeo_fn* map3,
                                          const lpgeo_fn* mu, const lpgeo_tol* tol, double* out) {
  return guard([&] {
    need_out(out) = lpgeo::group_cocycle_residual(need(map1).f, need(map2).f, need(map3).f, lpgeo::Density(need(mu).f),
                                                  tolerances(tol));
  });
}

lpgeo_status lpgeo_form_new(size_t n, const double* coeffs, size_t count, lpgeo_form** out) {
  return guard([&] {
    const auto g = t4(n, count, 6);
    lpgeo::require(coeffs != nullptr, ErrorCode::invalid_argument, "null coefficients");
    std::array<lpgeo::T4Field, 6> c;
    for (size_t k = 0; k < 6; ++k) c[k].assign(coeffs + k * g.size(), coeffs + (k + 1) * g.size());
    need_out(out) = new lpgeo_form{lpgeo::Form2OnT4(g, std::move(c))};
  });
}

lpgeo_status lpgeo_form_exact(size_t n, const double* sigma, size_t count, lpgeo_form** out) {
  return guard([&] {
    const auto g = t4(n, count, 4);
    lpgeo::require(sigma != nullptr, ErrorCode::invalid_argument, "null coefficients");
    lpgeo::Form1OnT4 s{g, {}};
    for (size_t k = 0; k < 4; ++k) s.a[k].assign(sigma + k * g.size(), sigma + (k + 1) * g.size());
    need_out(out) = new lpgeo_form{lpgeo::exterior_derivative(s)};
  });
}

lpgeo_status lpgeo_form_add(const lpgeo_form* a, const lpgeo_form* b, lpgeo_form** out) {
  return guard([&] { need_out(out) = new lpgeo_form{need(a).f + need(b).f}; });
}

void lpgeo_form_free(lpgeo_form* form) { delete form; }

size_t lpgeo_form_n(const lpgeo_form* form) { return form ? form->f.grid().n() : 0; }

lpgeo_status lpgeo_form_coefficients(const lpgeo_form* form, double* out, size_t count) {
  return guard([&] {
    const auto& f = need(form).f;
    const size_t m = f.grid().size();
    lpgeo::require(out && count == 6 * m, ErrorCode::invalid_argument, "output buffer must hold 6 n^4 values");
    for (size_t k = 0; k < 6; ++k) std::copy(f.c(k).begin(), f.c(k).end(), out + k * m);
  });
}

lpgeo_status lpgeo_form_closedness(const lpgeo_form* form, double* out) {
  return guard([&] { need_out(out) = need(form).f.closedness_residual(); });
}

lpgeo_status lpgeo_symplectic_norm(const lpgeo_form* omega0, const lpgeo_form* beta, double p, const lpgeo_tol* tol,
                                   double* out) {
  return guard([&] { need_out(out) = lpgeo::lp_symplectic_norm(need(omega0).f, need(beta).f, p, tolerances(tol)); });
}

lpgeo_status lpgeo_symplectic_inner(const lpgeo_form* omega0, const lpgeo_form* alpha, const lpgeo_form* beta,
                                    const lpgeo_tol* tol, double* out) {
  return guard([&] {
    need_out(out) = lpgeo::l2_symplectic_inner(need(omega0).f, need(alpha).f, need(beta).f, tolerances(tol));
  });
}

lpgeo_status lpgeo_pushforward_check(const lpgeo_form* omega0, const lpgeo_form* beta, double p, const lpgeo_tol* tol,
                                     double* lhs, double* rhs) {
  return guard([&] {
    const auto r = lpgeo::projection_pushforward_check(need(omega0).f, need(beta).f, p, tolerances(tol));
    need_out(lhs) = r.lhs;
    need_out(rhs) = r.rhs;
  });
}

lpgeo_status lpgeo_harmonic_part(const lpgeo_form* omega, const lpgeo_tol* tol, lpgeo_form** out) {
  return guard([&] { need_out(out) = new lpgeo_form{lpgeo::harmonic_part(need(omega).f, tolerances(tol))}; });
}

lpgeo_status lpgeo_young_from_label(const char* label, lpgeo_young** out) {
  return guard([&] {
    if (!label) lpgeo::fail(ErrorCode::config_error, "null Young function label");
    need_out(out) = new lpgeo_young{lpgeo::YoungFunction::from_label(label)};
  });
}

void lpgeo_young_free(lpgeo_young* young) { delete young; }

const char* lpgeo_young_label(const lpgeo_young* young) { return young ? young->y.label().c_str() : ""; }

lpgeo_status lpgeo_luxemburg_norm(const lpgeo_fn* f, const lpgeo_fn* mu, const lpgeo_young* young,
                                  const lpgeo_tol* tol, double* out) {
  return guard([&] {
    need_out(out) = lpgeo::luxemburg_norm(need(f).f, lpgeo::Density(need(mu).f), need(young).y, tolerances(tol));
  });
}

lpgeo_status lpgeo_luxemburg_first_variation(const lpgeo_fn* f, const lpgeo_fn* h, const lpgeo_fn* mu,
                                             const lpgeo_young* young, const lpgeo_tol* tol, double* out) {
  return guard([&] {
    need_out(out) = lpgeo::luxemburg_first_variation(need(f).f, need(h).f, lpgeo::Density(need(mu).f), need(young).y,
                                                     tolerances(tol));
  });
}

lpgeo_status lpgeo_orlicz_invariance(const lpgeo_fn* a, const lpgeo_fn* mu, const lpgeo_young* young,
                                     const lpgeo_fn* map, const lpgeo_tol* tol, double* before, double* after) {
  return guard([&] {
    const auto r = lpgeo::orlicz_finsler_invariance(need(a).f, lpgeo::Density(need(mu).f), need(young).y, need(map).f,
                                                    tolerances(tol));
    need_out(before) = r.before;
    need_out(after) = r.after;
  });
}

lpgeo_status lpgeo_phi_embedding(const lpgeo_fn* rho, const lpgeo_young* young, lpgeo_fn** out) {
  return guard([&] { need_out(out) = wrap(lpgeo::phi_embedding(lpgeo::ProbabilityDensity(need(rho).f), need(young).y)); });
}

lpgeo_status lpgeo_orlicz_geodesic_residual(const lpgeo_fn* const* jacobians, size_t count, double dt,
                                            const lpgeo_young* young, const lpgeo_tol* tol, double* sup) {
  return guard([&] {
    need_out(sup) =
        lpgeo::orlicz_geodesic_residual(jacobian_path(jacobians, count, dt), need(young).y, tolerances(tol)).sup();
  });
}

lpgeo_status lpgeo_lp_reduction_residual(const lpgeo_fn* const* jacobians, size_t count, double dt, double p,
                                         const lpgeo_tol* tol, double* sup) {
  return guard([&] {
    need_out(sup) = lpgeo::lp_reduction_residual(jacobian_path(jacobians, count, dt), p, tolerances(tol)).sup();
  });
}

lpgeo_status lpgeo_fisher_matrix(const lpgeo_fn* generator, int allow_asymmetric, double t, double sigma,
                                 const lpgeo_tol* tol, double out[4]) {
  return guard([&] {
    lpgeo::require(out != nullptr, ErrorCode::invalid_argument, "null output argument");
    const lpgeo::LocationScaleFamily fam(need(generator).f, allow_asymmetric != 0, tolerances(tol));
    const auto m = lpgeo::fisher_matrix(fam, t, sigma, tolerances(tol));
    out[0] = m[0][0];
    out[1] = m[0][1];
    out[2] = m[1][0];
    out[3] = m[1][1];
  });
}

lpgeo_status lpgeo_hyperbolic_check(const lpgeo_fn* generator, int allow_asymmetric, const double* ts, size_t nt,
                                    const double* sigmas, size_t ns, const lpgeo_tol* tol, lpgeo_hyperbolic* out) {
  return guard([&] {
    lpgeo::require(ts && sigmas, ErrorCode::invalid_argument, "null parameter arrays");
    const lpgeo::LocationScaleFamily fam(need(generator).f, allow_asymmetric != 0, tolerances(tol));
    const auto r = lpgeo::hyperbolic_check(fam, std::vector<double>(ts, ts + nt),
                                           std::vector<double>(sigmas, sigmas + ns), tolerances(tol));
    need_out(out) = {r.c_tt, r.c_ss, r.max_spread, r.max_offdiag, r.positive_definite ? 1 : 0, r.hyperbolic ? 1 : 0};
  });
}

lpgeo_status lpgeo_verify(int criterion, double tol_scale, lpgeo_report** out) {
  return guard([&] {
    auto& o = need_out(out);
    auto* rep = new lpgeo_report{};
    if (criterion == 0)
      rep->r = lpgeo::verify_suite(tol_scale);
    else
      rep->r.push_back(lpgeo::verify_criterion(criterion, tol_scale));
    o = rep;
  });
}

void lpgeo_report_free(lpgeo_report* report) { delete report; }

size_t lpgeo_report_criteria(const lpgeo_report* report) { return report ? report->r.size() : 0; }

lpgeo_status lpgeo_report_criterion(const lpgeo_report* report, size_t i, int* id, const char** title, int* passed,
                                    const char** error, size_t* checks) {
  return guard([&] {
    const auto& r = need(report).r;
    lpgeo::require(i < r.size(), ErrorCode::invalid_argument, "criterion index out of range");
    const auto& c = r[i];
    if (id) *id = c.id;
    if (title) *title = c.title.c_str();
    if (passed) *passed = c.passed() ? 1 : 0;
    if (error) *error = c.error.c_str();
    if (checks) *checks = c.checks.size();
  });
}

lpgeo_status lpgeo_report_check(const lpgeo_report* report, size_t i, size_t j, const char** name, double* measured,
                                double* lo, double* hi, int* passed) {
  return guard([&] {
    const auto& r = need(report).r;
    lpgeo::require(i < r.size() && j < r[i].checks.size(), ErrorCode::invalid_argument, "check index out of range");
    const auto& c = r[i].checks[j];
    if (name) *name = c.name.c_str();
    if (measured) *measured = c.measured;
    if (lo) *lo = c.lo;
    if (hi) *hi = c.hi;
    if (passed) *passed = c.passed ? 1 : 0;
  });
}

}  // extern "C"
