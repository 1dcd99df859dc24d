#include "lpgeo/schwarzian.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

namespace lpgeo {

namespace {

std::size_t band(const Grid& g, const Tolerances& tol) {
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(tol.decay_fraction * static_cast<double>(g.size()))));
}

double interior_sup(const SampledFunction& r, const Tolerances& tol) {
  const std::size_t k = band(r.grid(), tol);
  double m = 0.0;
  for (std::size_t i = k; i + k < r.size(); ++i) m = std::max(m, std::abs(r[i]));
  return m;
}

SampledFunction log_jacobian(const LineDiffeo& phi) {
  return phi.displacement_derivative().map([](double v) { return std::log1p(v); });
}

// Mixed derivative d^2 F/dydz at (x, x), fourth order in the step.
template <class F>
double mixed_on_diagonal(F&& value, double x, double step) {
  static constexpr std::array<double, 5> c{1.0 / 12, -8.0 / 12, 0.0, 8.0 / 12, -1.0 / 12};
  double acc = 0.0;
  for (int a = 0; a < 5; ++a) {
    if (c[a] == 0.0) continue;
    for (int b = 0; b < 5; ++b) {
      if (c[b] == 0.0) continue;
      acc += c[a] * c[b] * value(x + (a - 2) * step, x + (b - 2) * step);
    }
  }
  return acc / (step * step);
}

template <class F>
SampledFunction six_mixed(const LineDiffeo& phi, F&& value, const Tolerances& tol) {
  const Grid& g = phi.grid();
  const std::size_t k = band(g, tol);
  std::vector<double> out(g.size(), 0.0);
  for (std::size_t i = k; i + k < g.size(); ++i)
    out[i] = 6.0 * mixed_on_diagonal(value, g.node(i), tol.potential_step);
  return SampledFunction(g, std::move(out));
}

}  // namespace

double schwarz_potential(const LineDiffeo& phi, double y, double z, const Tolerances& tol) {
  if (std::abs(y - z) < tol.potential_diagonal)
    return std::log1p(interpolate(phi.displacement_derivative(), 0.5 * (y + z)));
  const auto& f = phi.displacement();
  return std::log1p((interpolate(f, y) - interpolate(f, z)) / (y - z));
}

double schwarz_potential(const ExtendedLineDiffeo& phi, double y, double z, const Tolerances& tol) {
  return std::log(phi.scale()) + schwarz_potential(phi.core(), y, z, tol);
}

double lp_schwarz_potential(const LineDiffeo& phi, double p, double y, double z, const Tolerances& tol) {
  (void)PExponent::finite(p);
  return p * std::expm1(schwarz_potential(phi, y, z, tol) / p);
}

SampledFunction schwarzian_from_log_jacobian(const SampledFunction& u, const Tolerances& tol) {
  const auto u1 = derivative(u, 1, tol);
  const auto u2 = derivative(u, 2, tol);
  return u2.zip(u1, [](double a, double b) { return a - 0.5 * b * b; });
}

SampledFunction schwarzian(const LineDiffeo& phi, const Tolerances& tol) {
  return schwarzian_from_log_jacobian(log_jacobian(phi), tol);
}

SampledFunction schwarzian(const ExtendedLineDiffeo& phi, const Tolerances& tol) {
  const double la = std::log(phi.scale());
  return schwarzian_from_log_jacobian(extended_phi_infty(phi) + (-la), tol);
}

SampledFunction schwarzian_via_potential(const LineDiffeo& phi, const Tolerances& tol) {
  return six_mixed(phi, [&](double y, double z) { return schwarz_potential(phi, y, z, tol); }, tol);
}

SampledFunction lp_schwarzian(const LineDiffeo& phi, double p, const Tolerances& tol) {
  (void)PExponent::finite(p);
  const auto u = log_jacobian(phi);
  const auto u1 = derivative(u, 1, tol);
  const auto s = schwarzian_from_log_jacobian(u, tol);
  std::vector<double> out(u.size());
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = (1.5 / p * u1[i] * u1[i] + s[i]) * std::exp(u[i] / p);
  return SampledFunction(u.grid(), std::move(out));
}

SampledFunction lp_schwarzian_via_potential(const LineDiffeo& phi, double p, const Tolerances& tol) {
  (void)PExponent::finite(p);
  return six_mixed(phi, [&](double y, double z) { return lp_schwarz_potential(phi, p, y, z, tol); }, tol);
}

double schwarzian_chain_residual(const LineDiffeo& phi, const LineDiffeo& psi, const Tolerances& tol) {
  const auto lhs = schwarzian(compose(phi, psi, tol), tol);
  const auto s_phi = compose(schwarzian(phi, tol), psi.map(), tol);
  const auto dpsi = psi.jacobian();
  const auto rhs = s_phi * dpsi * dpsi + schwarzian(psi, tol);
  return interior_sup(lhs - rhs, tol);
}

double lp_schwarzian_chain_residual(const LineDiffeo& phi, const LineDiffeo& psi, double p,
                                    const Tolerances& tol) {
  const auto both = compose(phi, psi, tol);
  const auto lhs = lp_schwarzian(both, p, tol);
  const auto inner = psi.map();
  const auto sp_phi = compose(lp_schwarzian(phi, p, tol), inner, tol);
  const auto d1_phi = compose(phi.jacobian(), inner, tol);
  const auto d2_phi = compose(phi.higher_derivative(2, tol), inner, tol);
  const auto sp_psi = lp_schwarzian(psi, p, tol);
  const auto d1_psi = psi.jacobian();
  const auto d2_psi = psi.higher_derivative(2, tol);
  const auto d1_both = both.jacobian();
  std::vector<double> r(lhs.size());
  for (std::size_t i = 0; i < r.size(); ++i) {
    const double rhs = sp_phi[i] * std::pow(d1_psi[i], 2.0 + 1.0 / p) +
                       sp_psi[i] * std::pow(d1_phi[i], 1.0 / p) +
                       3.0 / p * (d2_phi[i] / d1_phi[i]) * d2_psi[i] * std::pow(d1_both[i], 1.0 / p);
    r[i] = lhs[i] - rhs;
  }
  return interior_sup(SampledFunction(lhs.grid(), std::move(r)), tol);
}

BersImage bers_map(const LineDiffeo& phi, const Tolerances& tol) {
  auto s = schwarzian(phi, tol);
  const double total = integrate(s);
  if (total > tol.bers_image)
    fail(ErrorCode::image_violation, "integral of the Schwarzian is positive: " + std::to_string(total));
  return {std::move(s), total};
}

LineDiffeo schwarzian_preimage(const SampledFunction& u, const Tolerances& tol) {
  return phi_p_inverse(schwarzian_from_log_jacobian(u, tol), PExponent::infinity(), tol);
}

double bers_kernel_probe(const LineDiffeo& phi, double c0, double c1, const Tolerances& tol) {
  const Grid& g = phi.grid();
  const double L = g.half_width();
  const auto u = log_jacobian(phi);
  // Integral of e^u from the left edge, which does not decay, so it is
  // accumulated with the trapezoid rule directly.
  std::vector<double> prim(g.size(), 0.0);
  for (std::size_t i = 1; i < prim.size(); ++i)
    prim[i] = prim[i - 1] + 0.5 * g.spacing() * (std::exp(u[i - 1]) + std::exp(u[i]));
  const double w = 40.0 / L;
  std::vector<double> d(g.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    const double x = g.node(i);
    const double chi = 0.25 * (1.0 + std::tanh(w * (x + 0.5 * L))) * (1.0 - std::tanh(w * (x - 0.5 * L)));
    d[i] = chi * (c0 * prim[i] + c1);
  }
  const SampledFunction du(g, std::move(d));
  const auto u1 = derivative(u, 1, tol);
  const auto direction = derivative(du, 2, tol) - u1 * derivative(du, 1, tol);
  return direction.max_abs();
}

DynamicsReport dynamics_tangent_check(const LineDiffeo& phi, int n, int m, Region region,
                                      const Tolerances& tol) {
  require(n >= 1 && n <= 8 && m >= 1 && m <= 8, ErrorCode::invalid_argument,
          "iteration counts must lie in 1..8");
  require(region.lo < region.hi, ErrorCode::invalid_argument, "empty region");
  const Grid& g = phi.grid();

  const auto s = schwarzian(phi, tol);
  double s_min = 0.0;
  double s_max = 0.0;
  bool first = true;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double x = g.node(i);
    if (x < region.lo || x > region.hi) continue;
    s_min = first ? s[i] : std::min(s_min, s[i]);
    s_max = first ? s[i] : std::max(s_max, s[i]);
    first = false;
  }
  require(!first, ErrorCode::invalid_argument, "region contains no grid nodes");
  if (s_min < -tol.sign && s_max > tol.sign)
    fail(ErrorCode::mixed_sign, "Schwarzian changes sign on the region");
  const int sign = s_max > tol.sign ? 1 : (s_min < -tol.sign ? -1 : 0);

  LineDiffeo power = phi;
  for (int k = 1; k < m; ++k) power = compose(phi, power, tol);
  const auto xi = schwarzian_preimage(log_jacobian(power), tol);
  LineDiffeo iterate = xi;
  for (int k = 1; k < n; ++k) iterate = compose(xi, iterate, tol);

  const auto tangent = iterate.jacobian();
  double lo = 0.0;
  double hi = 0.0;
  first = true;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double x = g.node(i);
    if (x < region.lo || x > region.hi) continue;
    lo = first ? tangent[i] : std::min(lo, tangent[i]);
    hi = first ? tangent[i] : std::max(hi, tangent[i]);
    first = false;
  }
  return {lo, hi, sign, s_min, s_max};
}

}  // namespace lpgeo
