#include "lpgeo/cocycles.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "spectral.hpp"

namespace lpgeo {

TorusFunction::TorusFunction(std::size_t n1, std::size_t n2, std::vector<double> values)
    : n1_(n1), n2_(n2), v_(std::move(values)) {
  require(n1 >= 8 && n2 >= 8, ErrorCode::invalid_argument, "torus grids need at least 8 nodes per axis");
  require(v_.size() == n1 * n2, ErrorCode::invalid_argument, "value count does not match the torus grid");
  for (double x : v_) require(std::isfinite(x), ErrorCode::invalid_argument, "non-finite torus sample");
}

TorusFunction TorusFunction::partial(std::size_t axis, int order) const {
  require(axis < 2, ErrorCode::invalid_argument, "torus axis must be 0 or 1");
  const std::array<std::size_t, 2> ext{n1_, n2_};
  return TorusFunction(n1_, n2_, detail::spectral_partial(v_, ext, axis, order, 1.0));
}

double TorusFunction::integral() const {
  double s = 0.0;
  for (double x : v_) s += x;
  return s / static_cast<double>(v_.size());
}

double TorusFunction::min() const { return *std::min_element(v_.begin(), v_.end()); }

void TorusFunction::require_same_grid(const TorusFunction& other) const {
  require(n1_ == other.n1_ && n2_ == other.n2_, ErrorCode::grid_mismatch, "torus grids differ");
}

TorusDiffeo TorusDiffeo::identity(std::size_t n1, std::size_t n2) {
  return {identity_map(Grid::circle(n1)), identity_map(Grid::circle(n2))};
}

SampledFunction group_product(const SampledFunction& phi, const SampledFunction& psi, const Tolerances& tol) {
  return compose_maps(psi, phi, tol);
}

TorusDiffeo group_product(const TorusDiffeo& phi, const TorusDiffeo& psi, const Tolerances& tol) {
  return {compose_maps(psi.fx, phi.fx, tol), compose_maps(psi.fy, phi.fy, tol)};
}

SampledFunction log_jacobian(const SampledFunction& phi, const Density& mu, const Tolerances&) {
  require(phi.grid().is_circle(), ErrorCode::invalid_argument, "log_jacobian expects a circle map");
  phi.require_same_grid(mu.rho());
  require_monotone(phi);
  const auto pulled = pullback(mu.rho(), phi);
  return pulled.zip(mu.rho(), [](double a, double r) { return std::log(a / r); });
}

namespace {

void require_torus_map(const TorusDiffeo& phi, const TorusFunction& rho) {
  require(phi.fx.grid() == Grid::circle(rho.n1()) && phi.fy.grid() == Grid::circle(rho.n2()),
          ErrorCode::grid_mismatch, "torus map does not match the density grid");
  require_monotone(phi.fx);
  require_monotone(phi.fy);
}

// rho(fx(x_i), fy(y_j)), interpolated one axis at a time.
TorusFunction compose_torus(const TorusFunction& rho, const TorusDiffeo& phi, const Tolerances& tol) {
  const std::size_t n1 = rho.n1();
  const std::size_t n2 = rho.n2();
  const Grid gx = Grid::circle(n1);
  const Grid gy = Grid::circle(n2);
  std::vector<double> mid(n1 * n2);
  for (std::size_t j = 0; j < n2; ++j) {
    std::vector<double> col(n1);
    for (std::size_t i = 0; i < n1; ++i) col[i] = rho.at(i, j);
    const auto c = compose(SampledFunction(gx, std::move(col)), phi.fx, tol);
    for (std::size_t i = 0; i < n1; ++i) mid[i * n2 + j] = c[i];
  }
  std::vector<double> out(n1 * n2);
  for (std::size_t i = 0; i < n1; ++i) {
    std::vector<double> row(mid.begin() + static_cast<std::ptrdiff_t>(i * n2),
                            mid.begin() + static_cast<std::ptrdiff_t>((i + 1) * n2));
    const auto r = compose(SampledFunction(gy, std::move(row)), phi.fy, tol);
    for (std::size_t j = 0; j < n2; ++j) out[i * n2 + j] = r[j];
  }
  return TorusFunction(n1, n2, std::move(out));
}

double wedge1(const SampledFunction& g1, const SampledFunction& g2, const Tolerances& tol) {
  g1.require_same_grid(g2);
  return integrate(g1 * derivative(g2, 1, tol));
}

double wedge2(const TorusFunction& g1, const TorusFunction& g2, const TorusFunction& g3) {
  g1.require_same_grid(g2);
  g1.require_same_grid(g3);
  const auto a = g2.partial(0);
  const auto b = g2.partial(1);
  const auto c = g3.partial(0);
  const auto d = g3.partial(1);
  double s = 0.0;
  for (std::size_t k = 0; k < g1.values().size(); ++k)
    s += g1.values()[k] * (a.values()[k] * d.values()[k] - b.values()[k] * c.values()[k]);
  return s / static_cast<double>(g1.values().size());
}

TorusFunction quotient(const TorusFunction& a, const TorusFunction& b, double scale = 1.0) {
  a.require_same_grid(b);
  std::vector<double> v(a.values().size());
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = scale * a.values()[k] / b.values()[k];
  return TorusFunction(a.n1(), a.n2(), std::move(v));
}

}  // namespace

TorusFunction log_jacobian(const TorusDiffeo& phi, const TorusFunction& rho, const Tolerances& tol) {
  require(rho.min() > 0.0, ErrorCode::invalid_argument, "torus density must be positive");
  require_torus_map(phi, rho);
  const auto dx = map_derivative(phi.fx);
  const auto dy = map_derivative(phi.fy);
  const auto pulled = compose_torus(rho, phi, tol);
  std::vector<double> v(rho.values().size());
  for (std::size_t i = 0; i < rho.n1(); ++i)
    for (std::size_t j = 0; j < rho.n2(); ++j) {
      const std::size_t k = i * rho.n2() + j;
      v[k] = std::log(dx[i] * dy[j] * pulled.values()[k] / rho.values()[k]);
    }
  return TorusFunction(rho.n1(), rho.n2(), std::move(v));
}

double bott_thurston_c(std::span<const SampledFunction> phis, const Density& mu, const Tolerances& tol) {
  require(phis.size() == 2, ErrorCode::invalid_argument, "the circle cocycle takes two maps");
  const auto l1 = log_jacobian(phis[0], mu, tol);
  const auto l2 = log_jacobian(group_product(phis[0], phis[1], tol), mu, tol);
  return wedge1(l1, l2, tol);
}

double bott_thurston_c(std::span<const TorusDiffeo> phis, const TorusFunction& rho, const Tolerances& tol) {
  require(phis.size() == 3, ErrorCode::invalid_argument, "the torus cocycle takes three maps");
  const TorusDiffeo p2 = group_product(phis[0], phis[1], tol);
  const TorusDiffeo p3 = group_product(p2, phis[2], tol);
  return wedge2(log_jacobian(phis[0], rho, tol), log_jacobian(p2, rho, tol), log_jacobian(p3, rho, tol));
}

double gelfand_fuchs_omega(std::span<const SampledFunction> tangents, const Density& mu, const Tolerances& tol) {
  require(tangents.size() == 2, ErrorCode::invalid_argument, "the circle form takes two tangents");
  for (const auto& a : tangents) {
    a.require_same_grid(mu.rho());
    require_zero_mass(a, tol);
  }
  return wedge1(tangents[0] / mu.rho(), tangents[1] / mu.rho(), tol);
}

double gelfand_fuchs_omega(std::span<const TorusFunction> tangents, const TorusFunction& rho,
                           const Tolerances& tol) {
  require(tangents.size() == 3, ErrorCode::invalid_argument, "the torus form takes three tangents");
  for (const auto& a : tangents) {
    a.require_same_grid(rho);
    require(std::abs(a.integral()) <= tol.mass, ErrorCode::invalid_argument, "tangent must have zero mass");
  }
  return wedge2(quotient(tangents[0], rho), quotient(tangents[1], rho), quotient(tangents[2], rho));
}

namespace {

double mixed_quotient(const SampledFunction& a1, const SampledFunction& a2, const ProbabilityDensity& mu,
                      double h, const Tolerances& tol) {
  const auto family = [&](const SampledFunction& a, double t) {
    return moser_map_1d(ProbabilityDensity(mu.rho() + t * a, tol), mu, tol);
  };
  const std::array<SampledFunction, 2> p1{family(a1, h), family(a1, -h)};
  const std::array<SampledFunction, 2> p2{family(a2, h), family(a2, -h)};
  const auto c = [&](int i, int j) {
    const std::array<SampledFunction, 2> pair{p1[i], p2[j]};
    return bott_thurston_c(pair, mu, tol);
  };
  return (c(0, 0) - c(0, 1) - c(1, 0) + c(1, 1)) / (4.0 * h * h);
}

}  // namespace

double mixed_derivative_check(const SampledFunction& a1, const SampledFunction& a2, const ProbabilityDensity& mu,
                              const Tolerances& tol) {
  const std::array<SampledFunction, 2> tangents{a1, a2};
  const double omega = gelfand_fuchs_omega(tangents, mu, tol);
  const double h = tol.cocycle_step;
  const double coarse = mixed_quotient(a1, a2, mu, h, tol);
  const double fine = mixed_quotient(a1, a2, mu, 0.5 * h, tol);
  if (std::abs(coarse - fine) > 0.1 * std::max(std::abs(coarse), std::abs(fine)) + 1e-9)
    fail(ErrorCode::step_too_small, "difference quotient is not stable under step halving");
  return std::abs(coarse - omega);
}

double omega_lp_sphere(const SampledFunction& f, std::span<const SampledFunction> fields, double p) {
  (void)PExponent::finite(p);
  require(fields.size() == 2, ErrorCode::invalid_argument, "the circle form takes two fields");
  require(f.min() > 0.0, ErrorCode::invalid_argument, "sphere point must be positive");
  return p * p * wedge1(fields[0] / f, fields[1] / f, {});
}

double omega_lp_sphere(const TorusFunction& f, std::span<const TorusFunction> fields, double p) {
  (void)PExponent::finite(p);
  require(fields.size() == 3, ErrorCode::invalid_argument, "the torus form takes three fields");
  require(f.min() > 0.0, ErrorCode::invalid_argument, "sphere point must be positive");
  return p * p * p * wedge2(quotient(fields[0], f), quotient(fields[1], f), quotient(fields[2], f));
}

VirasoroElement virasoro_bracket(const VirasoroElement& x, const VirasoroElement& y) {
  const auto& f = x.vector_part;
  const auto& g = y.vector_part;
  f.require_same_grid(g);
  require(f.grid().is_circle(), ErrorCode::invalid_argument, "Virasoro elements live on the circle");
  const auto df = derivative(f, 1);
  const auto dg = derivative(g, 1);
  return {df * g - f * dg, wedge1(df, dg, {})};
}

double group_cocycle_residual(const SampledFunction& phi, const SampledFunction& psi, const SampledFunction& chi,
                              const Density& mu, const Tolerances& tol) {
  const auto c = [&](const SampledFunction& a, const SampledFunction& b) {
    const std::array<SampledFunction, 2> pair{a, b};
    return bott_thurston_c(pair, mu, tol);
  };
  const auto phi_psi = group_product(phi, psi, tol);
  const auto psi_chi = group_product(psi, chi, tol);
  return std::abs(c(psi, chi) - c(phi_psi, chi) + c(phi, psi_chi) - c(phi, psi));
}

}  // namespace lpgeo
