#include "lpgeo/diff_line.hpp"

#include <cmath>

namespace lpgeo {

namespace {

void require_line(const Grid& g) {
  require(!g.is_circle(), ErrorCode::invalid_argument, "line diffeomorphisms live on line grids");
}

void validate_derivative(const SampledFunction& fprime, const Tolerances& tol) {
  require_line(fprime.grid());
  require(fprime.min() > -1.0, ErrorCode::invalid_argument, "diffeomorphism needs f' > -1");
  require_decay(fprime, tol, "f'");
}

}  // namespace

LineDiffeo LineDiffeo::from_derivative(SampledFunction fprime, const Tolerances& tol) {
  validate_derivative(fprime, tol);
  auto f = cumulative_integral(fprime, tol);
  return LineDiffeo(std::move(f), std::move(fprime));
}

LineDiffeo LineDiffeo::from_displacement(const SampledFunction& f, const Tolerances& tol) {
  require_line(f.grid());
  auto fprime = lpgeo::displacement_derivative(f, 1, tol);
  validate_derivative(fprime, tol);
  return LineDiffeo(f, std::move(fprime));
}

LineDiffeo LineDiffeo::identity(const Grid& grid) {
  require_line(grid);
  return LineDiffeo(SampledFunction::constant(grid, 0.0), SampledFunction::constant(grid, 0.0));
}

SampledFunction LineDiffeo::map() const { return identity_map(grid()) + f_; }
SampledFunction LineDiffeo::jacobian() const { return fprime_ + 1.0; }

SampledFunction LineDiffeo::higher_derivative(int order, const Tolerances& tol) const {
  require(order >= 2 && order <= 5, ErrorCode::invalid_argument, "higher derivative order must be 2..5");
  return derivative(fprime_, order - 1, tol);
}

double LineDiffeo::operator()(double y) const { return y + interpolate(f_, y); }

StrictLineDiffeo::StrictLineDiffeo(const LineDiffeo& phi) : LineDiffeo(phi) {
  require(displacement_derivative().min() > 0.0, ErrorCode::invalid_argument,
          "strict subgroup needs f' > 0");
}

ExtendedLineDiffeo::ExtendedLineDiffeo(double a, double b, LineDiffeo core)
    : a_(a), b_(b), core_(std::move(core)) {
  require(a > 0.0 && std::isfinite(a) && std::isfinite(b), ErrorCode::invalid_argument,
          "affine part needs a > 0 and finite b");
}

SampledFunction ExtendedLineDiffeo::map() const { return a_ * core_.map() + b_; }

LineDensity::LineDensity(SampledFunction g, const Tolerances& tol) : g_(std::move(g)) {
  require_line(g_.grid());
  require(g_.min() > 0.0, ErrorCode::invalid_argument, "line density must be positive");
  require_decay(g_, tol, "line density");
}

LineDiffeo compose(const LineDiffeo& phi, const LineDiffeo& psi, const Tolerances& tol) {
  phi.displacement().require_same_grid(psi.displacement());
  const auto inner = psi.map();
  const auto& outer = phi.displacement_derivative();
  std::vector<double> d(inner.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    // (1 + a)(1 + b) - 1, kept in this form so tails stay exact.
    const double a = interpolate(outer, inner[i]);
    const double b = psi.displacement_derivative()[i];
    d[i] = a + b + a * b;
  }
  return LineDiffeo::from_derivative(SampledFunction(phi.grid(), std::move(d)), tol);
}

SampledFunction phi_p(const LineDiffeo& phi, PExponent p) {
  const auto& d = phi.displacement_derivative();
  if (p.is_infinite()) return d.map([](double v) { return std::log1p(v); });
  const double q = p.value();
  if (q == 1.0) return d;
  return d.map([q](double v) { return q * std::expm1(std::log1p(v) / q); });
}

LineDiffeo phi_p_inverse(const SampledFunction& g, PExponent p, const Tolerances& tol) {
  require_line(g.grid());
  if (p.is_infinite()) return LineDiffeo::from_derivative(g.map([](double v) { return std::expm1(v); }), tol);
  const double q = p.value();
  require(g.min() > -q, ErrorCode::not_in_image, "phi_p image needs g > -p");
  return LineDiffeo::from_derivative(g.map([q](double v) { return std::expm1(q * std::log1p(v / q)); }), tol);
}

SampledFunction phi_p_differential(const LineDiffeo& phi, const SampledFunction& h, double p,
                                   const Tolerances& tol) {
  const auto hx = displacement_derivative(h, 1, tol);
  return hx.zip(phi.jacobian(), [p](double a, double j) { return a * std::pow(j, 1.0 / p - 1.0); });
}

double w1p_energy(const LineDiffeo& phi, const SampledFunction& h, double p, const Tolerances& tol) {
  (void)PExponent::finite(p);
  const auto hx = displacement_derivative(h, 1, tol);
  const auto integrand = hx.zip(phi.jacobian(), [p](double a, double j) {
    return std::pow(j, 1.0 - p) * std::pow(std::abs(a), p);
  });
  return std::pow(integrate(integrand), 1.0 / p);
}

LineDensity gamma(const StrictLineDiffeo& phi, const Tolerances& tol) {
  return LineDensity(phi.displacement_derivative(), tol);
}

StrictLineDiffeo gamma_inverse(const LineDensity& mu, const Tolerances& tol) {
  return StrictLineDiffeo(LineDiffeo::from_derivative(mu.g(), tol));
}

double line_fp_norm(const SampledFunction& g, const SampledFunction& a, PExponent p) {
  g.require_same_grid(a);
  require(g.min() > -1.0, ErrorCode::invalid_argument, "shifted density needs g > -1");
  const auto ratio = a.zip(g, [](double x, double m) { return x / (1.0 + m); });
  if (p.is_infinite()) return ratio.max_abs();
  const double q = p.value();
  const auto integrand = ratio.zip(g, [q](double r, double m) { return std::pow(std::abs(r), q) * (1.0 + m); });
  return std::pow(integrate(integrand), 1.0 / q);
}

SampledFunction psi_p(const SampledFunction& g, PExponent p) {
  require(g.min() > -1.0, ErrorCode::invalid_argument, "shifted density needs g > -1");
  if (p.is_infinite()) return g.map([](double v) { return std::log1p(v); });
  const double q = p.value();
  return g.map([q](double v) { return q * std::expm1(std::log1p(v) / q); });
}

SampledFunction psi_p_inverse(const SampledFunction& f, PExponent p) {
  if (p.is_infinite()) return f.map([](double v) { return std::expm1(v); });
  const double q = p.value();
  require(f.min() > -q, ErrorCode::not_in_image, "psi_p image needs f > -p");
  return f.map([q](double v) { return std::expm1(q * std::log1p(v / q)); });
}

SampledFunction extended_phi_infty(const ExtendedLineDiffeo& phi) {
  const double la = std::log(phi.scale());
  return phi.core().displacement_derivative().map([la](double v) { return la + std::log1p(v); });
}

}  // namespace lpgeo
