#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "lpgeo/diff_line.hpp"

using namespace lpgeo;
constexpr double kPi = std::numbers::pi;

namespace {

const Grid& line() {
  static const Grid g = Grid::line(10.0, 2001);
  return g;
}

SampledFunction gauss(double c, double m = 0.0, double s = 1.0) {
  return SampledFunction::sample(line(), [=](double x) { return c * std::exp(-(x - m) * (x - m) / (s * s)); });
}

double sup_diff(const SampledFunction& a, const SampledFunction& b) { return (a - b).max_abs(); }

// Ten diffeos with a displacement tangent each, shared by the isometry checks.
struct Case {
  LineDiffeo phi;
  SampledFunction h;
};

std::vector<Case> family() {
  std::vector<Case> out;
  for (int k = 0; k < 10; ++k) {
    const double c = -0.6 + 0.15 * k;
    const double m = -1.0 + 0.2 * k;
    const double s = 0.8 + 0.05 * k;
    auto phi = LineDiffeo::from_derivative(gauss(c, m, s) + gauss(0.2, -m, 0.7));
    // h = integral of a Gaussian derivative mix: decays left, constant right.
    auto h = cumulative_integral(gauss(0.3 + 0.05 * k, 0.5 * m, 1.1) + gauss(-0.2, 1.0, 0.6));
    out.push_back({std::move(phi), std::move(h)});
  }
  return out;
}

}  // namespace

TEST_CASE("line diffeomorphism invariants") {
  CHECK_THROWS_AS(LineDiffeo::from_derivative(gauss(-1.5)), Error);
  CHECK_THROWS_AS(LineDiffeo::from_derivative(SampledFunction::constant(line(), 0.1)), Error);
  const auto phi = LineDiffeo::from_derivative(gauss(0.5));
  CHECK(std::abs(phi.displacement()[0]) < 1e-14);
  CHECK(std::abs(phi.displacement()[2000] - 0.5 * std::sqrt(kPi)) < 1e-12);
  CHECK(phi(0.0) == doctest::Approx(0.25 * std::sqrt(kPi)).epsilon(1e-12));
  CHECK_THROWS_AS(StrictLineDiffeo(LineDiffeo::from_derivative(gauss(-0.2))), Error);
}

TEST_CASE("phi_p anchors") {
  const auto id = LineDiffeo::identity(line());
  for (double p : {1.0, 2.0, 64.0}) CHECK(phi_p(id, PExponent::finite(p)).max_abs() == 0.0);
  CHECK(phi_p(id, PExponent::infinity()).max_abs() == 0.0);
  const auto phi = LineDiffeo::from_derivative(gauss(0.5));
  CHECK(sup_diff(phi_p(phi, PExponent::finite(1)), phi.displacement_derivative()) == 0.0);
  for (double p : {1.0, 1.5, 3.0}) CHECK(phi_p(LineDiffeo::from_derivative(gauss(-0.9)), PExponent::finite(p)).min() > -p);
}

TEST_CASE("phi_p tends to phi_infinity like 1/p") {
  const auto phi = LineDiffeo::from_derivative(gauss(0.5));
  const auto inf = phi_p(phi, PExponent::infinity());
  const double e64 = sup_diff(phi_p(phi, PExponent::finite(64)), inf);
  const double e128 = sup_diff(phi_p(phi, PExponent::finite(128)), inf);
  CHECK(e128 / e64 >= 0.4);
  CHECK(e128 / e64 <= 0.6);
}

TEST_CASE("phi_p inverse") {
  CHECK(phi_p_inverse(SampledFunction::constant(line(), 0.0), PExponent::finite(2)).displacement().max_abs() == 0.0);
  const auto g = gauss(0.3);
  CHECK(sup_diff(phi_p(phi_p_inverse(g, PExponent::finite(2)), PExponent::finite(2)), g) <= 1e-9);
  CHECK(sup_diff(phi_p(phi_p_inverse(g, PExponent::infinity()), PExponent::infinity()), g) <= 1e-12);
  const auto limit = phi_p_inverse(g, PExponent::infinity()).displacement();
  const double e64 = sup_diff(phi_p_inverse(g, PExponent::finite(64)).displacement(), limit);
  const double e128 = sup_diff(phi_p_inverse(g, PExponent::finite(128)).displacement(), limit);
  CHECK(e128 / e64 >= 0.4);
  CHECK(e128 / e64 <= 0.6);
  try {
    (void)phi_p_inverse(gauss(-2.5), PExponent::finite(2));
    FAIL("expected NotInImage");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::not_in_image);
  }
}

TEST_CASE("W^{1,p} energy") {
  const auto phi = LineDiffeo::from_derivative(gauss(0.5));
  CHECK(w1p_energy(phi, SampledFunction::constant(line(), 0.0), 2.0) == 0.0);
  const auto h = cumulative_integral(gauss(0.7, 0.3));
  const auto hx = displacement_derivative(h, 1);
  for (double p : {1.0, 2.0, 3.0}) {
    const double plain = std::pow(integrate(hx.map([p](double v) { return std::pow(std::abs(v), p); })), 1.0 / p);
    CHECK(w1p_energy(LineDiffeo::identity(line()), h, p) == doctest::Approx(plain).epsilon(1e-14));
  }
}

TEST_CASE("W^{1,p} energy is right-invariant") {
  // h o psi is differentiated by fourth-order differences, which need the
  // finer grid to reach 1e-7.
  const auto fine = Grid::line(10.0, 4001);
  auto g = [&](double c, double m, double s) {
    return SampledFunction::sample(fine, [=](double x) { return c * std::exp(-(x - m) * (x - m) / (s * s)); });
  };
  const auto psi = LineDiffeo::from_derivative(g(0.4, 0.0, 1.0));
  for (int k = 0; k < 10; ++k) {
    const double m = -1.0 + 0.2 * k;
    const auto phi = LineDiffeo::from_derivative(g(-0.6 + 0.15 * k, m, 0.8 + 0.05 * k) + g(0.2, -m, 0.7));
    const auto h = cumulative_integral(g(0.3 + 0.05 * k, 0.5 * m, 1.1) + g(-0.2, 1.0, 0.6));
    const Case c{phi, h};
    const auto phi_psi = compose(c.phi, psi);
    const auto h_psi = compose(c.h, psi.map());
    for (double p : {1.5, 2.0, 3.0}) {
      const double before = w1p_energy(c.phi, c.h, p);
      const double after = w1p_energy(phi_psi, h_psi, p);
      CHECK(std::abs(before - after) <= 1e-7 * std::max(1.0, before));
    }
  }
}

TEST_CASE("isometry chain") {
  for (const auto& c : family()) {
    const auto strict_ok = c.phi.displacement_derivative().min() > 0.0;
    for (double p : {1.0, 2.0, 3.0, 64.0}) {
      const double energy = w1p_energy(c.phi, c.h, p);
      const double fisher = line_fp_norm(c.phi.displacement_derivative(), displacement_derivative(c.h, 1), PExponent::finite(p));
      const double flat = std::pow(integrate(phi_p_differential(c.phi, c.h, p).map([p](double v) { return std::pow(std::abs(v), p); })), 1.0 / p);
      CHECK(std::abs(energy - fisher) <= 1e-7 * energy);
      CHECK(std::abs(energy - flat) <= 1e-7 * energy);
      if (strict_ok) {
        const auto mu = gamma(StrictLineDiffeo(c.phi));
        CHECK(line_fp_norm(mu.g(), displacement_derivative(c.h, 1), PExponent::finite(p)) == doctest::Approx(fisher).epsilon(1e-15));
      }
    }
  }
}

TEST_CASE("Gamma") {
  const auto phi = StrictLineDiffeo(LineDiffeo::from_derivative(gauss(0.5)));
  CHECK(sup_diff(gamma(phi).g(), gauss(0.5)) == 0.0);
  const auto back = gamma_inverse(gamma(phi));
  CHECK(sup_diff(back.map(), phi.map()) <= 1e-10);
  CHECK_THROWS_AS(LineDensity(gauss(-0.1)), Error);
}

TEST_CASE("line F_p anchors") {
  const auto zero = SampledFunction::constant(line(), 0.0);
  CHECK(line_fp_norm(gauss(0.5), zero, PExponent::finite(2)) == 0.0);
  CHECK(std::abs(line_fp_norm(zero, gauss(1.0), PExponent::finite(2)) - std::pow(kPi / 2, 0.25)) <= 1e-6);
  CHECK(line_fp_norm(gauss(1.0), gauss(1.0), PExponent::infinity()) == doctest::Approx(0.5));
}

TEST_CASE("line F_p is not diffeomorphism invariant") {
  const auto g = gauss(0.5);
  const auto a = gauss(0.3, 0.5);
  const auto phi = LineDiffeo::from_derivative(gauss(0.8, 0.2, 0.7));
  const auto pulled_g = compose(g, phi.map()) * phi.jacobian();
  const auto pulled_a = compose(a, phi.map()) * phi.jacobian();
  const double before = line_fp_norm(g, a, PExponent::finite(2));
  const double after = line_fp_norm(pulled_g, pulled_a, PExponent::finite(2));
  CHECK(std::abs(after - before) > 0.01 * before);
}

TEST_CASE("Psi_p and the commutative diagram") {
  const auto zero = SampledFunction::constant(line(), 0.0);
  CHECK(psi_p(zero, PExponent::finite(2)).max_abs() == 0.0);
  const auto phi = StrictLineDiffeo(LineDiffeo::from_derivative(gauss(0.5)));
  for (double p : {1.0, 2.0, 3.0}) {
    CHECK(sup_diff(psi_p(gamma(phi).g(), PExponent::finite(p)), phi_p(phi, PExponent::finite(p))) <= 1e-12);
    CHECK(sup_diff(psi_p_inverse(psi_p(gauss(0.7), PExponent::finite(p)), PExponent::finite(p)), gauss(0.7)) <= 1e-12);
  }
  CHECK(sup_diff(psi_p_inverse(psi_p(gauss(0.7), PExponent::infinity()), PExponent::infinity()), gauss(0.7)) <= 1e-10);
  try {
    (void)psi_p_inverse(gauss(-3.0), PExponent::finite(2));
    FAIL("expected NotInImage");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::not_in_image);
  }
}

TEST_CASE("affine extension") {
  const auto id = LineDiffeo::identity(line());
  CHECK(extended_phi_infty(ExtendedLineDiffeo(1.0, 0.0, id)).max_abs() == 0.0);
  CHECK(sup_diff(extended_phi_infty(ExtendedLineDiffeo(std::exp(1.0), 0.0, id)), SampledFunction::constant(line(), 1.0)) <= 1e-15);
  const auto core = LineDiffeo::from_derivative(gauss(0.4));
  const auto a = extended_phi_infty(ExtendedLineDiffeo(2.0, -1.0, core));
  const auto b = extended_phi_infty(ExtendedLineDiffeo(2.0, 3.5, core));
  CHECK(sup_diff(a, b) == 0.0);

  // a id + b + a f = (a id + b) o (id + f)
  const ExtendedLineDiffeo ext(2.0, 0.7, core);
  const auto outer = core.map().map([](double y) { return 2.0 * y + 0.7; });
  CHECK(sup_diff(ext.map(), outer) <= 1e-12);
  CHECK_THROWS_AS(ExtendedLineDiffeo(0.0, 0.0, core), Error);
}

TEST_CASE("strict subgroup is closed under composition") {
  const auto phi = StrictLineDiffeo(LineDiffeo::from_derivative(gauss(0.5)));
  const auto psi = StrictLineDiffeo(LineDiffeo::from_derivative(gauss(0.8, 1.0)));
  const auto both = compose(phi, psi);
  CHECK_NOTHROW(StrictLineDiffeo{both});
  // Chain rule check of the composed derivative against the map samples.
  const auto expected = compose(phi.map(), psi.map());
  double worst = 0.0;
  for (std::size_t i = 0; i < line().size(); ++i)
    if (std::abs(line().node(i)) < 8.0) worst = std::max(worst, std::abs(both.map()[i] - expected[i]));
  CHECK(worst <= 1e-9);
}

TEST_CASE("composition leaving the class is rejected") {
  const auto phi = LineDiffeo::from_derivative(gauss(-0.95, 0.0, 0.3));
  const auto psi = LineDiffeo::from_derivative(gauss(-0.95, 0.0, 0.3));
  // (1 + f'o psi)(1 + f') stays positive, so this composition is fine.
  CHECK_NOTHROW(compose(phi, psi));
  CHECK_THROWS_AS(LineDiffeo::from_derivative(gauss(-1.0)), Error);
}
