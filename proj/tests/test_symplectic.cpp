#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "lpgeo/symplectic.hpp"

using namespace lpgeo;

namespace {

constexpr double kPi = std::numbers::pi;
const T4Grid kGrid(16);

double s2(double x) { return std::sin(2 * kPi * x); }
double c2(double x) { return std::cos(2 * kPi * x); }

// Small exact perturbation d sigma of the standard form.
Form2OnT4 perturbed(double eps, int variant) {
  const auto sigma = Form1OnT4::sample(kGrid, [=](const std::array<double, 4>& x) -> std::array<double, 4> {
    const double v = static_cast<double>(variant);
    return {eps * s2(x[1] + 0.1 * v) * c2(x[2]), eps * c2(x[0] + x[3] + 0.2 * v), -eps * s2(x[3] - 0.3 * v),
            eps * 0.5 * c2(x[0] - x[2])};
  });
  return Form2OnT4::standard(kGrid) + exterior_derivative(sigma);
}

Form2OnT4 tangent(int variant) {
  return Form2OnT4::sample(kGrid, [=](const std::array<double, 4>& x) -> std::array<double, 6> {
    const double v = 0.25 * static_cast<double>(variant);
    return {1.0 + 0.3 * s2(x[0] + v), 0.2 * c2(x[1]), -0.1 * s2(x[2] + x[3]), 0.4 * c2(x[0] - v), 0.05,
            -0.5 + 0.2 * c2(x[3] + v)};
  });
}

Form2OnT4 primitive_part(const Form2OnT4& omega0, const Form2OnT4& beta) {
  const auto r = symplectic_ratio(omega0, beta);
  std::array<T4Field, 6> c = beta.coefficients();
  for (int k = 0; k < 6; ++k)
    for (std::size_t m = 0; m < r.size(); ++m) c[k][m] -= r[m] * omega0.c(k)[m];
  return Form2OnT4(kGrid, std::move(c));
}

}  // namespace

TEST_CASE("wedge of 2-forms") {
  const auto e12 = Form2OnT4::constant(kGrid, {1, 0, 0, 0, 0, 0});
  const auto e34 = Form2OnT4::constant(kGrid, {0, 0, 0, 0, 0, 1});
  for (double v : wedge22(e12, e34).v) CHECK(v == 1.0);
  const auto w0 = Form2OnT4::standard(kGrid);
  for (double v : wedge22(w0, w0).v) CHECK(v == 2.0);
  const auto a = tangent(1);
  const auto b = perturbed(0.05, 2);
  CHECK(wedge22(a, b).v == wedge22(b, a).v);
  CHECK_THROWS_AS(wedge22(a, Form2OnT4::standard(T4Grid(8))), Error);
}

TEST_CASE("L^p symplectic norm anchors") {
  const auto w0 = Form2OnT4::standard(kGrid);
  const auto prim = Form2OnT4::constant(kGrid, {1, 0, 0, 0, 0, -1});
  for (double p : {1.0, 2.0, 3.5}) {
    CHECK(lp_symplectic_norm(w0, prim, p) == 0.0);
    CHECK(lp_symplectic_norm(w0, w0, p) == doctest::Approx(1.0).epsilon(1e-15));
  }
  CHECK(l2_symplectic_inner(w0, w0, w0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(l2_symplectic_inner(w0, w0, prim) == 0.0);
  const auto flat = Form2OnT4::constant(kGrid, {1, 0, 0, 0, 0, 0});
  CHECK_THROWS_AS(lp_symplectic_norm(flat, w0, 2.0), Error);
}

TEST_CASE("Lefschetz kernel") {
  for (int v = 0; v < 4; ++v) {
    const auto w0 = perturbed(0.04, v);
    const auto prim = primitive_part(w0, tangent(v));
    CHECK(prim.c(0) != tangent(v).c(0));
    for (double p : {1.0, 2.0, 3.0}) CHECK(lp_symplectic_norm(w0, prim, p) <= 1e-10);
  }
}

TEST_CASE("projection is a local isometry") {
  int cases = 0;
  for (int v = 0; v < 5; ++v)
    for (double p : {1.5, 3.0}) {
      const auto w0 = perturbed(0.03 + 0.01 * v, v);
      CHECK(w0.closedness_residual() <= 1e-8);
      const auto r = projection_pushforward_check(w0, tangent(v), p);
      CHECK(std::abs(r.lhs - r.rhs) <= 1e-8 * std::max(1.0, r.rhs));
      ++cases;
    }
  CHECK(cases == 10);
  const auto w0 = Form2OnT4::standard(kGrid);
  const auto same = projection_pushforward_check(w0, w0, 2.0);
  CHECK(same.lhs == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(same.rhs == doctest::Approx(2.0).epsilon(1e-10));
  const auto zero = projection_pushforward_check(w0, Form2OnT4::constant(kGrid, {1, 0, 0, 0, 0, -1}), 2.0);
  CHECK(zero.lhs == 0.0);
  CHECK(zero.rhs == 0.0);
  const auto mode = Form2OnT4::sample(kGrid, [](const std::array<double, 4>& x) -> std::array<double, 6> {
    return {0.1 * s2(x[0]), 0, 0, 0, 0, 0};
  });
  const auto m = projection_pushforward_check(w0, mode, 3.0);
  CHECK(std::abs(m.lhs - m.rhs) <= 1e-8);
  CHECK(m.lhs > 0.01);
  CHECK_THROWS_AS(projection_pushforward_check(2.0 * w0, mode, 2.0), Error);
}

TEST_CASE("Darboux divergence identity") {
  // sigma = -f1 dx1 + g1 dx2 - f2 dx3 + g2 dx4; beta ^ omega0 = div(sigma) omega0^2 / n.
  const auto sigma = Form1OnT4::sample(kGrid, [](const std::array<double, 4>& x) -> std::array<double, 4> {
    return {-0.3 * s2(x[1] + x[2]), 0.2 * c2(x[0]) * s2(x[3]), -0.1 * c2(x[3] - x[0]), 0.4 * s2(x[2] + 0.3)};
  });
  const auto beta = exterior_derivative(sigma);
  const auto ratio = symplectic_ratio(Form2OnT4::standard(kGrid), beta);
  double err = 0.0;
  for (std::size_t m = 0; m < kGrid.size(); ++m) {
    const auto x = kGrid.node(m);
    // d1 g1 + d2 f1 + d3 g2 + d4 f2.
    const double div = -0.4 * kPi * s2(x[0]) * s2(x[3]) + 0.6 * kPi * c2(x[1] + x[2]) + 0.8 * kPi * c2(x[2] + 0.3) -
                       0.2 * kPi * s2(x[3] - x[0]);
    err = std::max(err, std::abs(ratio[m] - div / 2.0));
  }
  CHECK(err <= 1e-7);
}

TEST_CASE("Finsler properties") {
  const auto w0 = perturbed(0.05, 1);
  const auto a = tangent(2);
  const auto b = tangent(3) - 0.5 * w0;
  for (double p : {1.0, 2.0, 4.0}) {
    const double fa = lp_symplectic_norm(w0, a, p);
    CHECK(lp_symplectic_norm(w0, 2.5 * a, p) == doctest::Approx(2.5 * fa).epsilon(1e-12));
    CHECK(lp_symplectic_norm(w0, -1.0 * a, p) == doctest::Approx(fa).epsilon(1e-12));
    CHECK(lp_symplectic_norm(w0, a + b, p) <= fa + lp_symplectic_norm(w0, b, p) + 1e-12);
  }
}

TEST_CASE("Cauchy-Schwarz for the L^2 inner product") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const T4Grid g(6);
  const auto random_form = [&]() {
    std::array<T4Field, 6> c;
    for (auto& f : c) {
      f.resize(g.size());
      for (double& x : f) x = u(rng);
    }
    return Form2OnT4(g, std::move(c));
  };
  const auto w0 = Form2OnT4::standard(g);
  for (int trial = 0; trial < 5; ++trial) {
    const auto a = random_form();
    const auto b = random_form();
    const double ab = l2_symplectic_inner(w0, a, b);
    CHECK(ab * ab <= l2_symplectic_inner(w0, a, a) * l2_symplectic_inner(w0, b, b) + 1e-12);
    CHECK(l2_symplectic_inner(w0, a, b) == doctest::Approx(l2_symplectic_inner(w0, b, a)).epsilon(1e-14));
  }
}

TEST_CASE("harmonic part") {
  const auto c = Form2OnT4::constant(kGrid, {1.0, 0.2, -0.3, 0.4, 0.1, 0.8});
  const auto hc = harmonic_part(c);
  for (int k = 0; k < 6; ++k) CHECK(std::abs(hc.c(k)[0] - c.c(k)[0]) <= 1e-14);

  const auto w = perturbed(0.08, 3);
  const auto h = harmonic_part(w);
  const auto w0 = Form2OnT4::standard(kGrid);
  for (int k = 0; k < 6; ++k)
    for (std::size_t m = 0; m < kGrid.size(); m += 997) CHECK(std::abs(h.c(k)[m] - w0.c(k)[m]) <= 1e-10);
  CHECK(0.5 * wedge22(h, h).integral() == doctest::Approx(0.5 * wedge22(w, w).integral()).epsilon(1e-9));

  const auto open = Form2OnT4::sample(kGrid, [](const std::array<double, 4>& x) -> std::array<double, 6> {
    return {1.0 + 0.1 * s2(x[2]), 0, 0, 0, 0, 1};
  });
  try {
    (void)harmonic_part(open);
    FAIL("expected NotClosed");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::not_closed);
  }
}

TEST_CASE("invariance under coordinate-wise torus diffeomorphisms") {
  const Grid circle = Grid::circle(kGrid.n());
  const auto axis = [&](double eps, double shift) {
    return SampledFunction::sample(circle, [=](double x) { return x + eps * s2(x + shift) / (2 * kPi); });
  };
  const std::array<SampledFunction, 4> phi{axis(0.2, 0.0), axis(-0.15, 0.3), axis(0.1, 0.5), axis(0.25, 0.7)};
  const auto w0 = Form2OnT4::standard(kGrid);
  const auto beta = Form2OnT4::sample(kGrid, [](const std::array<double, 4>& x) -> std::array<double, 6> {
    return {1.0 + 0.2 * c2(x[0]), 0, 0, 0, 0, 0.5 + 0.1 * s2(x[2])};
  });
  const auto pw0 = pullback(w0, phi);
  const auto pbeta = pullback(beta, phi);
  for (double p : {1.0, 2.0, 3.0})
    CHECK(lp_symplectic_norm(pw0, pbeta, p) == doctest::Approx(lp_symplectic_norm(w0, beta, p)).epsilon(1e-7));
}
