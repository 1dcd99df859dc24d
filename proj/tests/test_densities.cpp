#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "lpgeo/densities.hpp"

using namespace lpgeo;
constexpr double kPi = std::numbers::pi;

namespace {

SampledFunction fn(const Grid& g, double (*f)(double)) { return SampledFunction::sample(g, f); }

double sup_diff(const SampledFunction& a, const SampledFunction& b) { return (a - b).max_abs(); }

ProbabilityDensity bump(const Grid& g, double amp, double phase) {
  return ProbabilityDensity(SampledFunction::sample(
      g, [=](double x) { return 1.0 + amp * std::sin(2 * kPi * x + phase); }));
}

// Great circle through sqrt(rho0) on the unit L^2 sphere: every point is a
// p = 2 Fisher-Rao geodesic of Prob.
DensityPath sphere_geodesic(const Grid& g, double dt, std::size_t count) {
  const auto s0 = SampledFunction::sample(g, [](double x) { return std::sqrt(1.0 + 0.5 * std::sin(2 * kPi * x)); });
  auto v = SampledFunction::sample(g, [](double x) { return std::cos(4 * kPi * x) + 0.3 * std::sin(2 * kPi * x); });
  v = v - integrate(v * s0) * s0;
  v = (1.0 / std::sqrt(integrate(v * v))) * v;
  DensityPath path{0.05, dt, {}};
  for (std::size_t k = 0; k < count; ++k) {
    const double t = path.t0 + static_cast<double>(k) * dt;
    const auto s = std::cos(t) * s0 + std::sin(t) * v;
    path.slices.emplace_back(s * s);
  }
  return path;
}

}  // namespace

TEST_CASE("L^p Fisher norm anchors") {
  // |cos| has kinks on nodes, so p = 1 converges only like h^2.
  const auto g = Grid::circle(2048);
  const Density dx(SampledFunction::constant(g, 1.0));
  const auto c = fn(g, [](double x) { return std::cos(2 * kPi * x); });
  CHECK(lp_fisher_norm(dx, SampledFunction::constant(g, 0.0), PExponent::finite(2)) == 0.0);
  CHECK(lp_fisher_norm(dx, c, PExponent::finite(2)) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
  CHECK(std::abs(lp_fisher_norm(dx, c, PExponent::finite(1)) - 2.0 / kPi) < 1e-6);
  CHECK(lp_fisher_norm(dx, c, PExponent::infinity()) == doctest::Approx(1.0));
}

TEST_CASE("L^p Fisher norm is a Finsler norm") {
  const auto g = Grid::circle(128);
  const Density mu(fn(g, [](double x) { return 1.0 + 0.5 * std::sin(2 * kPi * x); }));
  const auto a = fn(g, [](double x) { return std::cos(2 * kPi * x); });
  const auto b = fn(g, [](double x) { return std::sin(6 * kPi * x); });
  for (double p : {1.0, 2.0, 3.0, 7.5}) {
    const auto P = PExponent::finite(p);
    const double fa = lp_fisher_norm(mu, a, P);
    CHECK(std::abs(lp_fisher_norm(mu, -2.5 * a, P) - 2.5 * fa) < 1e-13 * std::max(1.0, fa));
    CHECK(lp_fisher_norm(mu, a + b, P) <= fa + lp_fisher_norm(mu, b, P) + 1e-12);
  }
}

TEST_CASE("grid mismatch is reported") {
  const Density mu(SampledFunction::constant(Grid::circle(64), 1.0));
  try {
    (void)lp_fisher_norm(mu, SampledFunction::constant(Grid::circle(32), 1.0), PExponent::finite(2));
    FAIL("expected GridMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::grid_mismatch);
  }
}

TEST_CASE("explicit geodesic endpoints and midpoint") {
  const auto g = Grid::circle(64);
  const Density one(SampledFunction::constant(g, 1.0));
  const Density four(SampledFunction::constant(g, 4.0));
  const auto mid = geodesic_explicit(one, four, 0.5, 2.0);
  CHECK(sup_diff(mid.rho(), SampledFunction::constant(g, 2.25)) < 1e-15);
  const auto r0 = bump(g, 0.5, 0.0);
  const auto r1 = bump(g, 0.3, 1.0);
  CHECK(sup_diff(geodesic_explicit(r0, r1, 0.0, 3.0).rho(), r0.rho()) == 0.0);
  CHECK(sup_diff(geodesic_explicit(r0, r1, 1.0, 3.0).rho(), r1.rho()) == 0.0);
  CHECK(sup_diff(geodesic_explicit(r0, r0, 0.37, 3.0).rho(), r0.rho()) < 1e-14);
}

TEST_CASE("explicit geodesics solve the Dens geodesic equation") {
  const auto g = Grid::circle(256);
  const auto r0 = bump(g, 0.5, 0.0);
  const auto r1 = bump(g, 0.4, 2.0);
  for (double p : {1.5, 2.0, 3.0}) {
    const auto path = sample_explicit_geodesic(r0, r1, p, 0.3, 1e-3, 9);
    CHECK(dens_geodesic_residual(path, p).sup() <= 1e-6);
  }
  DensityPath line{0.3, 1e-3, {}};
  for (int k = 0; k < 9; ++k) {
    const double t = 0.3 + 1e-3 * k;
    line.slices.emplace_back((1 - t) * r0.rho() + t * SampledFunction::constant(g, 4.0));
  }
  CHECK(dens_geodesic_residual(line, 2.0).sup() > 1e-2);

  DensityPath still{0.0, 1e-2, std::vector<Density>(6, r0)};
  CHECK(dens_geodesic_residual(still, 2.0).sup() < 1e-13);
  still.slices.resize(4, r0);
  try {
    (void)dens_geodesic_residual(still, 2.0);
    FAIL("expected TooFewSlices");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::too_few_slices);
  }
}

TEST_CASE("explicit geodesics have constant speed") {
  const auto g = Grid::circle(256);
  const auto r0 = bump(g, 0.5, 0.0);
  const auto r1 = bump(g, 0.4, 2.0);
  const double p = 3.0;
  const double h = 1e-4;
  auto speed = [&](double t) {
    const auto rt = (1.0 / (2 * h)) * (geodesic_explicit(r0, r1, t + h, p).rho() - geodesic_explicit(r0, r1, t - h, p).rho());
    return lp_fisher_norm(geodesic_explicit(r0, r1, t, p), rt, PExponent::finite(p));
  };
  const double s = speed(0.2);
  for (double t : {0.4, 0.6, 0.8}) CHECK(std::abs(speed(t) - s) < 1e-6);
}

TEST_CASE("Prob geodesic residual on a Fisher-Rao great circle") {
  const auto g = Grid::circle(256);
  const auto path = sphere_geodesic(g, 2e-4, 7);
  for (const auto& s : path.slices) CHECK(std::abs(s.mass() - 1.0) < 1e-12);
  CHECK(prob_geodesic_residual(path, 2.0).sup() <= 1e-4);
  CHECK(chern_geodesic_residual(path, 2.0).sup() <= 1e-4);

  DensityPath still{0.0, 1e-2, std::vector<Density>(6, bump(g, 0.5, 0.0))};
  CHECK(prob_geodesic_residual(still, 2.0).sup() < 1e-13);
  CHECK(chern_geodesic_residual(still, 1.5).sup() < 1e-13);
  try {
    (void)prob_geodesic_residual(still, 1.5);
    FAIL("expected AllMasked");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::all_masked);
  }

  const auto r0 = bump(g, 0.5, 0.0);
  const auto r1 = bump(g, 0.4, 2.0);
  DensityPath lin{0.3, 1e-3, {}};
  for (int k = 0; k < 7; ++k) {
    const double t = 0.3 + 1e-3 * k;
    lin.slices.emplace_back((1 - t) * r0.rho() + t * r1.rho());
  }
  CHECK(prob_geodesic_residual(lin, 2.0).sup() > 1e-2);
  CHECK(chern_geodesic_residual(lin, 2.0).sup() > 1e-2);
}

TEST_CASE("Prob residual masks small velocities for p < 2") {
  const auto g = Grid::circle(256);
  const auto path = sphere_geodesic(g, 1e-3, 7);
  const auto r = prob_geodesic_residual(path, 1.5);
  CHECK(r.slices.size() == 5);
  CHECK(r.masked < 5 * g.size() / 2);
}

TEST_CASE("Chern residual at p = 2 reduces to the constant-multiplier form") {
  const auto g = Grid::circle(128);
  const auto r0 = bump(g, 0.5, 0.0);
  const auto r1 = bump(g, 0.4, 2.0);
  DensityPath lin{0.3, 1e-2, {}};
  for (int k = 0; k < 5; ++k) {
    const double t = 0.3 + 1e-2 * k;
    lin.slices.emplace_back((1 - t) * r0.rho() + t * r1.rho());
  }
  const auto res = chern_geodesic_residual(lin, 2.0);
  const double dt = lin.dt;
  for (std::size_t k = 1; k + 1 < lin.slices.size(); ++k) {
    const auto& a = lin.slices[k - 1].rho();
    const auto& b = lin.slices[k].rho();
    const auto& c = lin.slices[k + 1].rho();
    const auto w = (1.0 / (2 * dt)) * (c - a) / b;
    const auto wt = (1.0 / (dt * dt)) * (c - 2.0 * b + a) / b - w * w;
    const double lambda = 0.5 * integrate(w * w * b);
    const auto direct = wt + 0.5 * (w * w) + lambda;
    CHECK(sup_diff(res.slices[k - 1], direct) < 1e-12 * std::max(1.0, direct.max_abs()));
  }
  try {
    (void)chern_geodesic_residual(lin, 3.0);
    FAIL("expected UnsupportedExponent");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::unsupported_exponent);
  }
}

TEST_CASE("flat embedding") {
  const auto g = Grid::circle(256);
  const Density dx(SampledFunction::constant(g, 1.0));
  CHECK(sup_diff(flat_embed(dx, 2.0), SampledFunction::constant(g, 2.0)) == 0.0);
  const Density mu(fn(g, [](double x) { return 1.0 + 0.5 * std::sin(2 * kPi * x); }));
  for (double p : {1.0, 2.0, 3.0, 64.0}) {
    CHECK(sup_diff(flat_embed_inverse(flat_embed(mu, p), p).rho(), mu.rho()) < 1e-12);
    CHECK(std::abs(lp_norm(flat_embed(mu, p), PExponent::finite(p)) - p) < 1e-9);
  }
  const auto a = fn(g, [](double x) { return std::cos(2 * kPi * x); });
  for (double p : {1.0, 2.0, 3.0, 64.0}) {
    const double lhs = lp_fisher_norm(mu, a, PExponent::finite(p));
    const double rhs = lp_norm(flat_embed_differential(mu, a, p), PExponent::finite(p));
    CHECK(std::abs(lhs - rhs) < 1e-9);
  }
  try {
    (void)flat_embed_inverse(fn(g, [](double x) { return std::sin(2 * kPi * x); }), 2.0);
    FAIL("expected NotInImage");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::not_in_image);
  }
}

TEST_CASE("Moser map") {
  const auto g = Grid::circle(256);
  const ProbabilityDensity dx(SampledFunction::constant(g, 1.0));
  const auto nu = bump(g, 0.5, 0.0);
  CHECK(sup_diff(moser_map_1d(nu, nu), identity_map(g)) < 1e-10);

  const auto phi = moser_map_1d(dx, nu);
  CHECK(sup_diff(pullback(nu.rho(), phi), dx.rho()) < 1e-6);

  const auto kappa = bump(g, 0.3, 1.3);
  const auto lhs = compose_maps(moser_map_1d(nu, kappa), moser_map_1d(dx, nu));
  CHECK(sup_diff(lhs, moser_map_1d(dx, kappa)) < 1e-6);
}

TEST_CASE("p = 1 invariance is limited by the kinks of |a|") {
  const auto g = Grid::circle(2048);
  const Density mu(fn(g, [](double x) { return 1.0 + 0.5 * std::sin(2 * kPi * x); }));
  const auto a = fn(g, [](double x) { return std::cos(2 * kPi * x); });
  const auto phi = SampledFunction::sample(g, [](double x) { return x + 0.1 / (4 * kPi) * std::sin(4 * kPi * x); });
  const double before = lp_fisher_norm(mu, a, PExponent::finite(1));
  const double after = lp_fisher_norm(Density(pullback(mu.rho(), phi)), pullback(a, phi), PExponent::finite(1));
  CHECK(std::abs(before - after) < 1e-6);
}

TEST_CASE("Fisher norm is invariant under circle diffeomorphisms") {
  const auto g = Grid::circle(256);
  const Density mu(fn(g, [](double x) { return 1.0 + 0.5 * std::sin(2 * kPi * x); }));
  const auto a = fn(g, [](double x) { return std::cos(2 * kPi * x) + 0.2 * std::sin(4 * kPi * x); });
  const double eps[] = {0.05, 0.1, 0.12};
  const int mode[] = {1, 2, 3};
  for (int j = 0; j < 3; ++j) {
    const double e = eps[j];
    const int m = mode[j];
    const auto phi = SampledFunction::sample(g, [=](double x) { return x + e / (2 * kPi * m) * std::sin(2 * kPi * m * x + 0.3); });
    const Density pulled(pullback(mu.rho(), phi));
    const auto pa = pullback(a, phi);
    for (double p : {2.0, 3.0, 4.5}) {
      CHECK(std::abs(lp_fisher_norm(pulled, pa, PExponent::finite(p)) - lp_fisher_norm(mu, a, PExponent::finite(p))) < 1e-7);
    }
  }
}
