#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "lpgeo/error.hpp"
#include "lpgeo/hyperbolic.hpp"

using namespace lpgeo;

namespace {

const double kSqrt2Pi = std::sqrt(2.0 * std::numbers::pi);

SampledFunction gaussian(double width = 1.0) {
  return SampledFunction::sample(Grid::line(10.0, 2001), [width](double x) {
    return std::exp(-0.5 * x * x / (width * width)) / (kSqrt2Pi * width);
  });
}

// Plain trapezoid of fn on [-a, a] with m intervals.
template <class F>
double trap(F&& fn, double a, int m) {
  const double h = 2.0 * a / m;
  double s = 0.5 * (fn(-a) + fn(a));
  for (int i = 1; i < m; ++i) s += fn(-a + i * h);
  return s * h;
}

double root_exp(double x) { return std::exp(-std::sqrt(1.0 + x * x)); }

SampledFunction root_exp_generator() {
  const double mass = trap(root_exp, 40.0, 8000);
  return SampledFunction::sample(Grid::line(40.0, 8001), [mass](double x) { return root_exp(x) / mass; });
}

SampledFunction skewed_generator() {
  const auto raw = [](double x) { return std::exp(-0.5 * x * x) * (1.0 + 0.5 * std::tanh(x)); };
  const double mass = trap(raw, 10.0, 2000);
  return SampledFunction::sample(Grid::line(10.0, 2001), [&](double x) { return raw(x) / mass; });
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::ok;
}

}  // namespace

TEST_CASE("Gaussian Fisher matrix at the unit scale") {
  const LocationScaleFamily fam(gaussian());
  CHECK(fam.symmetric());
  const auto m = fisher_matrix(fam, 0.0, 1.0);
  CHECK(m[0][0] == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(m[1][1] == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(std::abs(m[0][1]) <= 1e-8);
  CHECK(m[0][1] == m[1][0]);
}

TEST_CASE("Gaussian Fisher matrix scales as 1/sigma^2") {
  const LocationScaleFamily fam(gaussian());
  const auto r = hyperbolic_check(fam);
  REQUIRE(r.samples.size() == 25);
  for (const auto& s : r.samples) {
    CHECK(std::abs(s.c_tt - 1.0) <= 1e-6);
    CHECK(std::abs(s.c_ss - 2.0) <= 1e-6);
    CHECK(std::abs(s.offdiag) <= 1e-8);
  }
  CHECK(r.positive_definite);
  CHECK(r.hyperbolic);
  CHECK(r.max_spread <= 1e-5);
}

TEST_CASE("second symmetric generator is hyperbolic with its own constants") {
  const LocationScaleFamily fam(root_exp_generator());
  const double mass = trap(root_exp, 40.0, 400000);
  // score of the location and scale parameters at (0, 1)
  const double c1 = trap([](double u) { return u * u / (1.0 + u * u) * root_exp(u); }, 40.0, 400000) / mass;
  const double c2 = trap(
      [](double u) {
        const double a = 1.0 - u * u / std::sqrt(1.0 + u * u);
        return a * a * root_exp(u);
      },
      40.0, 400000) / mass;
  const auto r = hyperbolic_check(fam);
  CHECK(r.hyperbolic);
  CHECK(r.max_spread <= 1e-5);
  CHECK(r.max_offdiag <= 1e-8);
  CHECK(r.c_tt == doctest::Approx(c1).epsilon(1e-6));
  CHECK(r.c_ss == doctest::Approx(c2).epsilon(1e-6));
  CHECK(r.c_tt > 0.0);
  CHECK(r.c_ss > 0.0);
}

TEST_CASE("asymmetric control is rejected, and flagged when allowed") {
  CHECK(code_of([] { LocationScaleFamily fam(skewed_generator()); }) == ErrorCode::invalid_argument);
  const LocationScaleFamily fam(skewed_generator(), true);
  CHECK_FALSE(fam.symmetric());
  const auto r = hyperbolic_check(fam);
  CHECK(r.positive_definite);
  CHECK(r.max_offdiag > 1e-3);
  CHECK_FALSE(r.hyperbolic);
}

TEST_CASE("generator validation") {
  CHECK(code_of([] { LocationScaleFamily fam(1.1 * gaussian()); }) == ErrorCode::invalid_argument);
  CHECK(code_of([] {
          LocationScaleFamily fam(SampledFunction::sample(Grid::circle(64), [](double) { return 1.0; }));
        }) == ErrorCode::invalid_argument);
  CHECK(code_of([] {
          LocationScaleFamily fam(SampledFunction::sample(Grid::line(3.0, 601), [](double x) {
            return std::exp(-0.5 * x * x) / kSqrt2Pi;
          }));
        }) == ErrorCode::decay_violation);
  const LocationScaleFamily fam(gaussian());
  CHECK(code_of([&] { fisher_matrix(fam, 0.0, 0.0); }) == ErrorCode::invalid_argument);
  CHECK(code_of([&] { fisher_matrix(fam, NAN, 1.0); }) == ErrorCode::invalid_argument);
}

TEST_CASE("under-resolved generator has a non-integrable score") {
  const LocationScaleFamily fam(gaussian(0.012));
  CHECK(code_of([&] { fisher_matrix(fam, 0.0, 1.0); }) == ErrorCode::non_integrable_score);
}
