#include "lpgeo/hyperbolic.hpp"

#include <algorithm>
#include <cmath>

namespace lpgeo {

LocationScaleFamily::LocationScaleFamily(SampledFunction generator, bool allow_asymmetric, const Tolerances& tol)
    : g_(std::move(generator)), dg_(g_), symmetric_(true) {
  require(!g_.grid().is_circle(), ErrorCode::invalid_argument, "generators live on a line grid");
  require(g_.min() >= 0.0 && g_.max() > 0.0, ErrorCode::invalid_argument, "generator must be a nonnegative density");
  require_decay(g_, tol, "generator");
  require(std::abs(integrate(g_) - 1.0) <= tol.normalization, ErrorCode::invalid_argument,
          "generator must have unit mass");
  const std::size_t n = g_.size();
  for (std::size_t i = 0; i < n / 2; ++i)
    if (std::abs(g_[i] - g_[n - 1 - i]) > tol.symmetry) symmetric_ = false;
  require(symmetric_ || allow_asymmetric, ErrorCode::invalid_argument, "generator is not symmetric");
  dg_ = derivative(g_, 1, tol);
}

namespace {

struct Sums {
  std::array<double, 3> fine{};    // tt, ts, ss
  std::array<double, 3> coarse{};
};

}  // namespace

std::array<std::array<double, 2>, 2> fisher_matrix(const LocationScaleFamily& family, double t, double sigma,
                                                   const Tolerances& tol) {
  require(std::isfinite(t) && std::isfinite(sigma) && sigma > 0.0, ErrorCode::invalid_argument,
          "location must be finite and scale positive");
  const auto& g = family.generator();
  const auto& dg = family.generator_derivative();
  // The x window covers the shifted and scaled support of g whatever (t, s) is.
  const std::size_t intervals = 2 * (g.size() - 1);
  const double half = std::abs(t) + sigma * g.grid().half_width();
  const double h = 2.0 * half / static_cast<double>(intervals);
  const double s3 = sigma * sigma * sigma;
  Sums sums;
  for (std::size_t i = 0; i <= intervals; ++i) {
    const double x = -half + static_cast<double>(i) * h;
    const double u = (x - t) / sigma;
    const double gu = interpolate(g, u);
    if (!(gu > 1e-300)) continue;
    const double du = interpolate(dg, u);
    const double a = du;           // -sigma g s_t
    const double b = gu + u * du;  // -sigma g s_sigma
    const std::array<double, 3> v{a * a / (gu * s3), a * b / (gu * s3), b * b / (gu * s3)};
    const double w = (i == 0 || i == intervals) ? 0.5 : 1.0;
    for (int k = 0; k < 3; ++k) {
      sums.fine[k] += w * v[k] * h;
      if (i % 2 == 0) sums.coarse[k] += w * v[k] * 2.0 * h;
    }
  }
  for (int k = 0; k < 3; ++k) {
    if (!std::isfinite(sums.fine[k]) ||
        std::abs(sums.fine[k] - sums.coarse[k]) > tol.score_refinement * std::max(1.0, std::abs(sums.fine[k])))
      fail(ErrorCode::non_integrable_score, "Fisher quadrature does not settle under grid refinement");
  }
  return {{{sums.fine[0], sums.fine[1]}, {sums.fine[1], sums.fine[2]}}};
}

HyperbolicReport hyperbolic_check(const LocationScaleFamily& family, const std::vector<double>& ts,
                                  const std::vector<double>& sigmas, const Tolerances& tol) {
  require(!ts.empty() && !sigmas.empty(), ErrorCode::invalid_argument, "empty parameter grid");
  HyperbolicReport r{};
  r.positive_definite = true;
  for (double s : sigmas)
    for (double t : ts) {
      const auto m = fisher_matrix(family, t, s, tol);
      r.samples.push_back({t, s, s * s * m[0][0], s * s * m[1][1], m[0][1]});
      if (!(m[0][0] > 0.0 && m[0][0] * m[1][1] - m[0][1] * m[0][1] > 0.0)) r.positive_definite = false;
    }
  for (const auto& x : r.samples) {
    r.c_tt += x.c_tt;
    r.c_ss += x.c_ss;
    r.max_offdiag = std::max(r.max_offdiag, std::abs(x.offdiag));
  }
  r.c_tt /= static_cast<double>(r.samples.size());
  r.c_ss /= static_cast<double>(r.samples.size());
  for (const auto& x : r.samples)
    r.max_spread = std::max({r.max_spread, std::abs(x.c_tt - r.c_tt) / std::abs(r.c_tt),
                             std::abs(x.c_ss - r.c_ss) / std::abs(r.c_ss)});
  r.hyperbolic = r.positive_definite && r.max_spread <= tol.hyperbolic_constancy &&
                 r.max_offdiag <= tol.hyperbolic_offdiag;
  return r;
}

HyperbolicReport hyperbolic_check(const LocationScaleFamily& family, const Tolerances& tol) {
  return hyperbolic_check(family, {-1.0, -0.5, 0.0, 0.5, 1.0}, {0.5, 0.75, 1.0, 1.25, 1.5}, tol);
}

}  // namespace lpgeo
