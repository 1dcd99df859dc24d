#include "lpgeo/orlicz.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

namespace lpgeo {

namespace {

constexpr int kSpotPoints = 64;

std::string shortest(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double sgn(double t) { return t > 0.0 ? 1.0 : (t < 0.0 ? -1.0 : 0.0); }

void spot_check(const std::string& label, const YoungFunction::Fn& phi) {
  const auto bad = [&](const std::string& what) {
    fail(ErrorCode::invalid_argument, "Young function '" + label + "' " + what);
  };
  if (phi(0.0) != 0.0) bad("does not vanish at 0");
  double prev_t = 0.0;
  double prev = 0.0;
  double prev_ratio = 0.0;
  for (int i = 0; i < kSpotPoints; ++i) {
    const double t = std::pow(10.0, -6.0 + 12.0 * i / (kSpotPoints - 1));
    const double v = phi(t);
    if (!std::isfinite(v)) bad("is not finite on the spot-check grid");
    if (std::abs(phi(-t) - v) > 1e-12 * std::abs(v)) bad("is not symmetric");
    if (v <= prev && prev_t > 0.0) bad("is not strictly increasing");
    const double ratio = v / t;
    if (i > 0 && ratio < prev_ratio * (1.0 - 1e-12)) bad("has decreasing Phi(t)/t, so it is not convex");
    prev_t = t;
    prev = v;
    prev_ratio = ratio;
  }
  const double r1 = phi(1.0);
  const double rbig = phi(1e6) / 1e6;
  const bool linear = std::abs(rbig - r1) <= 1e-12 * r1;
  if (!linear && rbig < 10.0 * r1) bad("does not grow superlinearly");
}

double log_young_inverse(double y) {
  require(y >= 0.0, ErrorCode::invalid_argument, "Young inverse takes nonnegative values");
  double lo = 0.0;
  double hi = y + 1.0;
  for (int it = 0; it < 200 && hi - lo > 1e-16 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (mid * std::log1p(mid) < y ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

SampledFunction apply(const SampledFunction& f, double scale, const YoungFunction::Fn& fn) {
  return f.map([&](double v) { return fn(v / scale); });
}

double orlicz_integral(const SampledFunction& f, const Density& mu, const YoungFunction& phi, double r) {
  return integrate(f.zip(mu.rho(), [&](double v, double w) { return phi(v / r) * w; }));
}

}  // namespace

YoungFunction::YoungFunction(std::string label, Fn evaluate, Fn derivative, std::optional<Fn> inverse)
    : label_(std::move(label)), eval_(std::move(evaluate)), deriv_(std::move(derivative)), inverse_(std::move(inverse)) {
  spot_check(label_, eval_);
}

YoungFunction YoungFunction::power(double p) {
  require(std::isfinite(p) && p >= 1.0, ErrorCode::invalid_argument, "power Young function needs p >= 1");
  return YoungFunction(
      "power:" + shortest(p), [p](double t) { return std::pow(std::abs(t), p); },
      [p](double t) { return p == 1.0 ? sgn(t) : p * std::pow(std::abs(t), p - 1.0) * sgn(t); },
      Fn([p](double y) { return std::pow(y, 1.0 / p); }));
}

YoungFunction YoungFunction::log_young() {
  return YoungFunction(
      "loglinear", [](double t) { return std::abs(t) * std::log1p(std::abs(t)); },
      [](double t) {
        const double a = std::abs(t);
        return sgn(t) * (std::log1p(a) + a / (1.0 + a));
      },
      Fn(log_young_inverse));
}

YoungFunction YoungFunction::from_label(const std::string& label) {
  if (label == "loglinear") return log_young();
  const std::string prefix = "power:";
  if (label.rfind(prefix, 0) == 0) {
    const std::string rest = label.substr(prefix.size());
    std::size_t used = 0;
    double p = std::numeric_limits<double>::quiet_NaN();
    try {
      p = std::stod(rest, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == rest.size() && !rest.empty() && std::isfinite(p) && p >= 1.0) return power(p);
  }
  fail(ErrorCode::config_error, "unknown Young function label '" + label + "'");
}

double YoungFunction::inverse(double y) const {
  if (!inverse_) fail(ErrorCode::missing_inverse, "Young function '" + label_ + "' has no inverse");
  return (*inverse_)(y);
}

YoungFunction YoungFunction::scaled(double lambda) const {
  require(std::isfinite(lambda) && lambda > 0.0, ErrorCode::invalid_argument, "scale must be positive");
  std::optional<Fn> inv;
  if (inverse_) inv = Fn([f = *inverse_, lambda](double y) { return f(y / lambda); });
  return YoungFunction(
      label_ + "*" + shortest(lambda), [f = eval_, lambda](double t) { return lambda * f(t); },
      [f = deriv_, lambda](double t) { return lambda * f(t); }, std::move(inv));
}

double luxemburg_norm(const SampledFunction& f, const Density& mu, const YoungFunction& phi, const Tolerances& tol) {
  f.require_same_grid(mu.rho());
  const double top = f.max_abs();
  if (top == 0.0) return 0.0;
  const auto I = [&](double r) {
    const double v = orlicz_integral(f, mu, phi, r);
    if (std::isnan(v)) fail(ErrorCode::non_finite_integral, "Orlicz integral is not a number");
    return v;
  };
  const double r0 = std::max(1e-8, top / 10.0);
  const double i0 = I(r0);
  if (!std::isfinite(i0)) fail(ErrorCode::non_finite_integral, "Orlicz integral overflows at the initial bracket");
  double lo = r0;
  double hi = r0;
  if (i0 > 1.0) {
    do {
      lo = hi;
      hi *= 2.0;
    } while (I(hi) > 1.0);
  } else {
    do {
      hi = lo;
      lo *= 0.5;
    } while (I(lo) <= 1.0);
  }
  while (hi - lo > tol.luxemburg_rel * hi) {
    const double mid = 0.5 * (lo + hi);
    (I(mid) <= 1.0 ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

double luxemburg_first_variation(const SampledFunction& f, const SampledFunction& h, const Density& mu,
                                 const YoungFunction& phi, const Tolerances& tol) {
  f.require_same_grid(h);
  const double k0 = luxemburg_norm(f, mu, phi, tol);
  const auto dphi = apply(f, k0 == 0.0 ? 1.0 : k0, [&](double t) { return phi.derivative(t); });
  const double den = integrate(f * dphi * mu.rho());
  if (!(den > 0.0)) fail(ErrorCode::zero_denominator, "integral of f Phi'(f/K0) is not positive");
  return k0 * integrate(h * dphi * mu.rho()) / den;
}

InvariancePair orlicz_finsler_invariance(const SampledFunction& a, const Density& mu, const YoungFunction& phi,
                                         const SampledFunction& map, const Tolerances& tol) {
  a.require_same_grid(mu.rho());
  require_monotone(map);
  const double before = luxemburg_norm(a / mu.rho(), mu, phi, tol);
  const Density pulled(pullback(mu.rho(), map));
  const double after = luxemburg_norm(pullback(a, map) / pulled.rho(), pulled, phi, tol);
  return {before, after};
}

SampledFunction phi_embedding(const ProbabilityDensity& rho, const YoungFunction& phi) {
  if (!phi.has_inverse()) fail(ErrorCode::missing_inverse, "Young function '" + phi.label() + "' has no inverse");
  return rho.rho().map([&](double v) { return phi.inverse(v); });
}

JacobianPath JacobianPath::from_maps(double t0, double dt, const std::vector<SampledFunction>& maps) {
  JacobianPath p{t0, dt, {}};
  for (const auto& m : maps) p.jacobians.push_back(map_derivative(m));
  return p;
}

JacobianPath JacobianPath::from_densities(const DensityPath& path) {
  JacobianPath p{path.t0, path.dt, {}};
  for (const auto& d : path.slices) p.jacobians.push_back(d.rho());
  return p;
}

namespace {

// f_k = (J_{k+1} - J_{k-1}) / (2 dt J_k) for k = 1 .. N-2; entry 0 unused.
std::vector<SampledFunction> rates(const JacobianPath& path, const Tolerances& tol) {
  const std::size_t n = path.jacobians.size();
  require(n >= 5, ErrorCode::too_few_slices, "need at least 5 time slices");
  require(path.dt > 0.0, ErrorCode::invalid_argument, "time step must be positive");
  for (std::size_t k = 1; k < n; ++k) path.jacobians[0].require_same_grid(path.jacobians[k]);
  std::vector<SampledFunction> f;
  f.reserve(n);
  f.push_back(path.jacobians[0]);
  for (std::size_t k = 1; k + 1 < n; ++k) {
    const auto& jm = path.jacobians[k - 1];
    const auto& jp = path.jacobians[k + 1];
    auto fk = (jp - jm) / path.jacobians[k];
    fk = (1.0 / (2.0 * path.dt)) * fk;
    if (fk.min() < tol.positivity_floor)
      fail(ErrorCode::positivity_violation, "phi_tx/phi_x falls below the positivity floor");
    f.push_back(std::move(fk));
  }
  return f;
}

}  // namespace

SpaceTimeField orlicz_geodesic_residual(const JacobianPath& path, const YoungFunction& phi, const Tolerances& tol) {
  const auto f = rates(path, tol);
  const std::size_t n = path.jacobians.size();
  std::vector<SampledFunction> lhs;
  std::vector<SampledFunction> q;
  lhs.push_back(f[0]);
  q.push_back(f[0]);
  for (std::size_t k = 1; k + 1 < n; ++k) {
    const Density weight(path.jacobians[k]);
    const double k0 = luxemburg_norm(f[k], weight, phi, tol);
    const auto dphi = apply(f[k], k0, [&](double t) { return phi.derivative(t); });
    const double d = integrate(f[k] * dphi * weight.rho());
    if (!(d > 0.0)) fail(ErrorCode::zero_denominator, "integral of f Phi'(f/K0) phi_x is not positive");
    lhs.push_back((k0 * k0 / d) * apply(f[k], k0, [&](double t) { return phi(t); }));
    q.push_back((k0 / d) * dphi);
  }
  SpaceTimeField out;
  for (std::size_t k = 2; k + 2 < n; ++k) {
    const auto dq = (1.0 / (2.0 * path.dt)) * (q[k + 1] - q[k - 1]);
    out.times.push_back(path.t0 + static_cast<double>(k) * path.dt);
    out.slices.push_back(lhs[k] - dq - q[k] * f[k]);
  }
  return out;
}

SpaceTimeField lp_reduction_residual(const JacobianPath& path, double p, const Tolerances& tol) {
  (void)PExponent::finite(p);
  const auto f = rates(path, tol);
  const std::size_t n = path.jacobians.size();
  SpaceTimeField out;
  for (std::size_t k = 2; k + 2 < n; ++k) {
    const auto pow_m1 = [&](std::size_t j) { return f[j].map([&](double v) { return std::pow(v, p - 1.0); }); };
    const auto dt_term = (p / (2.0 * path.dt)) * (pow_m1(k + 1) - pow_m1(k - 1));
    out.times.push_back(path.t0 + static_cast<double>(k) * path.dt);
    out.slices.push_back(dt_term + (p - 1.0) * f[k].map([&](double v) { return std::pow(v, p); }));
  }
  return out;
}

}  // namespace lpgeo
