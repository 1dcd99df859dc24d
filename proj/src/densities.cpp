#include "lpgeo/densities.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "spectral.hpp"

namespace lpgeo {

Density::Density(SampledFunction rho) : rho_(std::move(rho)) {
  require(rho_.grid().is_circle(), ErrorCode::invalid_argument, "densities live on circle grids");
  require(rho_.min() > 0.0, ErrorCode::invalid_argument, "density must be strictly positive");
}

ProbabilityDensity::ProbabilityDensity(SampledFunction rho, const Tolerances& tol)
    : Density(std::move(rho)) {
  if (std::abs(mass() - 1.0) > tol.mass)
    fail(ErrorCode::invalid_argument, "probability density has mass " + std::to_string(mass()));
}

ProbabilityDensity ProbabilityDensity::normalized(const SampledFunction& rho) {
  return ProbabilityDensity((1.0 / integrate(rho)) * rho);
}

void require_zero_mass(const SampledFunction& a, const Tolerances& tol) {
  require(std::abs(integrate(a)) <= tol.mass, ErrorCode::invalid_argument,
          "tangent to Prob must have zero total mass");
}

double lp_norm(const SampledFunction& f, PExponent p) {
  if (p.is_infinite()) return f.max_abs();
  const double q = p.value();
  return std::pow(integrate(f.map([q](double v) { return std::pow(std::abs(v), q); })), 1.0 / q);
}

double lp_fisher_norm(const Density& mu, const SampledFunction& a, PExponent p) {
  mu.rho().require_same_grid(a);
  const auto ratio = a / mu.rho();
  if (p.is_infinite()) return ratio.max_abs();
  const double q = p.value();
  const auto integrand = ratio.zip(mu.rho(), [q](double r, double m) { return std::pow(std::abs(r), q) * m; });
  return std::pow(integrate(integrand), 1.0 / q);
}

Density geodesic_explicit(const Density& rho0, const Density& rho1, double t, double p) {
  require(t >= 0.0 && t <= 1.0, ErrorCode::invalid_argument, "geodesic time must lie in [0, 1]");
  (void)PExponent::finite(p);
  if (t == 0.0) return rho0;
  if (t == 1.0) return rho1;
  return Density(rho1.rho().zip(rho0.rho(), [t, p](double b, double a) {
    return std::pow(t * std::pow(b, 1.0 / p) + (1.0 - t) * std::pow(a, 1.0 / p), p);
  }));
}

DensityPath sample_explicit_geodesic(const Density& rho0, const Density& rho1, double p, double t0,
                                     double dt, std::size_t count) {
  DensityPath path{t0, dt, {}};
  path.slices.reserve(count);
  for (std::size_t k = 0; k < count; ++k)
    path.slices.push_back(geodesic_explicit(rho0, rho1, t0 + static_cast<double>(k) * dt, p));
  return path;
}

double SpaceTimeField::sup() const {
  double m = 0.0;
  for (const auto& s : slices) m = std::max(m, s.max_abs());
  return m;
}

namespace {

void require_path(const DensityPath& path) {
  require(path.slices.size() >= 5, ErrorCode::too_few_slices, "residuals need at least 5 time slices");
  require(path.dt > 0.0, ErrorCode::invalid_argument, "time step must be positive");
  for (const auto& s : path.slices) path.slices.front().rho().require_same_grid(s.rho());
}

void require_residual_exponent(double p) {
  require(p > 1.0 && std::isfinite(p), ErrorCode::unsupported_exponent,
          "geodesic residuals need 1 < p < infinity");
}

// w = rho_t/rho and w_t = rho_tt/rho - w^2 at interior slice k, by central
// differences. The second form avoids differencing the quotient.
struct Velocity {
  SampledFunction w;
  SampledFunction wt;
};

Velocity velocity(const DensityPath& path, std::size_t k) {
  const auto& prev = path.slices[k - 1].rho();
  const auto& cur = path.slices[k].rho();
  const auto& next = path.slices[k + 1].rho();
  const double dt = path.dt;
  std::vector<double> w(cur.size());
  std::vector<double> wt(cur.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double rt = (next[i] - prev[i]) / (2.0 * dt);
    const double rtt = (next[i] - 2.0 * cur[i] + prev[i]) / (dt * dt);
    w[i] = rt / cur[i];
    wt[i] = rtt / cur[i] - w[i] * w[i];
  }
  return {SampledFunction(cur.grid(), std::move(w)), SampledFunction(cur.grid(), std::move(wt))};
}

// Fourth-order periodic first derivative, used when masking breaks the
// smoothness the spectral derivative relies on.
std::vector<double> periodic_fd(std::span<const double> v, double h) {
  const auto n = static_cast<std::ptrdiff_t>(v.size());
  auto at = [&](std::ptrdiff_t i) { return v[static_cast<std::size_t>(((i % n) + n) % n)]; };
  std::vector<double> out(v.size());
  for (std::ptrdiff_t i = 0; i < n; ++i)
    out[static_cast<std::size_t>(i)] = (at(i - 2) - 8.0 * at(i - 1) + 8.0 * at(i + 1) - at(i + 2)) / (12.0 * h);
  return out;
}

}  // namespace

SpaceTimeField dens_geodesic_residual(const DensityPath& path, double p) {
  require_path(path);
  require_residual_exponent(p);
  SpaceTimeField out;
  for (std::size_t k = 1; k + 1 < path.slices.size(); ++k) {
    const auto v = velocity(path, k);
    out.times.push_back(path.t0 + static_cast<double>(k) * path.dt);
    out.slices.push_back(v.wt.zip(v.w, [p](double wt, double w) { return wt + w * w / p; }));
  }
  return out;
}

SpaceTimeField prob_geodesic_residual(const DensityPath& path, double p, const Tolerances& tol) {
  require_path(path);
  require_residual_exponent(p);
  SpaceTimeField out;
  const std::size_t n = path.slices.front().rho().size();
  const auto ni = static_cast<std::ptrdiff_t>(n);
  for (std::size_t k = 1; k + 1 < path.slices.size(); ++k) {
    const auto v = velocity(path, k);
    std::vector<bool> masked(n, false);
    std::vector<double> q(n);
    bool any = false;
    for (std::size_t i = 0; i < n; ++i) {
      const double w = v.w[i];
      const double aw = std::abs(w);
      if (p < 2.0 && aw < tol.mask_delta) {
        masked[i] = true;
        any = true;
        q[i] = 0.0;
        continue;
      }
      q[i] = std::pow(aw, p - 2.0) * v.wt[i] + std::pow(aw, p) / p;
    }
    std::vector<double> r;
    std::size_t count = 0;
    if (!any) {
      r = detail::spectral_derivative(q, 1, 1.0);
    } else {
      r = periodic_fd(q, v.w.grid().spacing());
      for (std::ptrdiff_t i = 0; i < ni; ++i) {
        bool touched = false;
        for (std::ptrdiff_t d = -2; d <= 2; ++d)
          touched = touched || masked[static_cast<std::size_t>(((i + d) % ni + ni) % ni)];
        if (touched) {
          r[static_cast<std::size_t>(i)] = 0.0;
          ++count;
        }
      }
      if (2 * count > n) fail(ErrorCode::all_masked, "more than half of the nodes are masked");
    }
    out.masked += count;
    out.times.push_back(path.t0 + static_cast<double>(k) * path.dt);
    out.slices.push_back(SampledFunction(v.w.grid(), std::move(r)));
  }
  return out;
}

SpaceTimeField chern_geodesic_residual(const DensityPath& path, double p) {
  require_path(path);
  require(p > 1.0 && p <= 2.0, ErrorCode::unsupported_exponent,
          "the Chern-connection residual is only defined for 1 < p <= 2");
  SpaceTimeField out;
  for (std::size_t k = 1; k + 1 < path.slices.size(); ++k) {
    const auto v = velocity(path, k);
    const auto& mu = path.slices[k].rho();
    const double num = integrate(v.w * v.w * mu);
    const auto w2p = v.w.map([p](double w) { return std::pow(std::abs(w), 2.0 - p); });
    const double den = integrate(w2p * mu);
    const double c = num == 0.0 ? 0.0 : (p - 1.0) / p * num / den;
    std::vector<double> r(mu.size());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = v.wt[i] + v.w[i] * v.w[i] / p + c * w2p[i];
    out.times.push_back(path.t0 + static_cast<double>(k) * path.dt);
    out.slices.push_back(SampledFunction(mu.grid(), std::move(r)));
  }
  return out;
}

SampledFunction flat_embed(const Density& mu, double p) {
  (void)PExponent::finite(p);
  return mu.rho().map([p](double r) { return p * std::pow(r, 1.0 / p); });
}

Density flat_embed_inverse(const SampledFunction& f, double p) {
  (void)PExponent::finite(p);
  require(f.min() > 0.0, ErrorCode::not_in_image, "flat embedding image consists of positive functions");
  return Density(f.map([p](double v) { return std::pow(v / p, p); }));
}

SampledFunction flat_embed_differential(const Density& mu, const SampledFunction& a, double p) {
  (void)PExponent::finite(p);
  return a.zip(mu.rho(), [p](double x, double r) { return x * std::pow(r, 1.0 / p - 1.0); });
}

SampledFunction map_derivative(const SampledFunction& map) {
  return derivative(map_displacement(map), 1) + 1.0;
}

SampledFunction pullback(const SampledFunction& rho, const SampledFunction& map) {
  return compose(rho, map) * map_derivative(map);
}

SampledFunction moser_map_1d(const ProbabilityDensity& mu, const ProbabilityDensity& nu,
                             const Tolerances& tol) {
  mu.rho().require_same_grid(nu.rho());
  const auto F = cumulative_integral(mu.rho(), tol);
  const auto G = cumulative_integral(nu.rho(), tol);
  std::vector<double> out(F.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = solve_map(G, F[i], tol);
  return SampledFunction(F.grid(), std::move(out));
}

}  // namespace lpgeo
