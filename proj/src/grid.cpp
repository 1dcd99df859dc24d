#include "lpgeo/grid.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "spectral.hpp"

namespace lpgeo {

Grid Grid::circle(std::size_t n) {
  require(n >= 16, ErrorCode::invalid_argument, "circle grid needs at least 16 points");
  return Grid(GridKind::circle, n, 0.0, 1.0 / static_cast<double>(n));
}

Grid Grid::line(double half_width, std::size_t n) {
  require(n >= 16, ErrorCode::invalid_argument, "line grid needs at least 16 points");
  require(std::isfinite(half_width) && half_width > 0.0, ErrorCode::invalid_argument,
          "line grid half-width must be positive");
  return Grid(GridKind::line, n, half_width, 2.0 * half_width / static_cast<double>(n - 1));
}

std::vector<double> Grid::nodes() const {
  std::vector<double> x(n_);
  for (std::size_t i = 0; i < n_; ++i) x[i] = node(i);
  return x;
}

SampledFunction::SampledFunction(Grid grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size())
    fail(ErrorCode::invalid_argument, "sample count " + std::to_string(values_.size()) +
                                          " does not match grid size " +
                                          std::to_string(grid_.size()));
  for (double v : values_)
    require(std::isfinite(v), ErrorCode::invalid_argument, "sampled values must be finite");
}

SampledFunction SampledFunction::constant(const Grid& grid, double c) {
  return SampledFunction(grid, std::vector<double>(grid.size(), c));
}

double SampledFunction::min() const { return *std::min_element(values_.begin(), values_.end()); }
double SampledFunction::max() const { return *std::max_element(values_.begin(), values_.end()); }
double SampledFunction::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

void SampledFunction::require_same_grid(const SampledFunction& other) const {
  require(grid_ == other.grid_, ErrorCode::grid_mismatch, "operands live on different grids");
}

SampledFunction operator+(const SampledFunction& a, const SampledFunction& b) {
  return a.zip(b, [](double x, double y) { return x + y; });
}
SampledFunction operator-(const SampledFunction& a, const SampledFunction& b) {
  return a.zip(b, [](double x, double y) { return x - y; });
}
SampledFunction operator*(const SampledFunction& a, const SampledFunction& b) {
  return a.zip(b, [](double x, double y) { return x * y; });
}
SampledFunction operator/(const SampledFunction& a, const SampledFunction& b) {
  return a.zip(b, [](double x, double y) { return x / y; });
}
SampledFunction operator*(double s, const SampledFunction& a) {
  return a.map([s](double x) { return s * x; });
}
SampledFunction operator+(const SampledFunction& a, double c) {
  return a.map([c](double x) { return x + c; });
}
SampledFunction operator-(const SampledFunction& a) {
  return a.map([](double x) { return -x; });
}

double integrate(const SampledFunction& f) {
  const auto v = f.values();
  double sum = 0.0;
  for (double x : v) sum += x;
  if (!f.grid().is_circle()) sum -= 0.5 * (v.front() + v.back());
  return sum * f.grid().spacing();
}

namespace {

std::size_t edge_count(const Grid& g, const Tolerances& tol) {
  const auto k = static_cast<std::size_t>(std::ceil(tol.decay_fraction * static_cast<double>(g.size())));
  return std::clamp<std::size_t>(k, 1, g.size());
}

double edge_max(std::span<const double> v, std::size_t begin, std::size_t end) {
  double m = 0.0;
  for (std::size_t i = begin; i < end; ++i) m = std::max(m, std::abs(v[i]));
  return m;
}

// Fourth-order central stencils, offsets -3..3.
constexpr std::array<std::array<double, 7>, 4> kStencil{{
    {0.0, 1.0 / 12, -8.0 / 12, 0.0, 8.0 / 12, -1.0 / 12, 0.0},
    {0.0, -1.0 / 12, 16.0 / 12, -30.0 / 12, 16.0 / 12, -1.0 / 12, 0.0},
    {1.0 / 8, -1.0, 13.0 / 8, 0.0, -13.0 / 8, 1.0, -1.0 / 8},
    {-1.0 / 6, 2.0, -13.0 / 2, 28.0 / 3, -13.0 / 2, 2.0, -1.0 / 6},
}};

SampledFunction line_fd(const SampledFunction& f, int order) {
  const auto v = f.values();
  const auto n = static_cast<std::ptrdiff_t>(v.size());
  const double scale = std::pow(f.grid().spacing(), -order);
  const auto& w = kStencil[static_cast<std::size_t>(order - 1)];
  std::vector<double> out(v.size());
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    double acc = 0.0;
    for (std::ptrdiff_t k = -3; k <= 3; ++k) {
      const double c = w[static_cast<std::size_t>(k + 3)];
      if (c == 0.0) continue;
      const std::ptrdiff_t j = std::clamp<std::ptrdiff_t>(i + k, 0, n - 1);
      acc += c * v[static_cast<std::size_t>(j)];
    }
    out[static_cast<std::size_t>(i)] = acc * scale;
  }
  return SampledFunction(f.grid(), std::move(out));
}

void require_order(int order) {
  require(order >= 1 && order <= 4, ErrorCode::invalid_argument, "derivative order must be 1..4");
}

double trig_interpolate(std::span<const double> v, double x) {
  const std::size_t n = v.size();
  const double h = 1.0 / static_cast<double>(n);
  double r = x - std::floor(x);
  const bool even = n % 2 == 0;
  double num = 0.0;
  double den = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double s = std::sin(std::numbers::pi * (r - static_cast<double>(j) * h));
    if (std::abs(s) < 1e-14) return v[j];
    double w = even ? std::cos(std::numbers::pi * (r - static_cast<double>(j) * h)) / s : 1.0 / s;
    if (j % 2 == 1) w = -w;
    num += w * v[j];
    den += w;
  }
  return num / den;
}

double lagrange_interpolate(const Grid& g, std::span<const double> v, double x) {
  const auto n = static_cast<std::ptrdiff_t>(v.size());
  const double h = g.spacing();
  const double s = (x - g.left()) / h;
  if (s <= 0.0) return v.front();
  if (s >= static_cast<double>(n - 1)) return v.back();
  const auto cell = static_cast<std::ptrdiff_t>(std::floor(s));
  const std::ptrdiff_t first = std::clamp<std::ptrdiff_t>(cell - 3, 0, n - 8);
  double acc = 0.0;
  for (std::ptrdiff_t j = first; j < first + 8; ++j) {
    double w = 1.0;
    for (std::ptrdiff_t k = first; k < first + 8; ++k) {
      if (k == j) continue;
      w *= (s - static_cast<double>(k)) / static_cast<double>(j - k);
    }
    acc += w * v[static_cast<std::size_t>(j)];
  }
  return acc;
}

}  // namespace

SampledFunction derivative(const SampledFunction& f, int order, const Tolerances& tol) {
  require_order(order);
  if (f.grid().is_circle())
    return SampledFunction(f.grid(), detail::spectral_derivative(f.values(), order, 1.0));
  require_decay(f, tol, "derivative operand");
  return line_fd(f, order);
}

SampledFunction displacement_derivative(const SampledFunction& f, int order, const Tolerances& tol) {
  require_order(order);
  if (f.grid().is_circle())
    return SampledFunction(f.grid(), detail::spectral_derivative(f.values(), order, 1.0));
  require(decays_left(f, tol), ErrorCode::decay_violation, "displacement must vanish on the left");
  return line_fd(f, order);
}

double interpolate(const SampledFunction& f, double x) {
  if (f.grid().is_circle()) return trig_interpolate(f.values(), x);
  return lagrange_interpolate(f.grid(), f.values(), x);
}

SampledFunction identity_map(const Grid& grid) { return SampledFunction(grid, grid.nodes()); }

SampledFunction map_displacement(const SampledFunction& map) {
  return map - identity_map(map.grid());
}

double evaluate_map(const SampledFunction& map, double y) {
  return y + interpolate(map_displacement(map), y);
}

void require_monotone(const SampledFunction& map) {
  const auto v = map.values();
  for (std::size_t i = 0; i + 1 < v.size(); ++i)
    if (!(v[i + 1] - v[i] > 0.0))
      fail(ErrorCode::not_monotone, "map samples decrease at node " + std::to_string(i));
  if (map.grid().is_circle() && !(v.front() + 1.0 - v.back() > 0.0))
    fail(ErrorCode::not_monotone, "circle map is not a degree-one monotone lift");
}

SampledFunction compose(const SampledFunction& f, const SampledFunction& map, const Tolerances&) {
  f.require_same_grid(map);
  require_monotone(map);
  std::vector<double> out(map.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = interpolate(f, map[i]);
  return SampledFunction(f.grid(), std::move(out));
}

SampledFunction compose_maps(const SampledFunction& outer, const SampledFunction& inner,
                             const Tolerances&) {
  outer.require_same_grid(inner);
  require_monotone(inner);
  const auto disp = map_displacement(outer);
  std::vector<double> out(inner.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = inner[i] + interpolate(disp, inner[i]);
  return SampledFunction(inner.grid(), std::move(out));
}

namespace {

// Root of phi(y) = target inside [a, b] where phi(a) <= target <= phi(b).
double bisect(const SampledFunction& disp, double target, double a, double b, double width) {
  while (b - a > width) {
    const double m = 0.5 * (a + b);
    if (m <= a || m >= b) break;
    if (m + interpolate(disp, m) < target)
      a = m;
    else
      b = m;
  }
  return 0.5 * (a + b);
}

double solve_with(const SampledFunction& map, const SampledFunction& disp, double target,
                  const Tolerances& tol) {
  const Grid& g = map.grid();
  const auto v = map.values();
  const std::size_t n = v.size();
  if (g.is_circle()) {
    const double shift = std::floor(target - v.front());
    const double t = target - shift;
    // Samples extended by one period so that t lies in [v[0], v[0] + 1).
    const auto upper = std::upper_bound(v.begin(), v.end(), t);
    const std::size_t j = static_cast<std::size_t>(upper - v.begin()) - 1;
    const double a = g.node(j);
    const double b = j + 1 < n ? g.node(j + 1) : 1.0;
    return shift + bisect(disp, t, a, b, tol.bisection);
  }
  if (target <= v.front()) {
    require(v.front() - target <= tol.decay, ErrorCode::no_bracket, "target lies left of the map's range");
    return g.node(0) + (target - v.front());
  }
  if (target >= v.back()) {
    require(target - v.back() <= tol.decay, ErrorCode::no_bracket, "target lies right of the map's range");
    return g.node(n - 1) + (target - v.back());
  }
  const auto upper = std::upper_bound(v.begin(), v.end(), target);
  const std::size_t j = static_cast<std::size_t>(upper - v.begin()) - 1;
  return bisect(disp, target, g.node(j), g.node(j + 1), tol.bisection);
}

}  // namespace

double solve_map(const SampledFunction& map, double target, const Tolerances& tol) {
  require_monotone(map);
  return solve_with(map, map_displacement(map), target, tol);
}

SampledFunction invert_monotone(const SampledFunction& map, const Tolerances& tol) {
  require_monotone(map);
  const auto disp = map_displacement(map);
  const Grid& g = map.grid();
  std::vector<double> out(map.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = solve_with(map, disp, g.node(i), tol);
  return SampledFunction(g, std::move(out));
}

SampledFunction cumulative_integral(const SampledFunction& g, const Tolerances& tol) {
  const Grid& grid = g.grid();
  if (!grid.is_circle()) require_decay(g, tol, "cumulative integrand");
  double mean = 0.0;
  for (double v : g.values()) mean += v;
  mean /= static_cast<double>(g.size());
  auto out = detail::spectral_antiderivative(g.values(), grid.period());
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] += mean * static_cast<double>(i) * grid.spacing();
  return SampledFunction(grid, std::move(out));
}

bool decays_left(const SampledFunction& f, const Tolerances& tol) {
  if (f.grid().is_circle()) return true;
  return edge_max(f.values(), 0, edge_count(f.grid(), tol)) <= tol.decay;
}

bool decays(const SampledFunction& f, const Tolerances& tol) {
  if (f.grid().is_circle()) return true;
  const std::size_t n = f.size();
  const std::size_t k = edge_count(f.grid(), tol);
  return edge_max(f.values(), 0, k) <= tol.decay && edge_max(f.values(), n - k, n) <= tol.decay;
}

void require_decay(const SampledFunction& f, const Tolerances& tol, const char* what) {
  if (!decays(f, tol))
    fail(ErrorCode::decay_violation,
         std::string(what) + " does not decay at the ends of the line grid");
}

}  // namespace lpgeo
