#pragma once

// Sampled-function calculus on uniform grids: the periodic unit circle and a
// truncated symmetric interval of the real line.

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "lpgeo/error.hpp"
#include "lpgeo/tolerances.hpp"

namespace lpgeo {

enum class GridKind { circle, line };

/// Uniform grid. Circle grids cover [0,1) without the right endpoint; line
/// grids cover [-L, L] including both endpoints.
class Grid {
 public:
  static Grid circle(std::size_t n);
  static Grid line(double half_width, std::size_t n);

  GridKind kind() const noexcept { return kind_; }
  bool is_circle() const noexcept { return kind_ == GridKind::circle; }
  std::size_t size() const noexcept { return n_; }
  double half_width() const noexcept { return half_width_; }
  double spacing() const noexcept { return h_; }
  double left() const noexcept { return kind_ == GridKind::circle ? 0.0 : -half_width_; }
  double node(std::size_t i) const noexcept { return left() + static_cast<double>(i) * h_; }
  /// Period of the trigonometric extension: 1 on the circle, n*h on a line.
  double period() const noexcept { return static_cast<double>(n_) * h_; }
  std::vector<double> nodes() const;

  bool operator==(const Grid& other) const noexcept {
    return kind_ == other.kind_ && n_ == other.n_ && half_width_ == other.half_width_;
  }

 private:
  Grid(GridKind kind, std::size_t n, double half_width, double h)
      : kind_(kind), n_(n), half_width_(half_width), h_(h) {}

  GridKind kind_;
  std::size_t n_;
  double half_width_;
  double h_;
};

/// Real samples of a smooth function on a Grid. Immutable; all samples finite.
class SampledFunction {
 public:
  SampledFunction(Grid grid, std::vector<double> values);

  template <class Fn>
  static SampledFunction sample(const Grid& grid, Fn&& fn) {
    std::vector<double> v(grid.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = fn(grid.node(i));
    return SampledFunction(grid, std::move(v));
  }
  static SampledFunction constant(const Grid& grid, double c);

  const Grid& grid() const noexcept { return grid_; }
  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const noexcept { return values_[i]; }

  double min() const;
  double max() const;
  double max_abs() const;

  template <class Fn>
  SampledFunction map(Fn&& fn) const {
    std::vector<double> v(values_.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = fn(values_[i]);
    return SampledFunction(grid_, std::move(v));
  }

  /// Pointwise combination of two functions on the same grid.
  template <class Fn>
  SampledFunction zip(const SampledFunction& other, Fn&& fn) const {
    require_same_grid(other);
    std::vector<double> v(values_.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = fn(values_[i], other.values_[i]);
    return SampledFunction(grid_, std::move(v));
  }

  void require_same_grid(const SampledFunction& other) const;

 private:
  Grid grid_;
  std::vector<double> values_;
};

SampledFunction operator+(const SampledFunction& a, const SampledFunction& b);
SampledFunction operator-(const SampledFunction& a, const SampledFunction& b);
SampledFunction operator*(const SampledFunction& a, const SampledFunction& b);
SampledFunction operator/(const SampledFunction& a, const SampledFunction& b);
SampledFunction operator*(double s, const SampledFunction& a);
SampledFunction operator+(const SampledFunction& a, double c);
SampledFunction operator-(const SampledFunction& a);

/// Quadrature over the whole grid: periodic trapezoid sum on the circle,
/// composite trapezoid on the line. Fixed summation order.
double integrate(const SampledFunction& f);

/// Derivative of order 1..4. Circle: Fourier spectral differentiation.
/// Line: fourth-order central differences; samples past the ends repeat the
/// edge value, which the decay invariant makes negligible (DecayViolation
/// otherwise).
SampledFunction derivative(const SampledFunction& f, int order, const Tolerances& tol = {});

/// Line-grid derivative of a function that decays on the left but may settle
/// to a constant on the right (a displacement). Uses constant extension past
/// both ends; on circle grids it is the spectral derivative.
SampledFunction displacement_derivative(const SampledFunction& f, int order,
                                        const Tolerances& tol = {});

/// Value of f between nodes: trigonometric interpolation on the circle,
/// 8-point Lagrange on the line with constant extension outside [-L, L].
double interpolate(const SampledFunction& f, double x);

/// A "map" is a SampledFunction whose values are phi(x_i). On the circle they
/// are a degree-one lift (phi(x+1) = phi(x)+1); on the line the displacement
/// phi(x)-x is extended by its edge values.
double evaluate_map(const SampledFunction& map, double y);
SampledFunction identity_map(const Grid& grid);
SampledFunction map_displacement(const SampledFunction& map);
/// Throws NotMonotone unless every forward difference (with wrap on the
/// circle) is positive.
void require_monotone(const SampledFunction& map);

/// f o phi sampled at the nodes.
SampledFunction compose(const SampledFunction& f, const SampledFunction& map,
                        const Tolerances& tol = {});

/// Map composition outer o inner; interpolates the displacement of outer so
/// that degree-one lifts on the circle compose correctly.
SampledFunction compose_maps(const SampledFunction& outer, const SampledFunction& inner,
                             const Tolerances& tol = {});

/// Solves phi(y) = target by bracketing on the samples and bisecting the
/// interpolant down to tol.bisection.
double solve_map(const SampledFunction& map, double target, const Tolerances& tol = {});

/// Sampled inverse map on the same grid.
SampledFunction invert_monotone(const SampledFunction& map, const Tolerances& tol = {});

/// F(x) = integral of g from the left edge (0 on the circle, -L on the line)
/// to x. Spectrally accurate; on the line g must decay at both ends.
SampledFunction cumulative_integral(const SampledFunction& g, const Tolerances& tol = {});

bool decays(const SampledFunction& f, const Tolerances& tol = {});
bool decays_left(const SampledFunction& f, const Tolerances& tol = {});
void require_decay(const SampledFunction& f, const Tolerances& tol, const char* what);

}  // namespace lpgeo
