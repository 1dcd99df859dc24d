#pragma once

// Pointwise exterior algebra of forms on a flat 4-torus grid, the L^p metric
// and L^2 inner product on symplectic forms, the projection omega -> omega^2
// and the flat-torus harmonic part.

#include <array>
#include <cstddef>
#include <functional>
#include <vector>

#include "lpgeo/grid.hpp"

namespace lpgeo {

/// Uniform N^4 grid on [0,1)^4, first coordinate slowest.
class T4Grid {
 public:
  explicit T4Grid(std::size_t n);

  std::size_t n() const noexcept { return n_; }
  std::size_t size() const noexcept { return n_ * n_ * n_ * n_; }
  std::array<double, 4> node(std::size_t k) const;
  bool operator==(const T4Grid& o) const noexcept { return n_ == o.n_; }

 private:
  std::size_t n_;
};

using T4Field = std::vector<double>;

/// Sum of a_i dx_i.
struct Form1OnT4 {
  T4Grid grid;
  std::array<T4Field, 4> a;

  static Form1OnT4 sample(const T4Grid& g, const std::function<std::array<double, 4>(const std::array<double, 4>&)>& fn);
};

/// Sum over i < j of c_ij dx_i ^ dx_j, coefficients in the order 12, 13, 14,
/// 23, 24, 34.
class Form2OnT4 {
 public:
  Form2OnT4(T4Grid grid, std::array<T4Field, 6> c);

  static Form2OnT4 constant(const T4Grid& g, const std::array<double, 6>& c);
  static Form2OnT4 sample(const T4Grid& g,
                          const std::function<std::array<double, 6>(const std::array<double, 4>&)>& fn);
  /// dx1^dx2 + dx3^dx4.
  static Form2OnT4 standard(const T4Grid& g);

  const T4Grid& grid() const noexcept { return grid_; }
  const T4Field& c(std::size_t k) const { return c_[k]; }
  const std::array<T4Field, 6>& coefficients() const noexcept { return c_; }

  /// c12 c34 - c13 c24 + c14 c23 pointwise.
  T4Field pfaffian() const;
  /// sup of the four components of d omega, computed spectrally.
  double closedness_residual() const;

  Form2OnT4 operator+(const Form2OnT4& o) const;
  Form2OnT4 operator-(const Form2OnT4& o) const;
  friend Form2OnT4 operator*(double s, const Form2OnT4& f);

  void require_same_grid(const Form2OnT4& o) const;

 private:
  T4Grid grid_;
  std::array<T4Field, 6> c_;
};

/// Coefficient of dx1^dx2^dx3^dx4.
struct Form4OnT4 {
  T4Grid grid;
  T4Field v;

  double integral() const;
};

Form2OnT4 exterior_derivative(const Form1OnT4& sigma);
Form4OnT4 wedge22(const Form2OnT4& a, const Form2OnT4& b);

/// (beta ^ omega0) / (omega0 ^ omega0) pointwise. Degenerate if the
/// Pfaffian of omega0 falls below tol.pfaffian anywhere.
T4Field symplectic_ratio(const Form2OnT4& omega0, const Form2OnT4& beta, const Tolerances& tol = {});

/// (integral |ratio|^p omega0^2/2)^(1/p).
double lp_symplectic_norm(const Form2OnT4& omega0, const Form2OnT4& beta, double p, const Tolerances& tol = {});
/// integral ratio(alpha) ratio(beta) omega0^2/2.
double l2_symplectic_inner(const Form2OnT4& omega0, const Form2OnT4& alpha, const Form2OnT4& beta,
                           const Tolerances& tol = {});

struct PushforwardCheck {
  double lhs;
  double rhs;
};

/// lhs: L^p Fisher norm of the tangent 2 beta ^ omega0 / 2 at the density
/// omega0^2/2. rhs: 2 lp_symplectic_norm. Requires unit volume.
PushforwardCheck projection_pushforward_check(const Form2OnT4& omega0, const Form2OnT4& beta, double p,
                                              const Tolerances& tol = {});

/// Constant form of coefficient means. NotClosed above tol.closedness.
Form2OnT4 harmonic_part(const Form2OnT4& omega, const Tolerances& tol = {});

/// Pullback by (x1..x4) -> (phi1(x1), .., phi4(x4)), each a circle lift on
/// an N-point circle grid.
Form2OnT4 pullback(const Form2OnT4& omega, const std::array<SampledFunction, 4>& phi, const Tolerances& tol = {});

}  // namespace lpgeo
