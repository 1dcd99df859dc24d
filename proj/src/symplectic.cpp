#include "lpgeo/symplectic.hpp"

#include <algorithm>
#include <cmath>

#include "lpgeo/exponent.hpp"
#include "spectral.hpp"

namespace lpgeo {

namespace {

constexpr std::array<std::array<int, 2>, 6> kPairs{{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

int pair_index(int i, int j) {
  for (int k = 0; k < 6; ++k)
    if (kPairs[k][0] == i && kPairs[k][1] == j) return k;
  return -1;
}

T4Field partial(const T4Grid& g, const T4Field& f, std::size_t axis) {
  const std::array<std::size_t, 4> ext{g.n(), g.n(), g.n(), g.n()};
  return detail::spectral_partial(f, ext, axis, 1, 1.0);
}

// Neumaier-compensated, so a constant field has its own value as mean.
double mean(const T4Field& f) {
  double s = 0.0;
  double comp = 0.0;
  for (double x : f) {
    const double t = s + x;
    comp += std::abs(s) >= std::abs(x) ? (s - t) + x : (x - t) + s;
    s = t;
  }
  return (s + comp) / static_cast<double>(f.size());
}

void require_finite(const T4Field& f, std::size_t expected) {
  require(f.size() == expected, ErrorCode::invalid_argument, "coefficient size does not match the grid");
  for (double x : f) require(std::isfinite(x), ErrorCode::invalid_argument, "non-finite coefficient");
}

}  // namespace

T4Grid::T4Grid(std::size_t n) : n_(n) {
  require(n >= 4, ErrorCode::invalid_argument, "4-torus grids need at least 4 nodes per axis");
}

std::array<double, 4> T4Grid::node(std::size_t k) const {
  std::array<double, 4> x{};
  for (int a = 3; a >= 0; --a) {
    x[a] = static_cast<double>(k % n_) / static_cast<double>(n_);
    k /= n_;
  }
  return x;
}

Form1OnT4 Form1OnT4::sample(const T4Grid& g,
                            const std::function<std::array<double, 4>(const std::array<double, 4>&)>& fn) {
  Form1OnT4 s{g, {}};
  for (auto& a : s.a) a.resize(g.size());
  for (std::size_t k = 0; k < g.size(); ++k) {
    const auto v = fn(g.node(k));
    for (int i = 0; i < 4; ++i) s.a[i][k] = v[i];
  }
  return s;
}

Form2OnT4::Form2OnT4(T4Grid grid, std::array<T4Field, 6> c) : grid_(grid), c_(std::move(c)) {
  for (const auto& f : c_) require_finite(f, grid_.size());
}

Form2OnT4 Form2OnT4::constant(const T4Grid& g, const std::array<double, 6>& c) {
  std::array<T4Field, 6> f;
  for (int k = 0; k < 6; ++k) f[k].assign(g.size(), c[k]);
  return Form2OnT4(g, std::move(f));
}

Form2OnT4 Form2OnT4::sample(const T4Grid& g,
                            const std::function<std::array<double, 6>(const std::array<double, 4>&)>& fn) {
  std::array<T4Field, 6> f;
  for (auto& c : f) c.resize(g.size());
  for (std::size_t k = 0; k < g.size(); ++k) {
    const auto v = fn(g.node(k));
    for (int i = 0; i < 6; ++i) f[i][k] = v[i];
  }
  return Form2OnT4(g, std::move(f));
}

Form2OnT4 Form2OnT4::standard(const T4Grid& g) { return constant(g, {1, 0, 0, 0, 0, 1}); }

T4Field Form2OnT4::pfaffian() const {
  T4Field out(grid_.size());
  for (std::size_t k = 0; k < out.size(); ++k)
    out[k] = c_[0][k] * c_[5][k] - c_[1][k] * c_[4][k] + c_[2][k] * c_[3][k];
  return out;
}

double Form2OnT4::closedness_residual() const {
  double worst = 0.0;
  // (d omega)_ijk = d_i c_jk - d_j c_ik + d_k c_ij.
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      for (int k = j + 1; k < 4; ++k) {
        const auto a = partial(grid_, c_[pair_index(j, k)], i);
        const auto b = partial(grid_, c_[pair_index(i, k)], j);
        const auto c = partial(grid_, c_[pair_index(i, j)], k);
        for (std::size_t m = 0; m < a.size(); ++m) worst = std::max(worst, std::abs(a[m] - b[m] + c[m]));
      }
  return worst;
}

Form2OnT4 Form2OnT4::operator+(const Form2OnT4& o) const {
  require_same_grid(o);
  auto c = c_;
  for (int k = 0; k < 6; ++k)
    for (std::size_t m = 0; m < c[k].size(); ++m) c[k][m] += o.c_[k][m];
  return Form2OnT4(grid_, std::move(c));
}

Form2OnT4 Form2OnT4::operator-(const Form2OnT4& o) const { return *this + (-1.0) * o; }

Form2OnT4 operator*(double s, const Form2OnT4& f) {
  auto c = f.c_;
  for (auto& field : c)
    for (double& x : field) x *= s;
  return Form2OnT4(f.grid_, std::move(c));
}

void Form2OnT4::require_same_grid(const Form2OnT4& o) const {
  require(grid_ == o.grid_, ErrorCode::grid_mismatch, "forms live on different grids");
}

double Form4OnT4::integral() const { return mean(v); }

Form2OnT4 exterior_derivative(const Form1OnT4& sigma) {
  std::array<std::array<T4Field, 4>, 4> d;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (i != j) d[i][j] = partial(sigma.grid, sigma.a[j], i);
  std::array<T4Field, 6> c;
  for (int k = 0; k < 6; ++k) {
    const auto [i, j] = kPairs[k];
    c[k].resize(sigma.grid.size());
    for (std::size_t m = 0; m < c[k].size(); ++m) c[k][m] = d[i][j][m] - d[j][i][m];
  }
  return Form2OnT4(sigma.grid, std::move(c));
}

Form4OnT4 wedge22(const Form2OnT4& a, const Form2OnT4& b) {
  a.require_same_grid(b);
  T4Field v(a.grid().size());
  for (std::size_t m = 0; m < v.size(); ++m)
    // Grouped in symmetric pairs so that wedge22(a, b) == wedge22(b, a) bitwise.
    v[m] = (a.c(0)[m] * b.c(5)[m] + a.c(5)[m] * b.c(0)[m]) - (a.c(1)[m] * b.c(4)[m] + a.c(4)[m] * b.c(1)[m]) +
           (a.c(2)[m] * b.c(3)[m] + a.c(3)[m] * b.c(2)[m]);
  return {a.grid(), std::move(v)};
}

T4Field symplectic_ratio(const Form2OnT4& omega0, const Form2OnT4& beta, const Tolerances& tol) {
  omega0.require_same_grid(beta);
  for (double pf : omega0.pfaffian())
    if (std::abs(pf) < tol.pfaffian) fail(ErrorCode::degenerate, "reference form is degenerate");
  const auto num = wedge22(beta, omega0);
  const auto den = wedge22(omega0, omega0);
  T4Field r(num.v.size());
  for (std::size_t m = 0; m < r.size(); ++m) r[m] = num.v[m] / den.v[m];
  return r;
}

namespace {

T4Field volume(const Form2OnT4& omega0) {
  auto v = wedge22(omega0, omega0).v;
  for (double& x : v) x = 0.5 * std::abs(x);
  return v;
}

}  // namespace

double lp_symplectic_norm(const Form2OnT4& omega0, const Form2OnT4& beta, double p, const Tolerances& tol) {
  (void)PExponent::finite(p);
  const auto r = symplectic_ratio(omega0, beta, tol);
  const auto v = volume(omega0);
  double s = 0.0;
  for (std::size_t m = 0; m < r.size(); ++m) s += std::pow(std::abs(r[m]), p) * v[m];
  return std::pow(s / static_cast<double>(r.size()), 1.0 / p);
}

double l2_symplectic_inner(const Form2OnT4& omega0, const Form2OnT4& alpha, const Form2OnT4& beta,
                           const Tolerances& tol) {
  const auto ra = symplectic_ratio(omega0, alpha, tol);
  const auto rb = symplectic_ratio(omega0, beta, tol);
  const auto v = volume(omega0);
  double s = 0.0;
  for (std::size_t m = 0; m < v.size(); ++m) s += ra[m] * rb[m] * v[m];
  return s / static_cast<double>(v.size());
}

PushforwardCheck projection_pushforward_check(const Form2OnT4& omega0, const Form2OnT4& beta, double p,
                                              const Tolerances& tol) {
  (void)PExponent::finite(p);
  (void)symplectic_ratio(omega0, beta, tol);
  const auto mu = volume(omega0);
  require(std::abs(mean(mu) - 1.0) <= tol.mass, ErrorCode::invalid_argument,
          "reference form must have unit volume");
  // Derivative of omega -> omega^2/2 in direction beta: 2 beta ^ omega / 2.
  const auto a = wedge22(beta, omega0).v;
  double s = 0.0;
  for (std::size_t m = 0; m < mu.size(); ++m) s += std::pow(std::abs(a[m] / mu[m]), p) * mu[m];
  const double lhs = std::pow(s / static_cast<double>(mu.size()), 1.0 / p);
  return {lhs, 2.0 * lp_symplectic_norm(omega0, beta, p, tol)};
}

Form2OnT4 harmonic_part(const Form2OnT4& omega, const Tolerances& tol) {
  if (omega.closedness_residual() > tol.closedness) fail(ErrorCode::not_closed, "form is not closed");
  std::array<double, 6> c{};
  for (int k = 0; k < 6; ++k) c[k] = mean(omega.c(k));
  return Form2OnT4::constant(omega.grid(), c);
}

Form2OnT4 pullback(const Form2OnT4& omega, const std::array<SampledFunction, 4>& phi, const Tolerances& tol) {
  const T4Grid& g = omega.grid();
  const std::size_t n = g.n();
  const Grid circle = Grid::circle(n);
  std::array<SampledFunction, 4> jac{phi[0], phi[1], phi[2], phi[3]};
  for (int a = 0; a < 4; ++a) {
    require(phi[a].grid() == circle, ErrorCode::grid_mismatch, "axis map does not match the 4-torus grid");
    require_monotone(phi[a]);
    jac[a] = derivative(phi[a] - identity_map(circle), 1) + 1.0;
  }
  std::array<T4Field, 6> c = omega.coefficients();
  for (auto& field : c) {
    // Interpolate along each axis in turn at phi_a(x_a).
    for (std::size_t a = 0; a < 4; ++a) {
      std::size_t stride = 1;
      for (std::size_t b = a + 1; b < 4; ++b) stride *= n;
      const std::size_t block = stride * n;
      std::vector<double> line(n);
      for (std::size_t base = 0; base < field.size(); base += block)
        for (std::size_t off = 0; off < stride; ++off) {
          for (std::size_t i = 0; i < n; ++i) line[i] = field[base + off + i * stride];
          const auto moved = compose(SampledFunction(circle, line), phi[a], tol);
          for (std::size_t i = 0; i < n; ++i) field[base + off + i * stride] = moved[i];
        }
    }
  }
  for (int k = 0; k < 6; ++k) {
    const auto [i, j] = kPairs[k];
    for (std::size_t m = 0; m < g.size(); ++m) {
      const auto x = g.node(m);
      const auto ii = static_cast<std::size_t>(std::lround(x[i] * static_cast<double>(n)));
      const auto jj = static_cast<std::size_t>(std::lround(x[j] * static_cast<double>(n)));
      c[k][m] *= jac[i][ii] * jac[j][jj];
    }
  }
  return Form2OnT4(g, std::move(c));
}

}  // namespace lpgeo
