#include "spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <memory>
#include <mutex>
#include <numbers>

namespace lpgeo::detail {
namespace {

// The FFTW planner is not reentrant; execution on distinct buffers is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwFree {
  void operator()(void* p) const noexcept { fftw_free(p); }
};

class RealTransform {
 public:
  explicit RealTransform(std::size_t n)
      : n_(n),
        real_(static_cast<double*>(fftw_malloc(sizeof(double) * n))),
        spec_(static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * (n / 2 + 1)))) {
    std::lock_guard lock(planner_mutex());
    const int ni = static_cast<int>(n);
    forward_ = fftw_plan_dft_r2c_1d(ni, real_.get(), spec_.get(), FFTW_ESTIMATE);
    backward_ = fftw_plan_dft_c2r_1d(ni, spec_.get(), real_.get(), FFTW_ESTIMATE);
  }
  ~RealTransform() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(forward_);
    fftw_destroy_plan(backward_);
  }
  RealTransform(const RealTransform&) = delete;
  RealTransform& operator=(const RealTransform&) = delete;

  double* real() { return real_.get(); }
  std::complex<double>* spectrum() { return reinterpret_cast<std::complex<double>*>(spec_.get()); }
  std::size_t modes() const { return n_ / 2 + 1; }
  std::size_t size() const { return n_; }

  void forward() { fftw_execute(forward_); }
  // Includes the 1/n normalization.
  void backward() {
    fftw_execute(backward_);
    const double s = 1.0 / static_cast<double>(n_);
    for (std::size_t i = 0; i < n_; ++i) real_.get()[i] *= s;
  }

 private:
  std::size_t n_;
  std::unique_ptr<double, FftwFree> real_;
  std::unique_ptr<fftw_complex, FftwFree> spec_;
  fftw_plan forward_{};
  fftw_plan backward_{};
};

void differentiate_in_place(RealTransform& t, int order, double period) {
  const std::size_t n = t.size();
  const bool has_nyquist = n % 2 == 0;
  const double base = 2.0 * std::numbers::pi / period;
  auto* c = t.spectrum();
  for (std::size_t k = 0; k < t.modes(); ++k) {
    if (has_nyquist && k == n / 2 && order % 2 == 1) {
      c[k] = 0.0;
      continue;
    }
    const std::complex<double> ik(0.0, base * static_cast<double>(k));
    std::complex<double> factor(1.0, 0.0);
    for (int o = 0; o < order; ++o) factor *= ik;
    c[k] *= factor;
  }
}

}  // namespace

std::vector<double> spectral_derivative(std::span<const double> v, int order, double period) {
  RealTransform t(v.size());
  std::copy(v.begin(), v.end(), t.real());
  t.forward();
  differentiate_in_place(t, order, period);
  t.backward();
  return {t.real(), t.real() + v.size()};
}

std::vector<double> spectral_antiderivative(std::span<const double> v, double period) {
  const std::size_t n = v.size();
  RealTransform t(n);
  std::copy(v.begin(), v.end(), t.real());
  t.forward();
  auto* c = t.spectrum();
  const double base = 2.0 * std::numbers::pi / period;
  c[0] = 0.0;
  for (std::size_t k = 1; k < t.modes(); ++k) {
    if (n % 2 == 0 && k == n / 2) {
      c[k] = 0.0;
      continue;
    }
    c[k] /= std::complex<double>(0.0, base * static_cast<double>(k));
  }
  t.backward();
  std::vector<double> out(t.real(), t.real() + n);
  const double origin = out[0];
  for (double& x : out) x -= origin;
  return out;
}

std::vector<double> spectral_partial(std::span<const double> v, std::span<const std::size_t> extents,
                                     std::size_t axis, int order, double period) {
  std::size_t stride = 1;
  for (std::size_t a = extents.size(); a-- > axis + 1;) stride *= extents[a];
  const std::size_t len = extents[axis];
  const std::size_t block = stride * len;
  const std::size_t outer = v.size() / block;

  std::vector<double> out(v.size());
  RealTransform t(len);
  for (std::size_t o = 0; o < outer; ++o) {
    for (std::size_t s = 0; s < stride; ++s) {
      const std::size_t base = o * block + s;
      for (std::size_t i = 0; i < len; ++i) t.real()[i] = v[base + i * stride];
      t.forward();
      differentiate_in_place(t, order, period);
      t.backward();
      for (std::size_t i = 0; i < len; ++i) out[base + i * stride] = t.real()[i];
    }
  }
  return out;
}

}  // namespace lpgeo::detail
