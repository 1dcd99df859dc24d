#pragma once

// FFT helpers shared by the periodic calculus (circle, 2-torus, 4-torus).

#include <cstddef>
#include <span>
#include <vector>

namespace lpgeo::detail {

/// d^order/dx^order of a periodic sample sequence with the given period.
/// The Nyquist mode is dropped for odd orders.
std::vector<double> spectral_derivative(std::span<const double> v, int order, double period);

/// Periodic antiderivative of v - mean(v), normalized to vanish at x = 0.
std::vector<double> spectral_antiderivative(std::span<const double> v, double period);

/// Derivative along one axis of a periodic array stored row-major with the
/// given extents (last index fastest).
std::vector<double> spectral_partial(std::span<const double> v, std::span<const std::size_t> extents,
                                     std::size_t axis, int order, double period);

}  // namespace lpgeo::detail
