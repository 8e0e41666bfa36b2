#pragma once

#include <span>

#include "blip/lattice.hpp"

// Dense O(N^2) kernels behind band-limited resampling and the position-space
// field diagnostic. The top-level versions are OpenMP-parallel over output
// points; `reference` holds the serial versions kept for testing and for the
// benchmark. Every output element is a serial sum in both, so results do not
// depend on the thread count.
namespace blip::kernels {

/// Arithmetic progression origin + i * step.
struct Progression {
  double origin = 0.0;
  double step = 0.0;

  double at(std::size_t i) const { return origin + static_cast<double>(i) * step; }
};

/// out[m] = sum_j a[j] * exp(i * sign * u_m * v_j) with u_m, v_j progressions.
/// Leading and trailing exact zeros of `a` are skipped.
void exponential_sum(std::span<const Complex> a, Progression v, Progression u, double sign,
                     std::span<Complex> out);

/// out[i] = weight * sum_j kernel[i - j + N - 1] * a[j] for a, out of length N
/// and kernel of length 2N - 1.
void toeplitz_convolution(std::span<const Complex> a, std::span<const double> kernel, double weight,
                          std::span<Complex> out);

namespace reference {

void exponential_sum(std::span<const Complex> a, Progression v, Progression u, double sign,
                     std::span<Complex> out);

void toeplitz_convolution(std::span<const Complex> a, std::span<const double> kernel, double weight,
                          std::span<Complex> out);

}  // namespace reference

}  // namespace blip::kernels
