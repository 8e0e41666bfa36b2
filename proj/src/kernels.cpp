#include "blip/kernels.hpp"

#include <cstdint>

#include "blip/error.hpp"

namespace blip::kernels {
namespace {

struct Range {
  std::size_t begin = 0;
  std::size_t end = 0;
};

Range nonzero_range(std::span<const Complex> a) {
  std::size_t b = 0;
  while (b < a.size() && a[b] == Complex{}) ++b;
  std::size_t e = a.size();
  while (e > b && a[e - 1] == Complex{}) --e;
  return {b, e};
}

// Phase recurrence length before re-anchoring with an exact polar().
constexpr std::size_t kAnchor = 64;

Complex sum_one(std::span<const Complex> a, Range r, Progression v, double phase_rate) {
  Complex acc{};
  Complex w{};
  Complex step = std::polar(1.0, phase_rate * v.step);
  for (std::size_t j = r.begin; j < r.end; ++j) {
    if ((j - r.begin) % kAnchor == 0) w = std::polar(1.0, phase_rate * v.at(j));
    acc += a[j] * w;
    w *= step;
  }
  return acc;
}

void check_sizes(std::span<const Complex> a, std::span<const double> kernel, std::span<Complex> out) {
  if (out.size() != a.size() || kernel.size() + 1 != 2 * a.size()) {
    throw Error(ErrorKind::consistency, "toeplitz_convolution: size mismatch");
  }
}

}  // namespace

void exponential_sum(std::span<const Complex> a, Progression v, Progression u, double sign,
                     std::span<Complex> out) {
  const Range r = nonzero_range(a);
  const auto m_count = static_cast<std::int64_t>(out.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t m = 0; m < m_count; ++m) {
    const auto mu = static_cast<std::size_t>(m);
    out[mu] = sum_one(a, r, v, sign * u.at(mu));
  }
}

void toeplitz_convolution(std::span<const Complex> a, std::span<const double> kernel, double weight,
                          std::span<Complex> out) {
  check_sizes(a, kernel, out);
  const Range r = nonzero_range(a);
  const std::size_t n = a.size();
  const auto n_signed = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n_signed; ++i) {
    const auto iu = static_cast<std::size_t>(i);
    Complex acc{};
    for (std::size_t j = r.begin; j < r.end; ++j) acc += kernel[iu + n - 1 - j] * a[j];
    out[iu] = weight * acc;
  }
}

namespace reference {

void exponential_sum(std::span<const Complex> a, Progression v, Progression u, double sign,
                     std::span<Complex> out) {
  for (std::size_t m = 0; m < out.size(); ++m) {
    Complex acc{};
    for (std::size_t j = 0; j < a.size(); ++j) acc += a[j] * std::polar(1.0, sign * u.at(m) * v.at(j));
    out[m] = acc;
  }
}

void toeplitz_convolution(std::span<const Complex> a, std::span<const double> kernel, double weight,
                          std::span<Complex> out) {
  check_sizes(a, kernel, out);
  const std::size_t n = a.size();
  for (std::size_t i = 0; i < n; ++i) {
    Complex acc{};
    for (std::size_t j = 0; j < n; ++j) acc += kernel[i + n - 1 - j] * a[j];
    out[i] = weight * acc;
  }
}

}  // namespace reference

}  // namespace blip::kernels
