#include "blip/spectral.hpp"

#include <cmath>
#include <numbers>

#include "blip/error.hpp"
#include "fft.hpp"

namespace blip {
namespace {

const double kInvSqrt2Pi = 1.0 / std::sqrt(2.0 * std::numbers::pi);

double alternating(std::size_t j) { return (j % 2 == 0) ? 1.0 : -1.0; }

void check_length(const Grid& grid, std::size_t n) {
  if (n != grid.size()) throw Error(ErrorKind::consistency, "amplitude length does not match the grid");
}

// Contiguous index range [first, last) of a monotone progression lying in [lo, hi).
std::pair<std::size_t, std::size_t> inside(kernels::Progression p, std::size_t count, double lo, double hi) {
  std::size_t first = 0;
  while (first < count && !(p.at(first) >= lo && p.at(first) < hi)) ++first;
  std::size_t last = first;
  while (last < count && p.at(last) >= lo && p.at(last) < hi) ++last;
  return {first, last};
}

// Index range outside of which every sample is below 1e-14 of the largest
// one. Transform round-off leaves a floor near 1e-17 across the whole band;
// the dense sums below skip those tails.
std::pair<std::size_t, std::size_t> significant(std::span<const Complex> a) {
  double peak = 0.0;
  for (Complex z : a) peak = std::max(peak, std::abs(z));
  const double floor = 1e-14 * peak;
  std::size_t b = 0;
  while (b < a.size() && std::abs(a[b]) <= floor) ++b;
  std::size_t e = a.size();
  while (e > b && std::abs(a[e - 1]) <= floor) --e;
  return {b, e};
}

void dense_sum(std::span<const Complex> a, kernels::Progression v, kernels::Progression u, double sgn,
               std::span<Complex> out) {
  const auto [b, e] = significant(a);
  kernels::exponential_sum(a.subspan(b, e - b), {v.at(b), v.step}, u, sgn, out);
}

}  // namespace

ComplexVector to_momentum(const Grid& grid, std::span<const Complex> psi, Direction s) {
  check_length(grid, psi.size());
  const std::size_t n = grid.size();
  ComplexVector a(n);
  for (std::size_t j = 0; j < n; ++j) a[j] = alternating(j) * psi[j];
  ComplexVector f(n);
  detail::forward_dft(a, f);

  const double scale = grid.dx() * kInvSqrt2Pi;
  ComplexVector out(n);
  for (std::size_t m = 0; m < n; ++m) {
    const double phase = grid.k(m) * grid.x_min();
    if (s == Direction::plus) {
      out[m] = scale * std::polar(1.0, -phase) * f[m];
    } else {
      out[m] = scale * std::polar(1.0, phase) * f[(n - m) % n];
    }
  }
  return out;
}

ComplexVector to_position(const Grid& grid, std::span<const Complex> spectrum, Direction s) {
  check_length(grid, spectrum.size());
  const std::size_t n = grid.size();
  const double sgn = sign(s);
  ComplexVector b(n);
  for (std::size_t m = 0; m < n; ++m) b[m] = std::polar(1.0, sgn * grid.k(m) * grid.x_min()) * spectrum[m];
  ComplexVector g(n);
  detail::forward_dft(b, g);

  const double scale = grid.dk() * kInvSqrt2Pi;
  ComplexVector out(n);
  for (std::size_t j = 0; j < n; ++j) {
    const Complex v = (s == Direction::plus) ? g[(n - j) % n] : g[j];
    out[j] = scale * alternating(j) * v;
  }
  return out;
}

SpectralWavePacket to_momentum(const BlipWavePacket& p) {
  SpectralWavePacket sp(p.grid());
  for (Channel ch : kAllChannels) {
    if (!p.has_support(ch)) continue;
    auto spectrum = to_momentum(p.grid(), p[ch], ch.s);
    std::copy(spectrum.begin(), spectrum.end(), sp[ch].begin());
  }
  return sp;
}

BlipWavePacket to_position(const SpectralWavePacket& sp) {
  BlipWavePacket p(sp.grid());
  for (Channel ch : kAllChannels) {
    if (!sp.has_support(ch)) continue;
    auto psi = to_position(sp.grid(), sp[ch], ch.s);
    std::copy(psi.begin(), psi.end(), p[ch].begin());
  }
  return p;
}

ComplexVector spectral_derivative(const BlipWavePacket& p, Channel ch) {
  const Grid& g = p.grid();
  auto spectrum = to_momentum(g, p[ch], ch.s);
  const double sgn = sign(ch.s);
  for (std::size_t m = 0; m < g.size(); ++m) spectrum[m] *= Complex(0.0, sgn * g.k(m));
  return to_position(g, spectrum, ch.s);
}

ComplexVector spectrum_at(const BlipWavePacket& p, Channel ch, kernels::Progression ks, std::size_t count) {
  const Grid& g = p.grid();
  ComplexVector out(count);
  const auto [first, last] = inside(ks, count, g.k_min(), -g.k_min());
  if (first == last || !p.has_support(ch)) return out;

  const kernels::Progression band{ks.at(first), ks.step};
  std::span<Complex> target(out.data() + first, last - first);
  dense_sum(p[ch], {g.x_min(), g.dx()}, band, -sign(ch.s), target);
  const double scale = g.dx() * kInvSqrt2Pi;
  for (auto& z : target) z *= scale;
  return out;
}

ComplexVector amplitude_at(const SpectralWavePacket& sp, Channel ch, kernels::Progression ys, std::size_t count) {
  const Grid& g = sp.grid();
  ComplexVector out(count);
  const auto [first, last] = inside(ys, count, g.x_min(), g.x_max());
  if (first == last || !sp.has_support(ch)) return out;

  const kernels::Progression window{ys.at(first), ys.step};
  std::span<Complex> target(out.data() + first, last - first);
  dense_sum(sp[ch], {g.k_min(), g.dk()}, window, sign(ch.s), target);
  const double scale = g.dk() * kInvSqrt2Pi;
  for (auto& z : target) z *= scale;
  return out;
}

}  // namespace blip
