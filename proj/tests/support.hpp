#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "blip/lattice.hpp"
#include "blip/spectral.hpp"

namespace blip::testing {

inline Grid reference_grid() { return make_grid(-200.0, 200.0, 16384); }
inline Grid small_grid() { return make_grid(-50.0, 50.0, 2048); }

inline constexpr Channel kPlusH{Direction::plus, Polarization::H};
inline constexpr Channel kPlusV{Direction::plus, Polarization::V};
inline constexpr Channel kMinusH{Direction::minus, Polarization::H};
inline constexpr Channel kMinusV{Direction::minus, Polarization::V};

// Closed form of a normalised Gaussian psi(x) = (2 pi sigma^2)^(-1/4)
// exp(-(x-x0)^2 / (4 sigma^2)) exp(i s k0 x) and of its transform
// (2 pi)^(-1/2) int exp(-i s k x) psi(x) dx.
inline std::complex<double> gaussian_x(double x, double s, double x0, double k0, double sigma) {
  const double a = std::pow(2.0 * std::numbers::pi * sigma * sigma, -0.25);
  const double u = (x - x0) / sigma;
  return a * std::exp(-0.25 * u * u) * std::polar(1.0, s * k0 * x);
}

inline std::complex<double> gaussian_k(double k, double s, double x0, double k0, double sigma) {
  const double a = std::pow(2.0 * std::numbers::pi * sigma * sigma, -0.25);
  const double d = k - k0;
  return a * 2.0 * sigma * std::sqrt(std::numbers::pi) / std::sqrt(2.0 * std::numbers::pi) *
         std::exp(-sigma * sigma * d * d) * std::polar(1.0, -s * d * x0);
}

// d/dx of gaussian_x.
inline std::complex<double> gaussian_dx(double x, double s, double x0, double k0, double sigma) {
  const std::complex<double> f(-(x - x0) / (2.0 * sigma * sigma), s * k0);
  return f * gaussian_x(x, s, x0, k0, sigma);
}

// Superposition of a few Gaussians in random channels, centred well inside
// the grid and spectrally well inside the band, normalised to one.
inline BlipWavePacket random_packet(const Grid& g, std::mt19937_64& rng, double x_lo, double x_hi) {
  std::uniform_real_distribution<double> x0(x_lo, x_hi);
  std::uniform_real_distribution<double> k0(-30.0, 30.0);
  std::uniform_real_distribution<double> sigma(1.5, 3.0);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  std::uniform_int_distribution<int> channel(0, 3);
  std::uniform_int_distribution<int> count(1, 4);
  BlipWavePacket p(g);
  const int terms = count(rng);
  for (int i = 0; i < terms; ++i) {
    const Channel ch = kAllChannels[static_cast<std::size_t>(channel(rng))];
    BlipWavePacket part = gaussian_packet(g, ch, x0(rng), k0(rng), sigma(rng));
    p += part.scaled(std::polar(1.0, phase(rng)));
  }
  return p.scaled(1.0 / std::sqrt(norm(p)));
}

// Packet with a single occupied momentum bin, normalised in k space.
inline SpectralWavePacket single_bin(const Grid& g, Channel ch, std::size_t m) {
  SpectralWavePacket sp(g);
  sp[ch][m] = 1.0 / std::sqrt(g.dk());
  return sp;
}

// Index of the lattice wavenumber closest to k.
inline std::size_t bin_of(const Grid& g, double k) {
  return static_cast<std::size_t>(std::lround((k - g.k_min()) / g.dk()));
}

inline double relative(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace blip::testing
