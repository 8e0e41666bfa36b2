#pragma once

#include "blip/kernels.hpp"
#include "blip/lattice.hpp"

namespace blip {

/// Momentum-space amplitudes psi~_{s,lambda}(k_m) on the ascending k lattice.
class SpectralWavePacket : public ChannelAmplitudes {
 public:
  using ChannelAmplitudes::ChannelAmplitudes;
};

// psi~_s(k) = (2 pi)^(-1/2) int dx exp(-i s k x) psi_s(x), discretised as a
// unitary DFT. The s = -1 kernel is obtained from the same FFT by index
// reversal.
SpectralWavePacket to_momentum(const BlipWavePacket& p);
BlipWavePacket to_position(const SpectralWavePacket& sp);

// Single-channel versions of the pair above.
ComplexVector to_momentum(const Grid& grid, std::span<const Complex> psi, Direction s);
ComplexVector to_position(const Grid& grid, std::span<const Complex> spectrum, Direction s);

/// d psi / dx of one channel, evaluated as the inverse transform of i s k psi~.
ComplexVector spectral_derivative(const BlipWavePacket& p, Channel ch);

/// Band-limited spectrum of one channel at k = ks.at(m), m < count: the
/// discrete-time Fourier transform of the samples, zero outside the lattice
/// band [-pi/dx, pi/dx).
ComplexVector spectrum_at(const BlipWavePacket& p, Channel ch, kernels::Progression ks, std::size_t count);

/// Trigonometric interpolant of one channel's position amplitude at
/// y = ys.at(j), j < count, zero outside [x_min, x_max).
ComplexVector amplitude_at(const SpectralWavePacket& sp, Channel ch, kernels::Progression ys, std::size_t count);

}  // namespace blip
