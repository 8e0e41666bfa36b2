#pragma once

#include <string>

#include "blip/lattice.hpp"
#include "blip/spectral.hpp"

namespace blip {

/// Complex single-photon field amplitudes over the lattice.
struct FieldProfile {
  Grid grid;
  ComplexVector e_y;
  ComplexVector e_z;
  ComplexVector b_y;
  ComplexVector b_z;
  std::string medium_tag;
};

/// zeta(k) = (2 hbar c / (eps A))^(1/2) |k|^(1/2).
double zeta(double k, const Medium& m);

/// Fields carried by a packet: each (s, lambda) channel contributes
/// E~ = zeta psi~ and B~ = (s/c) zeta psi~ with H along (y, z) and V along
/// (z, -y), transformed back with that channel's own kernel.
FieldProfile field_profile(const SpectralWavePacket& sp, const Medium& m);

/// (A/4) int dx [eps |E|^2 + |B|^2 / mu].
double energy_from_fields(const FieldProfile& fp, const Medium& m);

struct FieldMomentum {
  double value = 0.0;
  double imaginary_residual = 0.0;
};

/// (eps A/4) int dx [E* x B - B* x E] . x
FieldMomentum momentum_from_fields(const FieldProfile& fp, const Medium& m);

/// Regularised blip-to-field kernel -(hbar c / (4 pi eps A))^(1/2) |x|^(-3/2),
/// held at its |x| = cutoff value inside the cutoff. Diagnostic only.
double position_kernel_R(double x_offset, const Medium& m, double cutoff);

/// R_{s,lambda}(x) of one channel by direct convolution with
/// position_kernel_R. The divergent local part is removed by subtracting the
/// kernel's lattice sum times psi(x), which makes the result converge to the
/// zeta route as the cutoff shrinks.
ComplexVector field_via_position_kernel(const BlipWavePacket& p, Channel ch, const Medium& m, double cutoff);

/// Same quantity through zeta(k): inverse transform of zeta psi~.
ComplexVector field_via_zeta(const BlipWavePacket& p, Channel ch, const Medium& m);

}  // namespace blip
