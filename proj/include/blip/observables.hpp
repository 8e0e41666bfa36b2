#pragma once

#include <string>

#include "blip/fields.hpp"
#include "blip/lattice.hpp"
#include "blip/scattering.hpp"
#include "blip/spectral.hpp"

namespace blip {

/// Expectation values of one packet (or one branch of a packet). Unconditional
/// reports of orthogonal branches add.
struct ObservableReport {
  double photon_number = 0.0;
  double energy = 0.0;
  double dyn_hamiltonian = 0.0;
  double dyn_momentum = 0.0;
  double field_momentum = 0.0;
  // field momentum divided by n^2 of the medium each component travels in
  double abraham_momentum = 0.0;
  std::string medium_tag;

  ObservableReport& operator+=(const ObservableReport& other);
  ObservableReport scaled(double factor) const;
};

ObservableReport operator+(ObservableReport a, const ObservableReport& b);

/// sum |psi|^2 dx, the position-space count.
double expect_photon_number(const BlipWavePacket& p);
/// sum |psi~|^2 dk, the momentum-space count.
double expect_photon_number(const SpectralWavePacket& sp);

/// sum hbar c |k| |psi~|^2 dk over all channels.
double expect_energy(const SpectralWavePacket& sp, const Medium& m);

/// sum hbar c k |psi~|^2 dk (signed k).
double expect_dyn_hamiltonian(const SpectralWavePacket& sp, const Medium& m);

/// sum hbar s k |psi~|^2 dk.
double expect_dyn_momentum(const SpectralWavePacket& sp, double hbar = 1.0);

/// Position-space forms: sum psi* (-i hbar d/dx) psi dx, and the same for
/// -i hbar s c d/dx.
double expect_dyn_momentum(const BlipWavePacket& p, double hbar = 1.0);
double expect_dyn_hamiltonian(const BlipWavePacket& p, const Medium& m);

/// sum hbar s |k| |psi~|^2 dk, the closed form of the field momentum.
double field_momentum_spectral(const SpectralWavePacket& sp, double hbar = 1.0);

/// Field momentum evaluated from the complex field amplitudes.
double expect_field_momentum(const FieldProfile& fp, const Medium& m);

/// p / n^2, for comparison only.
double abraham_momentum(double p_minkowski, double n);

/// All expectation values with every channel in medium m.
ObservableReport observe(const BlipWavePacket& p, const Medium& m);

/// Right-movers evaluated in media.plus, left-movers in media.minus.
ObservableReport observe(const BlipWavePacket& p, const DirectionalMedia& media);

enum class Branch { transmitted, reflected };

/// Expectation values of one branch divided by that branch's norm.
ObservableReport conditional_expectations(const ScatterOutcome& outcome, Branch branch);

}  // namespace blip
