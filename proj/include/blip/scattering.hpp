#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "blip/lattice.hpp"

namespace blip {

/// Blip transmission and reflection rates of a mirror surface, indexed by the
/// direction of the incoming blip.
struct ScatterRates {
  Complex t_minus{1.0};
  Complex t_plus{1.0};
  Complex r_minus{};
  Complex r_plus{};

  Complex t(Direction s) const { return s == Direction::plus ? t_plus : t_minus; }
  Complex r(Direction s) const { return s == Direction::plus ? r_plus : r_minus; }
};

/// Coupling Omega of the local mirror interaction and the speed c_ref at which
/// blips approach the surface.
struct MirrorCoupling {
  Complex omega{};
  double c_ref = 1.0;

  double q() const { return std::abs(omega) / (2.0 * c_ref); }
};

// Closed-form rates of the resummed interaction, |Omega| < 2 c_ref:
//   t = (1 - q^2) / (1 + q^2),  r_+ = -i Omega / c / (1 + q^2),
//   r_- = -i Omega* / c / (1 + q^2) = -r_+*,  q = |Omega| / 2c.
ScatterRates rates_from_omega(const MirrorCoupling& mc);

struct DysonPartialSum {
  std::size_t order = 0;
  Complex t{};
  Complex r{};  // estimate of r_+
};

/// Partial sums of the interaction series up to orders 0..n_terms. Defined for
/// any Omega; for q >= 1 the sums do not converge.
std::vector<DysonPartialSum> dyson_partial_sums(const MirrorCoupling& mc, std::size_t n_terms);

/// Geometric remainder bounds |t_N - t| <= 2 q^(2N+2) / (1 - q^2) and
/// |r_N - r| <= 2 q^(2N+3) / (1 - q^2), valid for q < 1.
double dyson_t_bound(double q, std::size_t order);
double dyson_r_bound(double q, std::size_t order);

/// Normal-incidence blip rates at an air | medium(n) boundary, air on the left:
/// r_- = (n-1)/(n+1), r_+ = -(n-1)/(n+1), t = 2 sqrt(n) / (n+1).
ScatterRates fresnel_rates(double n);

/// Omega = -2 i c0 (sqrt(n) - 1) / (sqrt(n) + 1), which reproduces fresnel_rates.
MirrorCoupling omega_from_n(double n, double c0 = 1.0);

struct StokesResiduals {
  double cross = 0.0;  // |r_-* t_+ + t_-* r_+|
  double plus = 0.0;   // |1 - |r_+|^2 - |t_+|^2|
  double minus = 0.0;  // |1 - |r_-|^2 - |t_-|^2|

  double max() const { return std::max({cross, plus, minus}); }
};

StokesResiduals stokes_residuals(const ScatterRates& rates);

/// Asymptotic result of a single scattering event at x = 0.
struct ScatterOutcome {
  BlipWavePacket transmitted;
  BlipWavePacket reflected;
  double prob_t = 0.0;
  double prob_r = 0.0;
  std::string scenario_tag;
  double time = 0.0;
  // Where outgoing right- and left-movers propagate (right and left medium).
  DirectionalMedia outgoing_media;
  bool reflected_empty = false;
  double resample_drift = 0.0;
  double guard_residual = 0.0;
};

/// Half-width of the band around x = 0 that an asymptotic packet must avoid.
double guard_half_width(const Grid& grid);

enum class Flow { incoming, outgoing };

/// Fraction of the packet's norm inside the guard band or on the wrong side of
/// x = 0 for the given flow (incoming: right-movers on x < 0, left-movers on
/// x > 0; outgoing the reverse).
double guard_violation(const BlipWavePacket& p, Flow flow);

inline constexpr double kGuardTolerance = 1e-10;
inline constexpr double kResampleTolerance = 1e-8;

/// Earliest time any incoming blip touches the guard band and the earliest
/// time every outgoing branch is clear of it.
struct CrossingWindow {
  double contact = 0.0;
  double clear = 0.0;
};

CrossingWindow crossing_window(const BlipWavePacket& incoming, const Medium& left, const Medium& right);

/// Same medium on both sides of a partially transparent mirror at x = 0.
ScatterOutcome beamsplitter_scatter(const BlipWavePacket& p, const ScatterRates& rates, const Medium& m,
                                    double t_final);

/// Air (c0) on x < 0 and a dielectric of index n on x > 0, Fresnel rates.
ScatterOutcome interface_scatter(const BlipWavePacket& p, double n, double t_final, double c0 = 1.0);

/// General two-media interface with rates of the rescaled (b-operator)
/// picture; n = c_left / c_right.
ScatterOutcome interface_scatter(const BlipWavePacket& p, const ScatterRates& rates, const Medium& left,
                                 const Medium& right, double t_final);

/// Blip-wise state at any time t, including the crossing window: blips that
/// have not reached x = 0 move freely, the others are scattered. Evaluated in
/// position space by band-limited interpolation of the initial packet.
BlipWavePacket interface_state_at(const BlipWavePacket& p, const ScatterRates& rates, const Medium& left,
                                  const Medium& right, double t);

}  // namespace blip
