#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace blip {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

/// Uniform periodic lattice on [x_min, x_min + n_points * dx).
///
/// The conjugate wavenumber lattice is k_m = -pi/dx + m * dk with
/// dk = 2 pi / (n_points * dx), stored in ascending order.
class Grid {
 public:
  Grid(double x_min, double dx, std::size_t n_points);

  double x_min() const { return x_min_; }
  double x_max() const { return x_min_ + static_cast<double>(n_) * dx_; }
  double dx() const { return dx_; }
  double dk() const;
  double k_min() const;
  std::size_t size() const { return n_; }
  double length() const { return static_cast<double>(n_) * dx_; }

  double x(std::size_t j) const { return x_min_ + static_cast<double>(j) * dx_; }
  double k(std::size_t m) const { return k_min() + static_cast<double>(m) * dk(); }

  bool operator==(const Grid& other) const = default;

 private:
  double x_min_;
  double dx_;
  std::size_t n_;
};

Grid make_grid(double x_min, double x_max, std::size_t n_points);

enum class Direction : int { minus = -1, plus = +1 };
enum class Polarization { H, V };

constexpr int sign(Direction s) { return static_cast<int>(s); }
constexpr Direction opposite(Direction s) {
  return s == Direction::plus ? Direction::minus : Direction::plus;
}

struct Channel {
  Direction s;
  Polarization pol;

  bool operator==(const Channel&) const = default;
};

inline constexpr std::array<Channel, 4> kAllChannels{{
    {Direction::minus, Polarization::H},
    {Direction::minus, Polarization::V},
    {Direction::plus, Polarization::H},
    {Direction::plus, Polarization::V},
}};

constexpr std::size_t channel_index(Channel ch) {
  return (ch.s == Direction::plus ? 2u : 0u) + (ch.pol == Polarization::V ? 1u : 0u);
}

std::string to_string(Channel ch);

/// Per-channel complex amplitudes on a shared lattice. Used both for blip-space
/// (position) and momentum-space packets; the two are distinct types below.
class ChannelAmplitudes {
 public:
  explicit ChannelAmplitudes(Grid grid);

  const Grid& grid() const { return grid_; }

  std::span<Complex> operator[](Channel ch) { return amp_[channel_index(ch)]; }
  std::span<const Complex> operator[](Channel ch) const { return amp_[channel_index(ch)]; }

  bool has_support(Channel ch) const;

 protected:
  Grid grid_;
  std::array<ComplexVector, 4> amp_;
};

/// Single-photon amplitudes psi_{s,lambda}(x_j). Norm one for physical states,
/// but unnormalised packets are representable (scattering branches).
class BlipWavePacket : public ChannelAmplitudes {
 public:
  using ChannelAmplitudes::ChannelAmplitudes;

  BlipWavePacket scaled(Complex factor) const;
  BlipWavePacket restricted(Direction s) const;
  BlipWavePacket restricted(Channel ch) const;
  BlipWavePacket& operator+=(const BlipWavePacket& other);
};

struct Medium {
  double epsilon = 1.0;
  double mu = 1.0;
  double area = 1.0;
  double c0 = 1.0;     // reference (air) speed
  double hbar = 1.0;
  std::string tag = "air";

  double speed() const;
  double index() const { return c0 / speed(); }

  bool operator==(const Medium&) const = default;

  static Medium air(double c0 = 1.0, double area = 1.0, double hbar = 1.0);
  // Non-magnetic dielectric with refractive index n relative to c0.
  static Medium dielectric(double n, double c0 = 1.0, double area = 1.0, double hbar = 1.0);
};

/// Media in which the right-moving (s = +1) and left-moving (s = -1)
/// components of a packet currently propagate.
struct DirectionalMedia {
  Medium plus;
  Medium minus;

  const Medium& operator()(Direction s) const { return s == Direction::plus ? plus : minus; }
};

BlipWavePacket gaussian_packet(const Grid& grid, Channel ch, double x0, double k0, double sigma);

double norm(const BlipWavePacket& p);
double norm(const BlipWavePacket& p, Channel ch);
double centroid(const BlipWavePacket& p);

/// Flags a packet whose norm deviates from one by more than `tolerance`.
bool is_normalized(const BlipWavePacket& p, double tolerance = 1e-9);

/// Smallest lattice interval [x(first), x(last)] holding all but `tail` of the
/// channel's norm (split evenly between the two ends). Empty channel -> nullopt.
struct Support {
  double lo = 0.0;
  double hi = 0.0;
  double mass = 0.0;
};
std::optional<Support> support_interval(const BlipWavePacket& p, Channel ch, double tail);

}  // namespace blip
