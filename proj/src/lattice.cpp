#include "blip/lattice.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "blip/error.hpp"

namespace blip {

Grid::Grid(double x_min, double dx, std::size_t n_points) : x_min_(x_min), dx_(dx), n_(n_points) {
  if (!(dx > 0.0) || !std::isfinite(dx) || !std::isfinite(x_min)) {
    throw Error(ErrorKind::configuration, fmt::format("grid spacing must be positive and finite (dx = {})", dx));
  }
  if (n_points < 8 || !std::has_single_bit(n_points)) {
    throw Error(ErrorKind::configuration,
                fmt::format("grid size must be a power of two >= 8 (n_points = {})", n_points));
  }
}

double Grid::dk() const { return 2.0 * std::numbers::pi / length(); }

double Grid::k_min() const { return -std::numbers::pi / dx_; }

Grid make_grid(double x_min, double x_max, std::size_t n_points) {
  if (!(x_max > x_min)) {
    throw Error(ErrorKind::configuration, fmt::format("grid bounds inverted: [{}, {})", x_min, x_max));
  }
  return Grid(x_min, (x_max - x_min) / static_cast<double>(n_points), n_points);
}

std::string to_string(Channel ch) {
  return fmt::format("{}{}", ch.s == Direction::plus ? "+" : "-", ch.pol == Polarization::H ? "H" : "V");
}

ChannelAmplitudes::ChannelAmplitudes(Grid grid) : grid_(grid) {
  for (auto& a : amp_) a.assign(grid_.size(), Complex{});
}

bool ChannelAmplitudes::has_support(Channel ch) const {
  const auto& a = amp_[channel_index(ch)];
  return std::any_of(a.begin(), a.end(), [](Complex z) { return z != Complex{}; });
}

BlipWavePacket BlipWavePacket::scaled(Complex factor) const {
  BlipWavePacket out(*this);
  for (auto& a : out.amp_)
    for (auto& z : a) z *= factor;
  return out;
}

BlipWavePacket BlipWavePacket::restricted(Direction s) const {
  BlipWavePacket out(grid_);
  for (Channel ch : kAllChannels)
    if (ch.s == s) out.amp_[channel_index(ch)] = amp_[channel_index(ch)];
  return out;
}

BlipWavePacket BlipWavePacket::restricted(Channel ch) const {
  BlipWavePacket out(grid_);
  out.amp_[channel_index(ch)] = amp_[channel_index(ch)];
  return out;
}

BlipWavePacket& BlipWavePacket::operator+=(const BlipWavePacket& other) {
  if (!(other.grid_ == grid_)) throw Error(ErrorKind::consistency, "cannot add packets on different grids");
  for (std::size_t c = 0; c < amp_.size(); ++c)
    for (std::size_t j = 0; j < grid_.size(); ++j) amp_[c][j] += other.amp_[c][j];
  return *this;
}

double Medium::speed() const { return 1.0 / std::sqrt(epsilon * mu); }

Medium Medium::air(double c0, double area, double hbar) {
  return Medium{1.0 / c0, 1.0 / c0, area, c0, hbar, "air"};
}

Medium Medium::dielectric(double n, double c0, double area, double hbar) {
  if (!(n > 0.0)) throw Error(ErrorKind::domain, fmt::format("refractive index must be positive (n = {})", n));
  return Medium{n * n / c0, 1.0 / c0, area, c0, hbar, fmt::format("n={}", n)};
}

BlipWavePacket gaussian_packet(const Grid& grid, Channel ch, double x0, double k0, double sigma) {
  if (!(sigma > 3.0 * grid.dx())) {
    throw Error(ErrorKind::fixture, fmt::format("sigma = {} is not resolvable on dx = {}", sigma, grid.dx()));
  }
  // |psi|^2 is a normal density with standard deviation sigma.
  const double edge = std::min(x0 - grid.x_min(), grid.x_max() - x0);
  const double tail = edge > 0.0 ? 0.5 * std::erfc(edge / (std::numbers::sqrt2 * sigma)) : 1.0;
  if (tail > 1e-12) {
    throw Error(ErrorKind::fixture,
                fmt::format("packet at x0 = {} with sigma = {} is truncated by the grid (tail {:.3g})", x0, sigma, tail));
  }

  BlipWavePacket p(grid);
  auto amp = p[ch];
  const double s = sign(ch.s);
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const double x = grid.x(j);
    const double u = (x - x0) / sigma;
    amp[j] = std::exp(-0.25 * u * u) * std::polar(1.0, s * k0 * x);
  }
  const double scale = 1.0 / std::sqrt(norm(p));
  for (auto& z : amp) z *= scale;
  return p;
}

double norm(const BlipWavePacket& p, Channel ch) {
  double sum = 0.0;
  for (Complex z : p[ch]) sum += std::norm(z);
  return sum * p.grid().dx();
}

double norm(const BlipWavePacket& p) {
  double sum = 0.0;
  for (Channel ch : kAllChannels) sum += norm(p, ch);
  return sum;
}

double centroid(const BlipWavePacket& p) {
  const Grid& g = p.grid();
  double weight = 0.0;
  double moment = 0.0;
  for (Channel ch : kAllChannels) {
    auto a = p[ch];
    for (std::size_t j = 0; j < g.size(); ++j) {
      const double w = std::norm(a[j]);
      weight += w;
      moment += w * g.x(j);
    }
  }
  if (!(weight > 0.0)) throw Error(ErrorKind::undefined_centroid, "centroid of a zero packet");
  return moment / weight;
}

bool is_normalized(const BlipWavePacket& p, double tolerance) { return std::abs(norm(p) - 1.0) <= tolerance; }

std::optional<Support> support_interval(const BlipWavePacket& p, Channel ch, double tail) {
  auto a = p[ch];
  const std::size_t n = a.size();
  double total = 0.0;
  for (Complex z : a) total += std::norm(z);
  if (!(total > 0.0)) return std::nullopt;

  const double cut = 0.5 * tail * total;
  std::size_t first = 0;
  double acc = 0.0;
  for (; first < n; ++first) {
    acc += std::norm(a[first]);
    if (acc > cut) break;
  }
  std::size_t last = n - 1;
  acc = 0.0;
  for (; last > 0; --last) {
    acc += std::norm(a[last]);
    if (acc > cut) break;
  }
  if (last < first) last = first;
  const Grid& g = p.grid();
  return Support{g.x(first), g.x(last), total * g.dx()};
}

}  // namespace blip
