#include "blip/fields.hpp"

#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "blip/error.hpp"
#include "blip/kernels.hpp"

namespace blip {
namespace {

double kernel_scale(const Medium& m) {
  return std::sqrt(m.hbar * m.speed() / (4.0 * std::numbers::pi * m.epsilon * m.area));
}

void check_medium(const FieldProfile& fp, const Medium& m) {
  if (fp.medium_tag != m.tag) {
    throw Error(ErrorKind::consistency,
                fmt::format("field profile built for medium '{}' evaluated with medium '{}'", fp.medium_tag, m.tag));
  }
}

// sum_{l in Z} dx * max(|l| dx, cutoff)^(-3/2), without the -C prefactor.
double lattice_kernel_sum(double dx, double cutoff) {
  const auto inner = static_cast<long>(std::ceil(cutoff / dx));  // |l| < inner sit on the plateau
  const double plateau = std::pow(cutoff, -1.5);
  double sum = static_cast<double>(2 * inner - 1) * plateau;
  double head = 0.0;
  for (long l = 1; l < inner; ++l) head += std::pow(static_cast<double>(l), -1.5);
  const double tail = std::riemann_zeta(1.5) - head;  // sum_{l >= inner} l^(-3/2)
  sum += 2.0 * std::pow(dx, -1.5) * tail;
  return dx * sum;
}

}  // namespace

double zeta(double k, const Medium& m) {
  return std::sqrt(2.0 * m.hbar * m.speed() / (m.epsilon * m.area)) * std::sqrt(std::abs(k));
}

FieldProfile field_profile(const SpectralWavePacket& sp, const Medium& m) {
  const Grid& g = sp.grid();
  const std::size_t n = g.size();
  FieldProfile fp{g, ComplexVector(n), ComplexVector(n), ComplexVector(n), ComplexVector(n), m.tag};
  const double c = m.speed();

  for (Channel ch : kAllChannels) {
    if (!sp.has_support(ch)) continue;
    auto spectrum = sp[ch];
    ComplexVector weighted(n);
    for (std::size_t i = 0; i < n; ++i) weighted[i] = zeta(g.k(i), m) * spectrum[i];
    const auto r = to_position(g, weighted, ch.s);
    const double b_factor = sign(ch.s) / c;
    for (std::size_t j = 0; j < n; ++j) {
      if (ch.pol == Polarization::H) {
        fp.e_y[j] += r[j];
        fp.b_z[j] += b_factor * r[j];
      } else {
        fp.e_z[j] += r[j];
        fp.b_y[j] -= b_factor * r[j];
      }
    }
  }
  return fp;
}

double energy_from_fields(const FieldProfile& fp, const Medium& m) {
  check_medium(fp, m);
  double electric = 0.0;
  double magnetic = 0.0;
  for (std::size_t j = 0; j < fp.grid.size(); ++j) {
    electric += std::norm(fp.e_y[j]) + std::norm(fp.e_z[j]);
    magnetic += std::norm(fp.b_y[j]) + std::norm(fp.b_z[j]);
  }
  return 0.25 * m.area * fp.grid.dx() * (m.epsilon * electric + magnetic / m.mu);
}

FieldMomentum momentum_from_fields(const FieldProfile& fp, const Medium& m) {
  check_medium(fp, m);
  Complex sum{};
  for (std::size_t j = 0; j < fp.grid.size(); ++j) {
    const Complex e_cross_b = std::conj(fp.e_y[j]) * fp.b_z[j] - std::conj(fp.e_z[j]) * fp.b_y[j];
    const Complex b_cross_e = std::conj(fp.b_y[j]) * fp.e_z[j] - std::conj(fp.b_z[j]) * fp.e_y[j];
    sum += e_cross_b - b_cross_e;
  }
  sum *= 0.25 * m.epsilon * m.area * fp.grid.dx();
  return {sum.real(), std::abs(sum.imag())};
}

double position_kernel_R(double x_offset, const Medium& m, double cutoff) {
  if (!(cutoff > 0.0)) throw Error(ErrorKind::domain, fmt::format("kernel cutoff must be positive ({})", cutoff));
  return -kernel_scale(m) * std::pow(std::max(std::abs(x_offset), cutoff), -1.5);
}

ComplexVector field_via_position_kernel(const BlipWavePacket& p, Channel ch, const Medium& m, double cutoff) {
  const Grid& g = p.grid();
  const std::size_t n = g.size();
  std::vector<double> kernel(2 * n - 1);
  for (std::size_t i = 0; i < kernel.size(); ++i) {
    const double offset = (static_cast<double>(i) - static_cast<double>(n - 1)) * g.dx();
    kernel[i] = position_kernel_R(offset, m, cutoff);
  }
  ComplexVector out(n);
  kernels::toeplitz_convolution(p[ch], kernel, g.dx(), out);

  const double local = -kernel_scale(m) * lattice_kernel_sum(g.dx(), cutoff);
  auto psi = p[ch];
  for (std::size_t j = 0; j < n; ++j) out[j] -= local * psi[j];
  return out;
}

ComplexVector field_via_zeta(const BlipWavePacket& p, Channel ch, const Medium& m) {
  const Grid& g = p.grid();
  auto spectrum = to_momentum(g, p[ch], ch.s);
  for (std::size_t i = 0; i < g.size(); ++i) spectrum[i] *= zeta(g.k(i), m);
  return to_position(g, spectrum, ch.s);
}

}  // namespace blip
