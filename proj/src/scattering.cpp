#include "blip/scattering.hpp"

#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "blip/error.hpp"
#include "blip/spectral.hpp"

namespace blip {
namespace {

constexpr double kSupportTail = 1e-10;

double check_index(double n) {
  if (!(n > 0.0) || !std::isfinite(n)) throw Error(ErrorKind::domain, fmt::format("refractive index must be positive (n = {})", n));
  return n;
}

Complex phase(double angle) { return std::polar(1.0, angle); }

// Squared norm in momentum space, sum |psi~|^2 dk.
double spectral_mass(std::span<const Complex> spectrum, double dk) {
  double sum = 0.0;
  for (Complex z : spectrum) sum += std::norm(z);
  return sum * dk;
}

struct Interval {
  double lo;
  double hi;
};

// Where each incoming channel's support ends up after the scattering map at
// time t, for both branches. Used for the domain-exit check.
std::vector<Interval> predicted_outputs(const BlipWavePacket& p, const Medium& left, const Medium& right, double t) {
  const double c_l = left.speed();
  const double c_r = right.speed();
  const double n = c_l / c_r;
  std::vector<Interval> out;
  for (Channel ch : kAllChannels) {
    const auto sup = support_interval(p, ch, kSupportTail);
    if (!sup) continue;
    if (ch.s == Direction::plus) {
      out.push_back({(sup->lo + c_l * t) / n, (sup->hi + c_l * t) / n});
      out.push_back({-sup->hi - c_l * t, -sup->lo - c_l * t});
    } else {
      out.push_back({n * sup->lo - c_l * t, n * sup->hi - c_l * t});
      out.push_back({c_r * t - sup->hi, c_r * t - sup->lo});
    }
  }
  return out;
}

void check_inside(const Grid& g, const std::vector<Interval>& intervals) {
  for (const auto& iv : intervals) {
    if (iv.lo < g.x_min() || iv.hi > g.x_max() - g.dx()) {
      throw Error(ErrorKind::domain_exit,
                  fmt::format("scattered support [{:.6g}, {:.6g}] leaves the grid [{:.6g}, {:.6g})", iv.lo, iv.hi,
                              g.x_min(), g.x_max()));
    }
  }
}

void check_incoming(const BlipWavePacket& p) {
  const double v = guard_violation(p, Flow::incoming);
  if (v > kGuardTolerance) {
    throw Error(ErrorKind::support_guard,
                fmt::format("{:.3e} of the norm lies in the guard band or on the far side of x = 0", v));
  }
}

ScatterOutcome scatter(const BlipWavePacket& p, const ScatterRates& rates, const Medium& left, const Medium& right,
                       double t_final, std::string tag) {
  const Grid& g = p.grid();
  const double total = norm(p);
  if (!(total > 0.0)) throw Error(ErrorKind::fixture, "cannot scatter an empty packet");
  check_incoming(p);

  const CrossingWindow window = crossing_window(p, left, right);
  if (t_final < window.clear) {
    throw Error(ErrorKind::not_asymptotic,
                fmt::format("t_final = {:.6g} precedes the end of the crossing window ({:.6g})", t_final, window.clear));
  }
  check_inside(g, predicted_outputs(p, left, right, t_final));

  const double c_l = left.speed();
  const double c_r = right.speed();
  const double n = c_l / c_r;
  const double root_n = std::sqrt(n);
  const bool same_medium = (c_l == c_r);
  const std::size_t size = g.size();

  const SpectralWavePacket incoming = to_momentum(p);
  SpectralWavePacket trans(g);
  SpectralWavePacket refl(g);
  double expected_t = 0.0;
  double expected_r = 0.0;
  double drift = 0.0;

  for (Polarization pol : {Polarization::H, Polarization::V}) {
    const Channel plus{Direction::plus, pol};
    const Channel minus{Direction::minus, pol};

    if (p.has_support(plus)) {
      const double w = norm(p, plus);
      const ComplexVector stretched =
          same_medium ? ComplexVector(incoming[plus].begin(), incoming[plus].end())
                      : spectrum_at(p, plus, {g.k_min() / n, g.dk() / n}, size);
      auto t_out = trans[plus];
      auto r_out = refl[minus];
      for (std::size_t m = 0; m < size; ++m) {
        const double k = g.k(m);
        t_out[m] = rates.t_plus / root_n * phase(-c_r * k * t_final) * stretched[m];
        r_out[m] = rates.r_plus * phase(-c_l * k * t_final) * incoming[plus][m];
      }
      expected_t += std::norm(rates.t_plus) * w;
      expected_r += std::norm(rates.r_plus) * w;
      drift += std::abs(spectral_mass(t_out, g.dk()) - std::norm(rates.t_plus) * w);
    }

    if (p.has_support(minus)) {
      const double w = norm(p, minus);
      const ComplexVector squeezed =
          same_medium ? ComplexVector(incoming[minus].begin(), incoming[minus].end())
                      : spectrum_at(p, minus, {g.k_min() * n, g.dk() * n}, size);
      auto t_out = trans[minus];
      auto r_out = refl[plus];
      for (std::size_t m = 0; m < size; ++m) {
        const double k = g.k(m);
        t_out[m] = root_n * rates.t_minus * phase(-c_l * k * t_final) * squeezed[m];
        r_out[m] = rates.r_minus * phase(-c_r * k * t_final) * incoming[minus][m];
      }
      expected_t += std::norm(rates.t_minus) * w;
      expected_r += std::norm(rates.r_minus) * w;
      drift += std::abs(spectral_mass(t_out, g.dk()) - std::norm(rates.t_minus) * w);
    }
  }
  drift /= total;
  if (drift > kResampleTolerance) {
    throw Error(ErrorKind::interpolation_accuracy,
                fmt::format("band-limited resampling changed the transmitted norm by {:.3e}", drift));
  }

  ScatterOutcome out{to_position(trans), to_position(refl), expected_t / total, expected_r / total, std::move(tag),
                     t_final, DirectionalMedia{right, left}};
  out.reflected_empty = !(norm(out.reflected) > 0.0);
  out.resample_drift = drift;

  BlipWavePacket both = out.transmitted;
  both += out.reflected;
  out.guard_residual = guard_violation(both, Flow::outgoing);
  if (out.guard_residual > kGuardTolerance) {
    throw Error(ErrorKind::not_asymptotic,
                fmt::format("{:.3e} of the scattered norm is still inside the guard band", out.guard_residual));
  }
  return out;
}

}  // namespace

ScatterRates rates_from_omega(const MirrorCoupling& mc) {
  const double q = mc.q();
  if (!(q < 1.0)) {
    throw Error(ErrorKind::divergence,
                fmt::format("|Omega| / 2c = {:.6g}: the interaction series only converges below 1", q));
  }
  const double denom = 1.0 + q * q;
  const Complex minus_i(0.0, -1.0);
  ScatterRates r;
  r.t_plus = r.t_minus = (1.0 - q * q) / denom;
  r.r_plus = minus_i * mc.omega / mc.c_ref / denom;
  r.r_minus = minus_i * std::conj(mc.omega) / mc.c_ref / denom;
  return r;
}

std::vector<DysonPartialSum> dyson_partial_sums(const MirrorCoupling& mc, std::size_t n_terms) {
  if (n_terms < 1) throw Error(ErrorKind::domain, "at least one Dyson order is required");
  const double q2 = mc.q() * mc.q();
  const Complex lead = Complex(0.0, -1.0) * mc.omega / mc.c_ref;
  std::vector<DysonPartialSum> sums;
  sums.reserve(n_terms + 1);
  double power = 1.0;  // (-q^2)^m
  Complex t{1.0};
  Complex series{1.0};
  sums.push_back({0, t, lead * series});
  for (std::size_t m = 1; m <= n_terms; ++m) {
    power *= -q2;
    t += 2.0 * power;
    series += power;
    sums.push_back({m, t, lead * series});
  }
  return sums;
}

double dyson_t_bound(double q, std::size_t order) {
  return 2.0 * std::pow(q, 2.0 * static_cast<double>(order) + 2.0) / (1.0 - q * q);
}

double dyson_r_bound(double q, std::size_t order) {
  return 2.0 * std::pow(q, 2.0 * static_cast<double>(order) + 3.0) / (1.0 - q * q);
}

ScatterRates fresnel_rates(double n) {
  check_index(n);
  const double r = (n - 1.0) / (n + 1.0);
  const double t = 2.0 * std::sqrt(n) / (n + 1.0);
  return ScatterRates{t, t, r, -r};
}

MirrorCoupling omega_from_n(double n, double c0) {
  check_index(n);
  const double root = std::sqrt(n);
  return MirrorCoupling{Complex(0.0, -2.0 * c0 * (root - 1.0) / (root + 1.0)), c0};
}

StokesResiduals stokes_residuals(const ScatterRates& r) {
  StokesResiduals out;
  out.cross = std::abs(std::conj(r.r_minus) * r.t_plus + std::conj(r.t_minus) * r.r_plus);
  out.plus = std::abs(1.0 - std::norm(r.r_plus) - std::norm(r.t_plus));
  out.minus = std::abs(1.0 - std::norm(r.r_minus) - std::norm(r.t_minus));
  return out;
}

double guard_half_width(const Grid& grid) { return 4.0 * grid.dx(); }

double guard_violation(const BlipWavePacket& p, Flow flow) {
  const Grid& g = p.grid();
  const double half = guard_half_width(g);
  double bad = 0.0;
  double all = 0.0;
  for (Channel ch : kAllChannels) {
    // Allowed side of x = 0: +1 for x > half, -1 for x < -half.
    const int allowed = (flow == Flow::incoming) ? -sign(ch.s) : sign(ch.s);
    auto a = p[ch];
    for (std::size_t j = 0; j < g.size(); ++j) {
      const double w = std::norm(a[j]);
      all += w;
      const double x = g.x(j);
      const bool ok = allowed > 0 ? x > half : x < -half;
      if (!ok) bad += w;
    }
  }
  return all > 0.0 ? bad / all : 0.0;
}

CrossingWindow crossing_window(const BlipWavePacket& incoming, const Medium& left, const Medium& right) {
  const double half = guard_half_width(incoming.grid());
  const double c_l = left.speed();
  const double c_r = right.speed();
  const double n = c_l / c_r;
  CrossingWindow w{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  bool any = false;
  for (Channel ch : kAllChannels) {
    const auto sup = support_interval(incoming, ch, kSupportTail);
    if (!sup) continue;
    any = true;
    if (ch.s == Direction::plus) {
      w.contact = std::min(w.contact, (-half - sup->hi) / c_l);
      w.clear = std::max({w.clear, (n * half - sup->lo) / c_l, (half - sup->lo) / c_l});
    } else {
      w.contact = std::min(w.contact, (sup->lo - half) / c_r);
      w.clear = std::max({w.clear, (n * sup->hi + half) / c_l, (sup->hi + half) / c_r});
    }
  }
  if (!any) throw Error(ErrorKind::fixture, "empty packet has no crossing window");
  return w;
}

ScatterOutcome beamsplitter_scatter(const BlipWavePacket& p, const ScatterRates& rates, const Medium& m,
                                    double t_final) {
  return scatter(p, rates, m, m, t_final, "beamsplitter");
}

ScatterOutcome interface_scatter(const BlipWavePacket& p, double n, double t_final, double c0) {
  check_index(n);
  const Medium air = Medium::air(c0);
  const Medium medium = Medium::dielectric(n, c0);
  return scatter(p, fresnel_rates(n), air, medium, t_final, fmt::format("interface {}|{}", air.tag, medium.tag));
}

ScatterOutcome interface_scatter(const BlipWavePacket& p, const ScatterRates& rates, const Medium& left,
                                 const Medium& right, double t_final) {
  return scatter(p, rates, left, right, t_final, fmt::format("interface {}|{}", left.tag, right.tag));
}

BlipWavePacket interface_state_at(const BlipWavePacket& p, const ScatterRates& rates, const Medium& left,
                                  const Medium& right, double t) {
  check_incoming(p);
  const Grid& g = p.grid();
  const std::size_t size = g.size();
  const double c_l = left.speed();
  const double c_r = right.speed();
  const double n = c_l / c_r;
  const double root_n = std::sqrt(n);
  const SpectralWavePacket sp = to_momentum(p);

  // first index with x >= 0, and first index with x > 0
  std::size_t j_nonneg = 0;
  while (j_nonneg < size && g.x(j_nonneg) < 0.0) ++j_nonneg;
  std::size_t j_pos = j_nonneg;
  while (j_pos < size && g.x(j_pos) <= 0.0) ++j_pos;

  BlipWavePacket out(g);
  for (Polarization pol : {Polarization::H, Polarization::V}) {
    const Channel plus{Direction::plus, pol};
    const Channel minus{Direction::minus, pol};
    const bool has_plus = sp.has_support(plus);
    const bool has_minus = sp.has_support(minus);

    auto out_plus = out[plus];
    if (has_plus) {
      const auto free = amplitude_at(sp, plus, {g.x_min() - c_l * t, g.dx()}, j_nonneg);
      std::copy(free.begin(), free.end(), out_plus.begin());
      const auto moved = amplitude_at(sp, plus, {n * g.x(j_nonneg) - c_l * t, n * g.dx()}, size - j_nonneg);
      for (std::size_t i = 0; i < moved.size(); ++i) out_plus[j_nonneg + i] += root_n * rates.t_plus * moved[i];
    }
    if (has_minus) {
      const auto mirrored = amplitude_at(sp, minus, {-g.x(j_nonneg) + c_r * t, -g.dx()}, size - j_nonneg);
      for (std::size_t i = 0; i < mirrored.size(); ++i) out_plus[j_nonneg + i] += rates.r_minus * mirrored[i];
    }

    auto out_minus = out[minus];
    if (has_minus) {
      const auto free = amplitude_at(sp, minus, {g.x(j_pos) + c_r * t, g.dx()}, size - j_pos);
      std::copy(free.begin(), free.end(), out_minus.begin() + static_cast<std::ptrdiff_t>(j_pos));
      const auto moved = amplitude_at(sp, minus, {(g.x_min() + c_l * t) / n, g.dx() / n}, j_pos);
      for (std::size_t i = 0; i < moved.size(); ++i) out_minus[i] += rates.t_minus / root_n * moved[i];
    }
    if (has_plus) {
      const auto mirrored = amplitude_at(sp, plus, {-g.x_min() - c_l * t, -g.dx()}, j_pos);
      for (std::size_t i = 0; i < mirrored.size(); ++i) out_minus[i] += rates.r_plus * mirrored[i];
    }
  }
  return out;
}

}  // namespace blip
