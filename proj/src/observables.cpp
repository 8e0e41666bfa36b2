#include "blip/observables.hpp"

#include <cmath>

#include <fmt/format.h>

#include "blip/error.hpp"

namespace blip {
namespace {

constexpr double kBranchFloor = 1e-12;

template <class Weight>
double spectral_sum(const SpectralWavePacket& sp, Weight weight) {
  const Grid& g = sp.grid();
  double total = 0.0;
  for (Channel ch : kAllChannels) {
    if (!sp.has_support(ch)) continue;
    auto a = sp[ch];
    double acc = 0.0;
    for (std::size_t m = 0; m < g.size(); ++m) acc += weight(ch, g.k(m)) * std::norm(a[m]);
    total += acc;
  }
  return total * g.dk();
}

double position_derivative_sum(const BlipWavePacket& p, bool signed_by_direction) {
  const Grid& g = p.grid();
  double total = 0.0;
  for (Channel ch : kAllChannels) {
    if (!p.has_support(ch)) continue;
    const auto d = spectral_derivative(p, ch);
    auto a = p[ch];
    Complex acc{};
    for (std::size_t j = 0; j < g.size(); ++j) acc += std::conj(a[j]) * d[j];
    // <psi| -i d/dx |psi>
    const double value = (Complex(0.0, -1.0) * acc).real();
    total += signed_by_direction ? sign(ch.s) * value : value;
  }
  return total * g.dx();
}

std::string join_tags(const DirectionalMedia& media) {
  if (media.plus.tag == media.minus.tag) return media.plus.tag;
  return fmt::format("+:{};-:{}", media.plus.tag, media.minus.tag);
}

}  // namespace

ObservableReport& ObservableReport::operator+=(const ObservableReport& other) {
  photon_number += other.photon_number;
  energy += other.energy;
  dyn_hamiltonian += other.dyn_hamiltonian;
  dyn_momentum += other.dyn_momentum;
  field_momentum += other.field_momentum;
  abraham_momentum += other.abraham_momentum;
  if (medium_tag.empty()) {
    medium_tag = other.medium_tag;
  } else if (!other.medium_tag.empty() && other.medium_tag != medium_tag) {
    medium_tag = "mixed";
  }
  return *this;
}

ObservableReport ObservableReport::scaled(double f) const {
  ObservableReport r = *this;
  r.photon_number *= f;
  r.energy *= f;
  r.dyn_hamiltonian *= f;
  r.dyn_momentum *= f;
  r.field_momentum *= f;
  r.abraham_momentum *= f;
  return r;
}

ObservableReport operator+(ObservableReport a, const ObservableReport& b) { return a += b; }

double expect_photon_number(const BlipWavePacket& p) { return norm(p); }

double expect_photon_number(const SpectralWavePacket& sp) {
  return spectral_sum(sp, [](Channel, double) { return 1.0; });
}

double expect_energy(const SpectralWavePacket& sp, const Medium& m) {
  const double scale = m.hbar * m.speed();
  return spectral_sum(sp, [scale](Channel, double k) { return scale * std::abs(k); });
}

double expect_dyn_hamiltonian(const SpectralWavePacket& sp, const Medium& m) {
  const double scale = m.hbar * m.speed();
  return spectral_sum(sp, [scale](Channel, double k) { return scale * k; });
}

double expect_dyn_momentum(const SpectralWavePacket& sp, double hbar) {
  return spectral_sum(sp, [hbar](Channel ch, double k) { return hbar * sign(ch.s) * k; });
}

double expect_dyn_momentum(const BlipWavePacket& p, double hbar) {
  return hbar * position_derivative_sum(p, false);
}

double expect_dyn_hamiltonian(const BlipWavePacket& p, const Medium& m) {
  return m.hbar * m.speed() * position_derivative_sum(p, true);
}

double field_momentum_spectral(const SpectralWavePacket& sp, double hbar) {
  return spectral_sum(sp, [hbar](Channel ch, double k) { return hbar * sign(ch.s) * std::abs(k); });
}

double expect_field_momentum(const FieldProfile& fp, const Medium& m) {
  const FieldMomentum fm = momentum_from_fields(fp, m);
  if (fm.imaginary_residual > 1e-10 * std::max(1.0, std::abs(fm.value))) {
    throw Error(ErrorKind::consistency,
                fmt::format("field momentum has an imaginary part of {:.3e}", fm.imaginary_residual));
  }
  return fm.value;
}

double abraham_momentum(double p_minkowski, double n) {
  if (!(n > 0.0)) throw Error(ErrorKind::domain, fmt::format("refractive index must be positive (n = {})", n));
  return p_minkowski / (n * n);
}

ObservableReport observe(const BlipWavePacket& p, const Medium& m) {
  return observe(p, DirectionalMedia{m, m});
}

ObservableReport observe(const BlipWavePacket& p, const DirectionalMedia& media) {
  ObservableReport total;
  total.photon_number = expect_photon_number(p);
  for (Direction s : {Direction::minus, Direction::plus}) {
    const SpectralWavePacket sp = to_momentum(p.restricted(s));
    const Medium& m = media(s);
    const double field = field_momentum_spectral(sp, m.hbar);
    total.energy += expect_energy(sp, m);
    total.dyn_hamiltonian += expect_dyn_hamiltonian(sp, m);
    total.dyn_momentum += expect_dyn_momentum(sp, m.hbar);
    total.field_momentum += field;
    total.abraham_momentum += abraham_momentum(field, m.index());
  }
  total.medium_tag = join_tags(media);
  return total;
}

ObservableReport conditional_expectations(const ScatterOutcome& outcome, Branch branch) {
  const BlipWavePacket& p = branch == Branch::transmitted ? outcome.transmitted : outcome.reflected;
  const double w = norm(p);
  if (!(w > kBranchFloor)) {
    throw Error(ErrorKind::undefined_conditional,
                fmt::format("{} branch has norm {:.3e}", branch == Branch::transmitted ? "transmitted" : "reflected", w));
  }
  return observe(p, outcome.outgoing_media).scaled(1.0 / w);
}

}  // namespace blip
