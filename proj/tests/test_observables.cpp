#include <gtest/gtest.h>

#include <random>

#include "blip/error.hpp"
#include "blip/observables.hpp"
#include "support.hpp"

using namespace blip;
using namespace blip::testing;

namespace {

struct Bin {
  Grid g = small_grid();
  std::size_t m = 0;
  double k = 0.0;

  explicit Bin(double target) : m(bin_of(g, target)), k(g.k(m)) {}
};

}  // namespace

TEST(Observables, PhotonNumberInBothSpaces) {
  std::mt19937_64 rng(41);
  const Grid g = small_grid();
  for (int i = 0; i < 5; ++i) {
    const auto p = random_packet(g, rng, -20.0, 20.0);
    EXPECT_NEAR(expect_photon_number(p), 1.0, 1e-12);
    EXPECT_NEAR(expect_photon_number(to_momentum(p)), expect_photon_number(p), 1e-12);
  }
  const auto q = gaussian_packet(g, kPlusH, 0.0, 3.0, 1.0).scaled({0.0, 0.2});
  EXPECT_NEAR(expect_photon_number(q), 0.04, 1e-14);
}

TEST(Observables, EnergyOfSingleBins) {
  const Bin b(30.0);
  const Medium air = Medium::air();
  EXPECT_NEAR(expect_energy(single_bin(b.g, kPlusH, b.m), air), b.k, 1e-12);
  const Bin neg(-30.0);
  EXPECT_NEAR(expect_energy(single_bin(neg.g, kPlusH, neg.m), air), -neg.k, 1e-12);
  const Medium glass = Medium::dielectric(2.0);
  EXPECT_NEAR(expect_energy(single_bin(b.g, kMinusV, b.m), glass), 0.5 * b.k, 1e-12);
}

TEST(Observables, EnergyOfNarrowGaussian) {
  // The spectrum lies entirely in k > 0 so <|k|> = <k> = k0 exactly.
  const Grid g = reference_grid();
  const auto sp = to_momentum(gaussian_packet(g, kPlusH, -50.0, 30.0, 2.0));
  EXPECT_NEAR(expect_energy(sp, Medium::air()), 30.0, 1e-10);
}

TEST(Observables, DynamicalHamiltonianSign) {
  const Bin b(30.0);
  const Bin neg(-30.0);
  const Medium m = Medium::dielectric(1.5);
  EXPECT_NEAR(expect_dyn_hamiltonian(single_bin(b.g, kPlusH, b.m), m), b.k * m.speed(), 1e-12);
  EXPECT_NEAR(expect_dyn_hamiltonian(single_bin(neg.g, kPlusH, neg.m), m), neg.k * m.speed(), 1e-12);

  SpectralWavePacket sym(b.g);
  sym[kPlusH][b.m] = 1.0 / std::sqrt(2.0 * b.g.dk());
  sym[kPlusH][bin_of(b.g, -b.k)] = 1.0 / std::sqrt(2.0 * b.g.dk());
  EXPECT_NEAR(expect_dyn_hamiltonian(sym, m), 0.0, 1e-12);
}

TEST(Observables, DynamicalMomentumSigns) {
  const Bin b(30.0);
  EXPECT_NEAR(expect_dyn_momentum(single_bin(b.g, kPlusH, b.m)), b.k, 1e-12);
  EXPECT_NEAR(expect_dyn_momentum(single_bin(b.g, kMinusH, b.m)), -b.k, 1e-12);
  SpectralWavePacket both(b.g);
  both[kPlusH][b.m] = 1.0 / std::sqrt(2.0 * b.g.dk());
  both[kMinusH][b.m] = 1.0 / std::sqrt(2.0 * b.g.dk());
  EXPECT_NEAR(expect_dyn_momentum(both), 0.0, 1e-12);
}

TEST(Observables, FieldMomentumSigns) {
  const Bin b(30.0);
  const Bin neg(-30.0);
  const Medium air = Medium::air();
  auto field = [&](const SpectralWavePacket& sp) { return expect_field_momentum(field_profile(sp, air), air); };
  EXPECT_NEAR(field(single_bin(b.g, kPlusH, b.m)), b.k, 1e-10);
  EXPECT_NEAR(field(single_bin(neg.g, kPlusH, neg.m)), -neg.k, 1e-10);
  EXPECT_NEAR(expect_dyn_momentum(single_bin(neg.g, kPlusH, neg.m)), neg.k, 1e-12);
  EXPECT_NEAR(field(single_bin(b.g, kMinusH, b.m)), -b.k, 1e-10);
}

TEST(Observables, PositionAndMomentumFormsAgree) {
  std::mt19937_64 rng(77);
  const Grid g = reference_grid();
  const Medium m = Medium::dielectric(1.7);
  for (int i = 0; i < 8; ++i) {
    const auto p = random_packet(g, rng, -100.0, 100.0);
    const auto sp = to_momentum(p);
    const double pk = expect_dyn_momentum(sp);
    EXPECT_LT(std::abs(expect_dyn_momentum(p) - pk), 1e-10 * std::max(1.0, std::abs(pk)));
    const double hk = expect_dyn_hamiltonian(sp, m);
    EXPECT_LT(std::abs(expect_dyn_hamiltonian(p, m) - hk), 1e-10 * std::max(1.0, std::abs(hk)));
  }
}

TEST(Observables, SignRelationForPositiveSupport) {
  const Grid g = reference_grid();
  const Medium m = Medium::dielectric(1.2);
  for (Channel ch : {kPlusH, kMinusV}) {
    const auto sp = to_momentum(gaussian_packet(g, ch, 0.0, 25.0, 2.0));
    const double e = expect_energy(sp, m);
    EXPECT_LT(relative(expect_dyn_hamiltonian(sp, m), e), 1e-10);
    EXPECT_LT(relative(expect_dyn_momentum(sp), sign(ch.s) * expect_dyn_hamiltonian(sp, m) / m.speed()), 1e-10);
  }
}

TEST(Observables, InvariantUnderPhaseAndTranslation) {
  const Grid g = reference_grid();
  const Medium m = Medium::air();
  const auto a = gaussian_packet(g, kPlusV, -20.0, 12.0, 2.0);
  const auto b = gaussian_packet(g, kPlusV, 35.0, 12.0, 2.0).scaled(std::polar(1.0, 1.1));
  const ObservableReport ra = observe(a, m);
  const ObservableReport rb = observe(b, m);
  EXPECT_LT(relative(rb.energy, ra.energy), 1e-12);
  EXPECT_LT(relative(rb.dyn_momentum, ra.dyn_momentum), 1e-12);
  EXPECT_LT(relative(rb.field_momentum, ra.field_momentum), 1e-12);
}

TEST(Observables, Abraham) {
  EXPECT_EQ(abraham_momentum(45.0, 1.0), 45.0);
  EXPECT_EQ(abraham_momentum(8.0, 2.0), 2.0);
  EXPECT_THROW(abraham_momentum(1.0, 0.0), Error);
  const auto p = gaussian_packet(reference_grid(), kPlusH, 0.0, 30.0, 2.0);
  const ObservableReport r = observe(p, Medium::air());
  EXPECT_DOUBLE_EQ(r.abraham_momentum, r.field_momentum);
  EXPECT_LT(relative(r.field_momentum, r.dyn_momentum), 1e-12);
}

TEST(Observables, ReportsAdd) {
  ObservableReport a{1.0, 2.0, 3.0, 4.0, 5.0, 6.0, "air"};
  const ObservableReport b{0.5, 0.5, 0.5, 0.5, 0.5, 0.5, "n=2"};
  const ObservableReport c = a + b.scaled(2.0);
  EXPECT_EQ(c.photon_number, 2.0);
  EXPECT_EQ(c.abraham_momentum, 7.0);
  EXPECT_EQ(c.medium_tag, "mixed");
}

TEST(Observables, ConditionalOnEmptyBranch) {
  const Grid g = reference_grid();
  const auto p = gaussian_packet(g, kPlusH, -50.0, 30.0, 2.0);
  const ScatterOutcome out = interface_scatter(p, 1.0, 100.0);
  EXPECT_TRUE(out.reflected_empty);
  try {
    conditional_expectations(out, Branch::reflected);
    FAIL() << "expected undefined-conditional error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::undefined_conditional);
  }
}

TEST(Observables, ConditionalRatios) {
  const Grid g = reference_grid();
  const double n = 1.5;
  const auto in = gaussian_packet(g, kPlusH, -50.0, 30.0, 2.0);
  const double p_in = observe(in, Medium::air()).dyn_momentum;
  const ScatterOutcome out = interface_scatter(in, n, 100.0);
  EXPECT_LT(relative(conditional_expectations(out, Branch::transmitted).dyn_momentum / p_in, n), 1e-6);
  EXPECT_LT(relative(conditional_expectations(out, Branch::reflected).dyn_momentum / p_in, -1.0), 1e-10);

  const auto back = gaussian_packet(g, kMinusH, 50.0, 30.0, 2.0);
  const DirectionalMedia media{Medium::air(), Medium::dielectric(n)};
  const double q_in = observe(back, media).dyn_momentum;
  const ScatterOutcome out2 = interface_scatter(back, n, 150.0);
  EXPECT_LT(relative(conditional_expectations(out2, Branch::transmitted).dyn_momentum / q_in, 1.0 / n), 1e-6);
}
