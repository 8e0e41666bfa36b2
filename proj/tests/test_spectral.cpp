#include <gtest/gtest.h>

#include <random>

#include "blip/spectral.hpp"
#include "support.hpp"

using namespace blip;
using namespace blip::testing;

TEST(Spectral, GaussianTransformMatchesClosedForm) {
  const Grid g = reference_grid();
  for (Channel ch : {kPlusH, kMinusV}) {
    const double s = sign(ch.s);
    const auto p = gaussian_packet(g, ch, -50.0, 30.0, 2.0);
    const auto sp = to_momentum(p);
    double worst = 0.0;
    for (std::size_t m = 0; m < g.size(); ++m) {
      worst = std::max(worst, std::abs(sp[ch][m] - gaussian_k(g.k(m), s, -50.0, 30.0, 2.0)));
    }
    // phases k x reach ~2.5e4 rad on this grid, so a few 1e-12 is the floor
    EXPECT_LT(worst, 1e-11) << to_string(ch);
  }
}

TEST(Spectral, RoundTrip) {
  std::mt19937_64 rng(11);
  const Grid g = small_grid();
  const auto p = random_packet(g, rng, -20.0, 20.0);
  const auto back = to_position(to_momentum(p));
  for (Channel ch : kAllChannels)
    for (std::size_t j = 0; j < g.size(); ++j) EXPECT_NEAR(std::abs(back[ch][j] - p[ch][j]), 0.0, 1e-13);
}

TEST(Spectral, Parseval) {
  std::mt19937_64 rng(12);
  const Grid g = small_grid();
  for (int trial = 0; trial < 5; ++trial) {
    const auto p = random_packet(g, rng, -20.0, 20.0);
    const auto sp = to_momentum(p);
    double k_mass = 0.0;
    for (Channel ch : kAllChannels)
      for (Complex z : sp[ch]) k_mass += std::norm(z) * g.dk();
    EXPECT_NEAR(k_mass, norm(p), 1e-12);
  }
}

TEST(Spectral, SingleBinIsPlaneWave) {
  const Grid g = small_grid();
  const std::size_t m = bin_of(g, 5.0);
  for (Channel ch : {kPlusH, kMinusH}) {
    const auto p = to_position(single_bin(g, ch, m));
    const double s = sign(ch.s);
    const Complex ref = p[ch][0] / std::polar(1.0, s * g.k(m) * g.x(0));
    for (std::size_t j = 0; j < g.size(); j += 97) {
      EXPECT_NEAR(std::abs(p[ch][j] - ref * std::polar(1.0, s * g.k(m) * g.x(j))), 0.0, 1e-13);
    }
    EXPECT_NEAR(std::abs(ref), std::sqrt(g.dk() / (2.0 * std::numbers::pi)), 1e-14);
  }
}

TEST(Spectral, ShiftTheorem) {
  // A lattice shift by an integer number of cells multiplies psi~ by exp(-i s k a).
  const Grid g = small_grid();
  const auto p = gaussian_packet(g, kMinusH, 3.0, 4.0, 1.5);
  const std::size_t shift = 40;
  BlipWavePacket q(g);
  for (std::size_t j = shift; j < g.size(); ++j) q[kMinusH][j] = p[kMinusH][j - shift];
  const double a = static_cast<double>(shift) * g.dx();
  const auto sp = to_momentum(p);
  const auto sq = to_momentum(q);
  for (std::size_t m = 0; m < g.size(); ++m) {
    EXPECT_NEAR(std::abs(sq[kMinusH][m] - std::polar(1.0, +1.0 * g.k(m) * a) * sp[kMinusH][m]), 0.0, 1e-12);
  }
}

TEST(Spectral, DerivativeMatchesClosedForm) {
  const Grid g = reference_grid();
  for (Channel ch : {kPlusV, kMinusH}) {
    const auto p = gaussian_packet(g, ch, 10.0, 20.0, 2.0);
    const auto d = spectral_derivative(p, ch);
    double worst = 0.0;
    for (std::size_t j = 0; j < g.size(); ++j) {
      worst = std::max(worst, std::abs(d[j] - gaussian_dx(g.x(j), sign(ch.s), 10.0, 20.0, 2.0)));
    }
    EXPECT_LT(worst, 1e-10) << to_string(ch);
  }
}

TEST(Spectral, SpectrumAtLatticePointsEqualsTransform) {
  std::mt19937_64 rng(5);
  const Grid g = small_grid();
  const auto p = random_packet(g, rng, -20.0, 20.0);
  const auto sp = to_momentum(p);
  for (Channel ch : kAllChannels) {
    const auto direct = spectrum_at(p, ch, {g.k_min(), g.dk()}, g.size());
    for (std::size_t m = 0; m < g.size(); ++m) EXPECT_NEAR(std::abs(direct[m] - sp[ch][m]), 0.0, 1e-12);
  }
}

TEST(Spectral, SpectrumAtOffLatticePoints) {
  const Grid g = reference_grid();
  const auto p = gaussian_packet(g, kPlusH, -50.0, 30.0, 2.0);
  const kernels::Progression ks{25.0, 0.0137};
  const std::size_t count = 700;
  const auto v = spectrum_at(p, kPlusH, ks, count);
  for (std::size_t i = 0; i < count; ++i) {
    EXPECT_NEAR(std::abs(v[i] - gaussian_k(ks.at(i), 1.0, -50.0, 30.0, 2.0)), 0.0, 1e-12);
  }
}

TEST(Spectral, SpectrumAtVanishesOutsideBand) {
  const Grid g = small_grid();
  const auto p = gaussian_packet(g, kPlusH, 0.0, 5.0, 1.0);
  const double edge = -g.k_min();
  const auto v = spectrum_at(p, kPlusH, {edge - 2.0 * g.dk(), g.dk()}, 5);
  EXPECT_NE(v[0], Complex{});
  EXPECT_EQ(v[2], Complex{});
  EXPECT_EQ(v[4], Complex{});
}

TEST(Spectral, AmplitudeAtOffGridPoints) {
  const Grid g = reference_grid();
  for (Channel ch : {kPlusH, kMinusV}) {
    const auto p = gaussian_packet(g, ch, 40.0, 15.0, 2.0);
    const auto sp = to_momentum(p);
    const kernels::Progression ys{30.0031, 0.0173};
    const std::size_t count = 1000;
    const auto v = amplitude_at(sp, ch, ys, count);
    for (std::size_t i = 0; i < count; ++i) {
      EXPECT_NEAR(std::abs(v[i] - gaussian_x(ys.at(i), sign(ch.s), 40.0, 15.0, 2.0)), 0.0, 1e-11);
    }
  }
}

TEST(Spectral, AmplitudeAtLatticePoints) {
  std::mt19937_64 rng(6);
  const Grid g = small_grid();
  const auto p = random_packet(g, rng, -20.0, 20.0);
  const auto sp = to_momentum(p);
  for (Channel ch : kAllChannels) {
    const auto v = amplitude_at(sp, ch, {g.x_max() - g.dx(), -g.dx()}, g.size());
    for (std::size_t j = 0; j < g.size(); ++j) {
      EXPECT_NEAR(std::abs(v[j] - p[ch][g.size() - 1 - j]), 0.0, 1e-12);
    }
  }
}
