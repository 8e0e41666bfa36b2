#include "blip/propagation.hpp"

#include <cmath>

#include <fmt/format.h>

#include "blip/error.hpp"
#include "blip/spectral.hpp"

namespace blip {
namespace {

constexpr double kSupportTail = 1e-10;

void check_schedule(const std::vector<double>& times) {
  if (times.empty()) throw Error(ErrorKind::configuration, "schedule holds no report times");
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!std::isfinite(times[i]) || times[i] < 0.0) {
      throw Error(ErrorKind::configuration, fmt::format("report time {} is negative or not finite", times[i]));
    }
    if (i > 0 && !(times[i] > times[i - 1])) {
      throw Error(ErrorKind::configuration, "report times must be strictly increasing");
    }
  }
}

Snapshot snapshot(double t, BranchTag tag, const BlipWavePacket& p, const DirectionalMedia& media, bool asymptotic) {
  return Snapshot{t, tag, observe(p, media), centroid(p), asymptotic};
}

}  // namespace

std::string to_string(BranchTag b) {
  switch (b) {
    case BranchTag::incoming: return "incoming";
    case BranchTag::transmitted: return "transmitted";
    case BranchTag::reflected: return "reflected";
    case BranchTag::total: return "total";
  }
  return "unknown";
}

BlipWavePacket evolve_free(const BlipWavePacket& p, const Medium& m, double t) {
  return evolve_free(p, DirectionalMedia{m, m}, t);
}

BlipWavePacket evolve_free(const BlipWavePacket& p, const DirectionalMedia& media, double t) {
  const Grid& g = p.grid();
  for (Channel ch : kAllChannels) {
    const auto sup = support_interval(p, ch, kSupportTail);
    if (!sup) continue;
    const double shift = sign(ch.s) * media(ch.s).speed() * t;
    if (sup->lo + shift < g.x_min() || sup->hi + shift > g.x_max() - g.dx()) {
      throw Error(ErrorKind::domain_exit,
                  fmt::format("channel {} support [{:.6g}, {:.6g}] leaves the grid after t = {:.6g}", to_string(ch),
                              sup->lo + shift, sup->hi + shift, t));
    }
  }
  if (t == 0.0) return p;

  SpectralWavePacket sp = to_momentum(p);
  for (Channel ch : kAllChannels) {
    if (!sp.has_support(ch)) continue;
    const double c = media(ch.s).speed();
    auto a = sp[ch];
    for (std::size_t m = 0; m < g.size(); ++m) a[m] *= std::polar(1.0, -c * g.k(m) * t);
  }
  return to_position(sp);
}

ScatterRates scenario_rates(const Scenario& sc) {
  if (sc.coupling == CouplingSource::explicit_omega) {
    return rates_from_omega(MirrorCoupling{sc.omega, sc.left.speed()});
  }
  return fresnel_rates(sc.left.speed() / sc.right.speed());
}

ScenarioResult run_scenario(const Scenario& sc) {
  check_schedule(sc.schedule);
  const BlipWavePacket& p0 = sc.initial;
  if (guard_violation(p0, Flow::incoming) > kGuardTolerance) {
    throw Error(ErrorKind::support_guard, "initial packet is not incoming on one side of x = 0");
  }

  ScenarioResult res;
  res.rates = scenario_rates(sc);
  res.window = crossing_window(p0, sc.left, sc.right);
  const DirectionalMedia incoming_media{sc.left, sc.right};
  const DirectionalMedia outgoing_media{sc.right, sc.left};
  res.input = observe(p0, incoming_media);

  const bool same_medium = sc.left.speed() == sc.right.speed();

  for (double t : sc.schedule) {
    if (t <= res.window.contact) {
      BlipWavePacket p = evolve_free(p0, incoming_media, t);
      res.series.push_back(snapshot(t, BranchTag::incoming, p, incoming_media, true));
      res.series.push_back(snapshot(t, BranchTag::total, p, incoming_media, true));
      res.states.push_back(std::move(p));
    } else if (t < res.window.clear) {
      BlipWavePacket p = interface_state_at(p0, res.rates, sc.left, sc.right, t);
      if (sc.left == sc.right) {
        res.series.push_back(Snapshot{t, BranchTag::total, observe(p, sc.left), centroid(p), false});
        res.states.push_back(std::move(p));
        continue;
      }
      // Blips on either side carry the kinematics of the medium they are in.
      BlipWavePacket left_part(p.grid());
      BlipWavePacket right_part(p.grid());
      for (Channel ch : kAllChannels) {
        auto src = p[ch];
        auto l = left_part[ch];
        auto r = right_part[ch];
        for (std::size_t j = 0; j < p.grid().size(); ++j) (p.grid().x(j) < 0.0 ? l : r)[j] = src[j];
      }
      ObservableReport rep = observe(left_part, sc.left) + observe(right_part, sc.right);
      res.series.push_back(Snapshot{t, BranchTag::total, rep, centroid(p), false});
      res.states.push_back(std::move(p));
    } else {
      if (!res.outcome) {
        res.outcome = same_medium ? beamsplitter_scatter(p0, res.rates, sc.left, res.window.clear)
                                  : interface_scatter(p0, res.rates, sc.left, sc.right, res.window.clear);
      }
      const ScatterOutcome& out = *res.outcome;
      const double dt = t - out.time;
      BlipWavePacket trans = evolve_free(out.transmitted, outgoing_media, dt);
      res.series.push_back(snapshot(t, BranchTag::transmitted, trans, outgoing_media, true));
      BlipWavePacket total = trans;
      if (!out.reflected_empty) {
        BlipWavePacket refl = evolve_free(out.reflected, outgoing_media, dt);
        res.series.push_back(snapshot(t, BranchTag::reflected, refl, outgoing_media, true));
        total += refl;
      }
      res.series.push_back(snapshot(t, BranchTag::total, total, outgoing_media, true));
      res.states.push_back(std::move(total));
    }
  }
  return res;
}

}  // namespace blip
