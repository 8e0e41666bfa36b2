#pragma once

#include <optional>
#include <string>
#include <vector>

#include "blip/lattice.hpp"
#include "blip/observables.hpp"
#include "blip/scattering.hpp"

namespace blip {

/// psi~(k) <- exp(-i c k t) psi~(k) in every channel, i.e. psi_s(x) -> psi_s(x - s c t).
BlipWavePacket evolve_free(const BlipWavePacket& p, const Medium& m, double t);

/// Right-movers propagate in media.plus, left-movers in media.minus.
BlipWavePacket evolve_free(const BlipWavePacket& p, const DirectionalMedia& media, double t);

enum class CouplingSource { from_n, explicit_omega };

/// Two media meeting at x = 0 and a packet approaching the surface.
struct Scenario {
  Medium left;
  Medium right;
  BlipWavePacket initial;
  CouplingSource coupling = CouplingSource::from_n;
  Complex omega{};  // used with CouplingSource::explicit_omega
  std::vector<double> schedule;
};

enum class BranchTag { incoming, transmitted, reflected, total };

std::string to_string(BranchTag b);

struct Snapshot {
  double time = 0.0;
  BranchTag branch = BranchTag::total;
  ObservableReport report;
  double centroid = 0.0;
  bool asymptotic = true;
};

struct ScenarioResult {
  ScatterRates rates;
  CrossingWindow window;
  ObservableReport input;
  std::vector<Snapshot> series;
  // Scattered once at window.clear, if the schedule reaches that far.
  std::optional<ScatterOutcome> outcome;
  // The state at each report time, aligned with the schedule.
  std::vector<BlipWavePacket> states;
};

/// Rates used by the scenario: Fresnel rates of n = c_left / c_right, or
/// rates_from_omega with c_ref = c_left for an explicit coupling.
ScatterRates scenario_rates(const Scenario& sc);

ScenarioResult run_scenario(const Scenario& sc);

}  // namespace blip
