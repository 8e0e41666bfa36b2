#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "blip/lattice.hpp"
#include "blip/propagation.hpp"

namespace blip::cli {

struct GridSpec {
  double x_min = -200.0;
  double x_max = 200.0;
  std::size_t n_points = 16384;
};

struct PacketSpec {
  Channel channel{Direction::plus, Polarization::H};
  double x0 = -50.0;
  double k0 = 30.0;
  double sigma = 2.0;
};

// Either a refractive index or an (epsilon, mu) pair; neither means air.
struct MediumSpec {
  std::optional<double> n;
  std::optional<double> epsilon;
  std::optional<double> mu;
};

struct MediaSpec {
  double c0 = 1.0;
  double hbar = 1.0;
  double area = 1.0;
  MediumSpec left;
  MediumSpec right;
};

struct CouplingSpec {
  CouplingSource source = CouplingSource::from_n;
  Complex omega{};
};

struct OutputSpec {
  std::optional<std::string> dir;
  bool snapshots = false;
};

struct Tolerances {
  double energy = 1e-9;
  double momentum = 1e-6;
  double conditional = 1e-6;
  double unitarity = 1e-9;
};

struct RunConfig {
  GridSpec grid;
  PacketSpec packet;
  MediaSpec media;
  CouplingSpec coupling;
  std::vector<double> times;
  OutputSpec output;
  Tolerances tolerance;
};

/// Parses the sectioned key = value format. Unknown sections or keys,
/// duplicates and malformed values raise a configuration error naming the key
/// and its line.
RunConfig parse_run_config(std::string_view text);
RunConfig load_run_config(const std::filesystem::path& path);

Medium build_medium(const MediaSpec& media, const MediumSpec& spec);

/// Grid, media and initial packet of the configured scenario. Precondition
/// failures of the underlying constructors surface as configuration errors.
Scenario build_scenario(const RunConfig& cfg);

}  // namespace blip::cli
