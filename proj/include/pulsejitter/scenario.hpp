#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pulsejitter/fiber.hpp"
#include "pulsejitter/grid.hpp"
#include "pulsejitter/jitter_state.hpp"
#include "pulsejitter/moments.hpp"
#include "pulsejitter/propagator.hpp"

namespace pulsejitter {

// Scenario files are sectioned key = value text (see docs/scenario-format.md).
// Values are in datasheet units; build() converts them once.

enum class PulseShape { Sech, Gaussian };
enum class PhotonSource { Energy, Count, FundamentalSoliton };
enum class ProfileKind { Constant, Increasing };
enum class InitStatistics { Coherent, JointlyGaussian };
enum class AnalyticRegime { None, LinearNondispersive, LinearDispersive, FrozenSoliton };

struct PulseSpec {
  PulseShape shape = PulseShape::Sech;
  double tau_ps = 1.0;  // sech width tau, or Gaussian T0
  PhotonSource source = PhotonSource::Energy;
  double energy_pj = 0.0;
  double n_photons = 0.0;
  double wavelength_nm = 1550.0;
};

struct SegmentSpec {
  double length_m = 0.0;
  bool compensate_length = false;  // solve length for zero net dispersion
  double loss_db_per_km = 0.0;
  double n2_m2_per_w = 0.0;        // 0 switches the Kerr term off
  double aeff_um2 = 0.0;
  ProfileKind profile = ProfileKind::Constant;
  double beta_ps2_per_km = 0.0;    // constant value, or the end value of a taper
  double ramp_length_m = 0.0;
};

struct NumericsSpec {
  std::size_t n_points = 8192;
  double window_ps = 64.0;
  double dz_m = 0.25;
  double record_every_m = 5.0;
  double max_step_fraction = 1.0 / 200.0;
};

struct StatisticsSpec {
  InitStatistics kind = InitStatistics::Coherent;
  double big_b_per_ps = 0.0;
  double small_b_per_ps = 0.0;
};

struct OutputSpec {
  bool profiles = false;
  double profile_every_m = 50.0;
  std::size_t profile_decimate = 8;
};

struct AnalyticSpec {
  AnalyticRegime regime = AnalyticRegime::None;
  double tolerance = 1e-6;
};

struct Scenario {
  std::string name = "scenario";
  PulseSpec pulse;
  std::vector<SegmentSpec> segments;
  NumericsSpec numerics;
  StatisticsSpec statistics;
  OutputSpec outputs;
  AnalyticSpec analytic;
};

// Raw key/value form of a scenario file, kept so that sweeps can override
// individual entries and re-validate.  Keys are addressed as
// "section.key", e.g. "pulse.tau_ps" or "segment.1.ramp_length_m".
class ScenarioTemplate {
 public:
  static ScenarioTemplate parse(std::string_view text, std::string name = "scenario");
  static ScenarioTemplate load(const std::filesystem::path& path);

  const std::string& name() const noexcept { return name_; }
  void set(std::string_view key, double value);
  Scenario instantiate() const;

 private:
  struct Section {
    std::string name;
    std::vector<std::pair<std::string, std::string>> entries;
  };

  std::string name_;
  std::vector<Section> sections_;
};

Scenario parse_scenario(std::string_view text, std::string name = "scenario");
Scenario load_scenario(const std::filesystem::path& path);

// Scenario converted to canonical units and ready to propagate.
struct BuiltScenario {
  Envelope initial;
  FiberLink link;
  StepControl control;
  JitterState jitter_init;
  PulseMoments initial_moments;
  double lambda0_m = 0.0;
};

/// Throws ConfigError for inconsistent or unphysical settings.
BuiltScenario build(const Scenario& scenario);

std::string_view to_string(AnalyticRegime regime);

}  // namespace pulsejitter
