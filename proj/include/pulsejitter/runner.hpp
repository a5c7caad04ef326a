#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pulsejitter/grid.hpp"
#include "pulsejitter/jitter.hpp"
#include "pulsejitter/propagator.hpp"
#include "pulsejitter/scenario.hpp"

namespace pulsejitter {

struct RunOptions {
  std::optional<double> dz_m;      // overrides numerics.dz_m
  bool check_convergence = false;  // rerun with halved steps
};

struct ConvergenceInfo {
  bool checked = false;
  double dz_used = 0.0;       // m, requested step
  double halved_R = 0.0;      // R at the end with dz/2 and half the step cap
  double relative_delta = 0.0;  // |R_half - R| / R
};

struct ProfileSnapshot {
  double z = 0.0;
  std::vector<double> intensity;  // |A|^2, photons/ps, every `decimate`-th sample
  std::vector<double> spectrum;   // |a|^2, photons ps, same decimation
};

struct RunOutput {
  std::string name;
  TimeGrid grid;
  std::vector<PropagationRecord> records;
  std::vector<SegmentStepping> stepping;
  PulseMoments initial_moments;
  PulseMoments final_moments;
  JitterReport final_report;
  double t2_initial = 0.0;          // <T^2(0)>, ps^2
  double narrowing = 0.0;           // dw(0) / dw(end)
  std::optional<double> ideal_narrowing;  // adiabatic soliton path through the first segment
  ConvergenceInfo convergence;
  std::vector<ProfileSnapshot> profiles;
  double runtime_s = 0.0;
};

/// Throws ConfigError or NumericalFailure.
RunOutput run(const Scenario& scenario, const RunOptions& options = {});

// "section.key=lo:hi:n", n evenly spaced values including both ends.
struct ParamRange {
  std::string key;
  double lo = 0.0;
  double hi = 0.0;
  std::size_t count = 0;

  static ParamRange parse(std::string_view text);
  std::vector<double> values() const;
};

struct SweepRow {
  std::vector<double> params;  // in the order of the ranges
  bool ok = false;
  std::string error;
  double squeezing_db = 0.0;
  double squeezing_ratio = 0.0;
  JitterComponents normalized;  // divided by <T^2(0)>
  double t2_normalized = 0.0;
  double narrowing = 0.0;
  double adiabaticity = 0.0;    // min |beta/beta'| / Lambda_ideal over the first segment
};

struct SweepTable {
  std::vector<std::string> keys;
  std::vector<SweepRow> rows;  // cartesian product, last range varying fastest
};

/// Runs every grid point independently and concurrently; row order is fixed.
SweepTable sweep(const ScenarioTemplate& base, const std::vector<ParamRange>& ranges, std::size_t max_workers = 0);

/// Smallest |beta/beta'| / Lambda along the ideal adiabatic path of the
/// first segment; +inf when that segment has constant dispersion.
double adiabaticity(const BuiltScenario& built);

struct CompareRow {
  double z = 0.0;
  double numeric_t2 = 0.0;
  double analytic_t2 = 0.0;
  double relative_deviation = 0.0;
};

struct CompareResult {
  AnalyticRegime regime = AnalyticRegime::None;
  double tolerance = 0.0;
  double max_relative_deviation = 0.0;
  bool passed = false;
  std::vector<CompareRow> rows;
};

/// Runs the jitter engine under the assumptions of the requested closed
/// form and reports the worst relative deviation of <T^2> over all records.
CompareResult compare_analytic(const Scenario& scenario);

}  // namespace pulsejitter
