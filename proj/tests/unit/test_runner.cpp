#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "pulsejitter/errors.hpp"
#include "pulsejitter/output.hpp"
#include "pulsejitter/runner.hpp"

using namespace pulsejitter;

namespace {

// Short, coarse version of the compression link; quick enough for unit tests.
const std::string kSmall = R"(
[pulse]
tau_ps = 1.0
energy_pJ = 2.4

[segment.1]
length_m = 300
loss_db_per_km = 0.4
n2_m2_per_W = 2.6e-20
aeff_um2 = 30
profile = increasing
beta_ps2_per_km = -12.75
ramp_length_m = 150

[segment.2]
length_m = compensate
loss_db_per_km = 0.4
n2_m2_per_W = 2.7e-20
aeff_um2 = 15
beta_ps2_per_km = 127.5

[numerics]
n_points = 2048
window_ps = 64
dz_m = 1
record_every_m = 10
)";

std::string scenario_path(const char* name) { return std::string(PJ_SCENARIO_DIR) + "/" + name + ".ini"; }

std::string csv(const RunOutput& out) {
  std::ostringstream os;
  write_records_csv(os, out);
  return os.str();
}

}  // namespace

TEST_CASE("run produces a consistent record table") {
  const RunOutput out = run(parse_scenario(kSmall, "small"));
  REQUIRE(out.records.size() > 2);
  CHECK(out.records.front().z == 0.0);
  CHECK(out.final_report.squeezing_ratio == doctest::Approx(report(out.records.back().jitter, out.final_moments).squeezing_ratio));
  CHECK(out.narrowing == doctest::Approx(out.initial_moments.domega_rms / out.final_moments.domega_rms));
  REQUIRE(out.ideal_narrowing.has_value());
  CHECK(*out.ideal_narrowing > out.narrowing);
  CHECK(out.t2_initial == doctest::Approx(std::pow(out.initial_moments.dt_rms, 2) / out.initial_moments.n_photons));
  CHECK_FALSE(out.convergence.checked);
  CHECK(out.convergence.dz_used == 1.0);
  CHECK(out.profiles.empty());

  const std::string text = csv(out);
  std::istringstream lines(text);
  std::string header;
  std::getline(lines, header);
  CHECK(header == kRecordHeader);
  std::size_t rows = 0;
  for (std::string line; std::getline(lines, line);) {
    ++rows;
    CHECK(std::count(line.begin(), line.end(), ',') == 13);
  }
  CHECK(rows == out.records.size());
}

TEST_CASE("identical scenarios give byte-identical tables") {
  const Scenario sc = parse_scenario(kSmall, "small");
  const RunOutput a = run(sc);
  const RunOutput b = run(sc);
  CHECK(csv(a) == csv(b));
  CHECK(summary_json(a) == summary_json(b));
}

TEST_CASE("nine significant digits") {
  CHECK(format_number(1.0 / 3.0) == "0.333333333");
  CHECK(format_number(-4.25e-3) == "-0.00425");
  CHECK(format_number(1.87e7) == "18700000");
  CHECK(format_number(6.02214076e23) == "6.02214076e+23");
}

TEST_CASE("step override and convergence check") {
  const Scenario sc = parse_scenario(kSmall, "small");
  const RunOutput out = run(sc, {0.5, true});
  CHECK(out.convergence.dz_used == 0.5);
  CHECK(out.convergence.checked);
  CHECK(out.convergence.relative_delta < 5e-3);
  CHECK(out.convergence.halved_R == doctest::Approx(out.final_report.squeezing_ratio).epsilon(5e-3));
  CHECK_THROWS_AS(run(sc, {-1.0, false}), ConfigError);
}

TEST_CASE("profile snapshots") {
  const Scenario sc = parse_scenario(kSmall + "[output]\nprofiles = true\nprofile_every_m = 100\nprofile_decimate = 4\n");
  const RunOutput out = run(sc);
  REQUIRE(out.profiles.size() >= 4);
  CHECK(out.profiles.front().z == 0.0);
  // first record at or past each 100 m mark
  CHECK(out.profiles[1].z >= 100.0);
  CHECK(out.profiles[1].z < 100.0 + out.stepping[0].step);
  CHECK(out.profiles.front().intensity.size() == 2048 / 4);
  CHECK(out.profiles.front().spectrum.size() == 2048 / 4);

  const auto dir = std::filesystem::temp_directory_path() / "pulsejitter_runner_test";
  std::filesystem::remove_all(dir);
  write_run(dir, out);
  for (const char* f : {"records.csv", "summary.json", "intensity.csv", "spectrum.csv"})
    CHECK(std::filesystem::exists(dir / f));
  std::ifstream in(dir / "intensity.csv");
  std::string first;
  std::getline(in, first);
  CHECK(std::count(first.begin(), first.end(), ',') == 2048 / 4);
  std::filesystem::remove_all(dir);
}

TEST_CASE("parameter ranges") {
  const ParamRange r = ParamRange::parse("segment.1.loss_db_per_km=0.2:0.4:3");
  CHECK(r.key == "segment.1.loss_db_per_km");
  CHECK(r.values() == std::vector<double>{0.2, 0.30000000000000004, 0.4});
  CHECK(ParamRange::parse("pulse.tau_ps=1:2:1").values() == std::vector<double>{1.0});
  CHECK(ParamRange::parse("pulse.tau_ps=1:2:0").values().empty());
  CHECK(ParamRange::parse("a.b=-1e-3:5e-3:2").values() == std::vector<double>{-1e-3, 5e-3});
  for (const char* bad : {"pulse.tau_ps", "=1:2:3", "pulse.tau_ps=1:2", "pulse.tau_ps=a:2:3", "pulse.tau_ps=1:2:-1",
                          "pulse.tau_ps=1:inf:2"})
    CHECK_THROWS_AS(ParamRange::parse(bad), ConfigError);
}

TEST_CASE("empty sweep") {
  const auto t = ScenarioTemplate::parse(kSmall, "small");
  const SweepTable none = sweep(t, {});
  CHECK(none.rows.empty());
  const SweepTable zero = sweep(t, {ParamRange::parse("pulse.tau_ps=1:2:0")});
  CHECK(zero.rows.empty());
  CHECK(zero.keys.size() == 1);
}

TEST_CASE("sweep rows are ordered and match single runs") {
  const auto t = ScenarioTemplate::parse(kSmall, "small");
  const std::vector<ParamRange> ranges = {ParamRange::parse("segment.1.loss_db_per_km=0.2:0.4:2"),
                                          ParamRange::parse("segment.1.ramp_length_m=100:200:2")};
  const SweepTable table = sweep(t, ranges, 3);
  REQUIRE(table.rows.size() == 4);
  CHECK(table.rows[0].params == std::vector<double>{0.2, 100.0});
  CHECK(table.rows[1].params == std::vector<double>{0.2, 200.0});
  CHECK(table.rows[2].params == std::vector<double>{0.4, 100.0});
  CHECK(table.rows[3].params == std::vector<double>{0.4, 200.0});
  for (const auto& row : table.rows) {
    REQUIRE(row.ok);
    ScenarioTemplate single = t;
    single.set("segment.1.loss_db_per_km", row.params[0]);
    single.set("segment.1.ramp_length_m", row.params[1]);
    const RunOutput out = run(single.instantiate());
    CHECK(row.squeezing_db == out.final_report.squeezing_db);
    CHECK(row.narrowing == out.narrowing);
  }

  const SweepTable again = sweep(t, ranges, 1);
  std::ostringstream a, b;
  write_sweep_csv(a, table);
  write_sweep_csv(b, again);
  CHECK(a.str() == b.str());
}

TEST_CASE("sweep records failed points without aborting") {
  const auto t = ScenarioTemplate::parse(kSmall, "small");
  // a 0.1 ps pulse on a 2 ps window violates the 30 tau rule only at the second point
  ScenarioTemplate narrow = t;
  narrow.set("numerics.window_ps", 40.0);
  const SweepTable table = sweep(narrow, {ParamRange::parse("pulse.tau_ps=1:2:2")});
  REQUIRE(table.rows.size() == 2);
  CHECK(table.rows[0].ok);
  CHECK_FALSE(table.rows[1].ok);
  CHECK(table.rows[1].error.find("30 tau") != std::string::npos);
  CHECK_THROWS_AS(sweep(t, {ParamRange::parse("pulse.nonsense=1:2:2")}), ConfigError);
}

TEST_CASE("adiabaticity diagnostic grows with the ramp length") {
  auto t = ScenarioTemplate::parse(kSmall, "small");
  double prev = 0.0;
  for (double lb : {50.0, 100.0, 200.0, 400.0, 800.0}) {
    t.set("segment.1.ramp_length_m", lb);
    const double a = adiabaticity(build(t.instantiate()));
    CHECK(a > prev);
    prev = a;
  }
  t.set("segment.1.ramp_length_m", 150.0);
  const std::string flat = R"(
[pulse]
tau_ps = 1
n_photons = soliton
[segment.1]
length_m = 10
n2_m2_per_W = 2.6e-20
aeff_um2 = 30
beta_ps2_per_km = -4
)";
  CHECK(std::isinf(adiabaticity(build(parse_scenario(flat)))));
}

TEST_CASE("analytic comparisons") {
  for (const char* name : {"linear_nondispersive", "linear_dispersive", "frozen_soliton"}) {
    CAPTURE(name);
    const CompareResult r = compare_analytic(load_scenario(scenario_path(name)));
    CHECK(r.passed);
    CHECK(r.max_relative_deviation < 1e-6);
    CHECK(r.rows.size() > 10);
    CHECK(r.rows.front().z == 0.0);
  }
  CHECK_THROWS_AS(compare_analytic(parse_scenario(kSmall)), ConfigError);
  CHECK_THROWS_AS(compare_analytic(parse_scenario(kSmall + "[analytic]\nregime = linear_dispersive\n")), ConfigError);
  CHECK_THROWS_AS(compare_analytic(parse_scenario(kSmall + "[analytic]\nregime = frozen_soliton\n")), ConfigError);

  // an impossible tolerance is reported, not thrown
  auto t = ScenarioTemplate::load(scenario_path("linear_dispersive"));
  t.set("analytic.tolerance", 1e-15);
  const CompareResult strict = compare_analytic(t.instantiate());
  CHECK_FALSE(strict.passed);
}
