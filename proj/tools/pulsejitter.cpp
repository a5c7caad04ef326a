// pulsejitter: run scenarios, sweep parameters, check closed forms.
//
// Exit codes: 0 success, 2 configuration error, 3 numerical failure,
// 4 analytic comparison outside tolerance.

#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "pulsejitter/errors.hpp"
#include "pulsejitter/output.hpp"
#include "pulsejitter/runner.hpp"
#include "pulsejitter/scenario.hpp"

namespace fs = std::filesystem;
using namespace pulsejitter;

namespace {

constexpr int kConfigError = 2;
constexpr int kNumericalFailure = 3;
constexpr int kCompareFailure = 4;

fs::path output_dir(const std::string& flag, const std::string& fallback) {
  if (const char* env = std::getenv("PULSEJITTER_OUT_DIR"); env && *env) return env;
  return flag.empty() ? fallback : flag;
}

int do_run(const std::string& file, const std::string& out_flag, std::optional<double> dz, bool convergence) {
  const Scenario sc = load_scenario(file);
  const RunOutput out = run(sc, {dz, convergence});
  const fs::path dir = output_dir(out_flag, "out/" + sc.name);
  write_run(dir, out);
  std::cout << sc.name << ": R = " << format_number(out.final_report.squeezing_ratio) << " ("
            << format_number(out.final_report.squeezing_db) << " dB), narrowing " << format_number(out.narrowing);
  if (out.convergence.checked) std::cout << ", step-halving delta " << format_number(out.convergence.relative_delta);
  std::cout << "\nwrote " << (dir / "records.csv").string() << '\n';
  return 0;
}

int do_sweep(const std::string& file, const std::vector<std::string>& params, const std::string& out_flag) {
  const ScenarioTemplate base = ScenarioTemplate::load(file);
  std::vector<ParamRange> ranges;
  for (const auto& p : params) ranges.push_back(ParamRange::parse(p));
  const SweepTable table = sweep(base, ranges);

  const fs::path dir = output_dir(out_flag, "out/" + base.name() + "_sweep");
  fs::create_directories(dir);
  std::ofstream os(dir / "sweep.csv", std::ios::binary);
  if (!os) throw ConfigError("cannot write " + (dir / "sweep.csv").string());
  write_sweep_csv(os, table);

  std::size_t failed = 0;
  for (const auto& row : table.rows)
    if (!row.ok) {
      ++failed;
      std::cerr << "sweep point failed: " << row.error << '\n';
    }
  std::cout << table.rows.size() << " points, " << failed << " failed\nwrote " << (dir / "sweep.csv").string() << '\n';
  return failed ? kNumericalFailure : 0;
}

int do_compare(const std::string& file, const std::string& out_flag) {
  const Scenario sc = load_scenario(file);
  const CompareResult res = compare_analytic(sc);
  const std::string json = compare_json(sc.name, res);
  std::cout << json;
  if (!out_flag.empty() || std::getenv("PULSEJITTER_OUT_DIR")) {
    const fs::path dir = output_dir(out_flag, "");
    fs::create_directories(dir);
    std::ofstream(dir / "compare.csv", std::ios::binary) << [&] {
      std::ostringstream s;
      write_compare_csv(s, res);
      return s.str();
    }();
    std::ofstream(dir / "compare.json", std::ios::binary) << json;
  }
  return res.passed ? 0 : kCompareFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum timing jitter of solitons in lossy, dispersion-varying fiber"};
  app.require_subcommand(1);

  std::string file, out_dir;
  std::optional<double> dz;
  bool convergence = false;
  std::vector<std::string> params;

  auto* run_cmd = app.add_subcommand("run", "propagate a scenario and write records.csv and summary.json");
  run_cmd->add_option("scenario", file, "scenario file")->required()->check(CLI::ExistingFile);
  run_cmd->add_option("--out", out_dir, "output directory (PULSEJITTER_OUT_DIR overrides)");
  run_cmd->add_option("--dz", dz, "requested step length in metres");
  run_cmd->add_flag("--check-convergence", convergence, "rerun with halved steps and report the change in R");

  auto* sweep_cmd = app.add_subcommand("sweep", "run a scenario over a grid of parameter values");
  sweep_cmd->add_option("template", file, "scenario file")->required()->check(CLI::ExistingFile);
  sweep_cmd->add_option("--param", params, "section.key=lo:hi:n, repeatable");
  sweep_cmd->add_option("--out", out_dir, "output directory (PULSEJITTER_OUT_DIR overrides)");

  auto* cmp_cmd = app.add_subcommand("compare-analytic", "check the jitter engine against a closed form");
  cmp_cmd->add_option("scenario", file, "scenario file")->required()->check(CLI::ExistingFile);
  cmp_cmd->add_option("--out", out_dir, "directory for compare.csv and compare.json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kConfigError;
  }

  try {
    if (*run_cmd) return do_run(file, out_dir, dz, convergence);
    if (*sweep_cmd) return do_sweep(file, params, out_dir);
    return do_compare(file, out_dir);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const DomainError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const NumericalFailure& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kNumericalFailure;
  }
}
