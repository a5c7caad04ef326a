#include "pulsejitter/output.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "pulsejitter/errors.hpp"

namespace pulsejitter {

namespace {

using nlohmann::ordered_json;

// JSON has no infinity; non-finite values become null.
ordered_json number(double v) { return std::isfinite(v) ? ordered_json(v) : ordered_json(nullptr); }

ordered_json moments_json(const PulseMoments& m) {
  return {{"N", number(m.n_photons)},
          {"dt_ps", number(m.dt_rms)},
          {"chirp", number(m.chirp)},
          {"domega_per_ps", number(m.domega_rms)}};
}

std::ofstream open(const std::filesystem::path& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw ConfigError("cannot write " + path.string());
  return os;
}

}  // namespace

std::string format_number(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", value);
  return buf;
}

void write_records_csv(std::ostream& os, const RunOutput& out) {
  os << kRecordHeader << '\n';
  for (const auto& r : out.records) {
    const JitterReport rep = report(r.jitter, r.moments);
    const double cols[] = {r.z,
                           r.moments.n_photons,
                           r.moments.dt_rms,
                           r.moments.chirp,
                           r.moments.domega_rms,
                           rep.t2_total,
                           rep.components.diffusive,
                           rep.components.chirp_induced,
                           rep.components.gordon_haus,
                           rep.omega2_total,
                           rep.sql_t2,
                           rep.heisenberg_t2,
                           rep.squeezing_ratio,
                           rep.squeezing_db};
    for (std::size_t i = 0; i < std::size(cols); ++i) os << (i ? "," : "") << format_number(cols[i]);
    os << '\n';
  }
}

void write_sweep_csv(std::ostream& os, const SweepTable& table) {
  for (const auto& k : table.keys) os << k << ',';
  os << "status,R,R_db,T2_total_norm,T2_initial_norm,T2_diff_norm,T2_chirp_norm,T2_gh_norm,narrowing,adiabaticity\n";
  for (const auto& row : table.rows) {
    for (double p : row.params) os << format_number(p) << ',';
    if (!row.ok) {
      os << "failed,,,,,,,,,\n";
      continue;
    }
    os << "ok," << format_number(row.squeezing_ratio) << ',' << format_number(row.squeezing_db) << ','
       << format_number(row.t2_normalized) << ',' << format_number(row.normalized.initial_dispersive) << ','
       << format_number(row.normalized.diffusive) << ',' << format_number(row.normalized.chirp_induced) << ','
       << format_number(row.normalized.gordon_haus) << ',' << format_number(row.narrowing) << ','
       << format_number(row.adiabaticity) << '\n';
  }
}

void write_compare_csv(std::ostream& os, const CompareResult& result) {
  os << "z_m,T2_numeric_ps2,T2_analytic_ps2,rel_dev\n";
  for (const auto& r : result.rows)
    os << format_number(r.z) << ',' << format_number(r.numeric_t2) << ',' << format_number(r.analytic_t2) << ','
       << format_number(r.relative_deviation) << '\n';
}

void write_profile_matrix(std::ostream& os, const RunOutput& out, bool spectrum) {
  for (const auto& p : out.profiles) {
    os << format_number(p.z);
    for (double v : spectrum ? p.spectrum : p.intensity) os << ',' << format_number(v);
    os << '\n';
  }
}

std::string summary_json(const RunOutput& out) {
  const auto& rep = out.final_report;
  const double t0 = out.t2_initial;
  ordered_json j;
  j["scenario"] = out.name;
  j["z_end_m"] = number(out.records.back().z);
  j["grid"] = {{"n_points", out.grid.size()}, {"window_ps", number(out.grid.window())}};
  ordered_json steps = ordered_json::array();
  for (const auto& s : out.stepping) steps.push_back({{"steps", s.steps}, {"step_m", number(s.step)}});
  j["stepping"] = steps;
  j["initial"] = moments_json(out.initial_moments);
  j["final"] = moments_json(out.final_moments);
  j["narrowing"] = number(out.narrowing);
  j["ideal_narrowing"] = out.ideal_narrowing ? number(*out.ideal_narrowing) : ordered_json(nullptr);
  j["T2_initial_ps2"] = number(t0);
  j["T2_final_ps2"] = number(rep.t2_total);
  j["components_normalized"] = {{"initial_dispersive", number(rep.components.initial_dispersive / t0)},
                                {"diffusive", number(rep.components.diffusive / t0)},
                                {"chirp_induced", number(rep.components.chirp_induced / t0)},
                                {"gordon_haus", number(rep.components.gordon_haus / t0)},
                                {"total", number(rep.t2_total / t0)}};
  j["SQL_T2_ps2"] = number(rep.sql_t2);
  j["HL_T2_ps2"] = number(rep.heisenberg_t2);
  j["R"] = number(rep.squeezing_ratio);
  j["R_db"] = number(rep.squeezing_db);
  ordered_json conv = {{"dz_m", number(out.convergence.dz_used)}, {"checked", out.convergence.checked}};
  if (out.convergence.checked) {
    conv["R_halved"] = number(out.convergence.halved_R);
    conv["relative_delta"] = number(out.convergence.relative_delta);
  }
  j["convergence"] = conv;
  return j.dump(2) + "\n";
}

std::string compare_json(const std::string& name, const CompareResult& result) {
  ordered_json j;
  j["scenario"] = name;
  j["regime"] = std::string(to_string(result.regime));
  j["tolerance"] = number(result.tolerance);
  j["max_relative_deviation"] = number(result.max_relative_deviation);
  j["records"] = result.rows.size();
  j["passed"] = result.passed;
  return j.dump(2) + "\n";
}

void write_run(const std::filesystem::path& dir, const RunOutput& out) {
  std::filesystem::create_directories(dir);
  {
    auto os = open(dir / "records.csv");
    write_records_csv(os, out);
  }
  {
    auto os = open(dir / "summary.json");
    os << summary_json(out);
  }
  if (!out.profiles.empty()) {
    auto is = open(dir / "intensity.csv");
    write_profile_matrix(is, out, false);
    auto ss = open(dir / "spectrum.csv");
    write_profile_matrix(ss, out, true);
  }
}

}  // namespace pulsejitter
