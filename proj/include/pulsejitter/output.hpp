#pragma once

#include <filesystem>
#include <ostream>
#include <string>

#include "pulsejitter/runner.hpp"

namespace pulsejitter {

inline constexpr const char* kRecordHeader =
    "z_m,N,dt_ps,chirp,domega_per_ps,T2_total_ps2,T2_diff_ps2,T2_chirp_ps2,T2_gh_ps2,Omega2_per_ps2,SQL_T2_ps2,HL_T2_ps2,R,"
    "R_db";

/// 9 significant digits, locale independent.
std::string format_number(double value);

void write_records_csv(std::ostream& os, const RunOutput& out);
void write_sweep_csv(std::ostream& os, const SweepTable& table);
void write_compare_csv(std::ostream& os, const CompareResult& result);
/// One row per snapshot: z followed by the decimated samples.
void write_profile_matrix(std::ostream& os, const RunOutput& out, bool spectrum);

std::string summary_json(const RunOutput& out);
std::string compare_json(const std::string& name, const CompareResult& result);

/// records.csv, summary.json and, when captured, intensity.csv and spectrum.csv.
void write_run(const std::filesystem::path& dir, const RunOutput& out);

}  // namespace pulsejitter
