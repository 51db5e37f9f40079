#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "rassim/analysis.hpp"
#include "rassim/scenario.hpp"

namespace rassim {

/// FNV-1a 64 over a canonical rendering of the effective scenario (seed
/// overrides included), hex-encoded.
std::string scenario_hash(const Scenario& scenario);

/// Stage-and-rename write; the target never holds a partial file.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

/// "# tool ... / # seed ... / # scenario ..." comment block for CSV artifacts.
std::string csv_metadata_header(const Scenario& scenario);

/// "-inf" for non-finite dB values, %.12g otherwise.
std::string format_db(double db);

std::string jsnr_sweep_csv(const Scenario& scenario, const std::vector<JsnrReport>& reports,
                           bool sweep_over_n);

/// Full JsnrReport as a JSON document string (per-trial ratios included).
std::string jsnr_report_json(const Scenario& scenario, const JsnrReport& report);

/// All grid points as one JSON document with shared metadata.
std::string jsnr_reports_json(const Scenario& scenario, const std::vector<JsnrReport>& reports);

}  // namespace rassim
