#pragma once

#include "nlslab/experiments.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace nlslab {

inline constexpr int kSchemaVersion = 1;
const char* tool_version();

// All numeric output is full double precision (17 significant digits).
std::string format_double(double v);

// Deterministic aggregate row for one run (no timestamps, no wall time).
std::string aggregate_csv_header();
std::string aggregate_csv_row(const ExperimentConfig& cfg, const EstimateReport& rep,
                              int run_index, const std::string& status);

// report.json (atomic write-temp-then-rename).
void write_report_json(const EstimateReport& rep, const std::filesystem::path& path);

// manifest.json: tool version, config hash, seed, output paths, timestamps.
void write_manifest(const ExperimentConfig& cfg, const std::vector<std::string>& outputs,
                    const std::filesystem::path& path);

void write_text_atomic(const std::filesystem::path& path, const std::string& content);

// Post-hoc plot data: for every report.json under report_dir, emit
// <stem>_series.csv (t plus the report's series columns) and, for reports
// carrying (N, inc) pairs, <stem>_incN.csv. Optional minimal SVG line plots.
// Returns the emitted file names; throws ConfigError when no reports exist.
std::vector<std::string> emit_plotdata(const std::filesystem::path& report_dir, bool svg);

} // namespace nlslab
