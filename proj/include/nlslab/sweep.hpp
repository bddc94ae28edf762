#pragma once

#include "nlslab/report.hpp"

#include <filesystem>
#include <optional>

namespace nlslab {

struct RunOptions {
    int workers = 1;
    std::optional<std::uint64_t> seed_override;
    bool svg = false;
};

// Executes one experiment; writes report.json, manifest.json, aggregate.csv
// (one row) and, when requested by the config, the trajectory snapshots.
// Returns the report. Errors propagate after an error.json is written.
EstimateReport run_to_dir(const ExperimentConfig& cfg, const std::filesystem::path& out_dir,
                          const RunOptions& opts = {});

struct SweepResult {
    int total = 0;
    int failed = 0;
    std::filesystem::path aggregate_csv;
    std::filesystem::path summary_json;
};

// Cross product of one dotted config key over the given values. Runs are
// independent jobs on a bounded worker pool; rows are ordered by value index
// regardless of completion order. Partial failures mark the row and continue.
SweepResult sweep(const ExperimentConfig& base, const std::string& param,
                  const std::vector<std::string>& values, const std::filesystem::path& out_dir,
                  const RunOptions& opts = {});

} // namespace nlslab
