#pragma once

#include "nlslab/config.hpp"

#include <map>
#include <string>
#include <vector>

namespace nlslab {

// One verified inequality or behavior: LHS, RHS, their ratio, and named
// diagnostics. Series columns are aligned with series_t.
struct EstimateReport {
    std::string experiment;
    double lhs = 0.0;
    double rhs = 0.0;
    double ratio = 0.0;
    std::map<std::string, double> aux;
    std::vector<double> series_t;
    std::map<std::string, std::vector<double>> series;
    GuardStats guards;
    std::string config_canonical;
    std::string config_hash;
    std::uint64_t seed = 0;
    double wall_time_s = 0.0; // excluded from deterministic outputs
    bool pass = true;         // experiments with a built-in assertion
    std::string note;
};

// Validates, runs, and fills everything except wall_time_s.
EstimateReport run_experiment(const ExperimentConfig& cfg);

// Same, additionally streaming snapshot files + manifest into snapshot_dir
// when the config asks for stored snapshots.
EstimateReport run_experiment(const ExperimentConfig& cfg,
                              const std::filesystem::path& snapshot_dir);

// Individual experiments (cfg.experiment must match).
EstimateReport run_thm1_2d(const ExperimentConfig& cfg);
EstimateReport run_thm2_1d(const ExperimentConfig& cfg); // deriv and p3 variants
EstimateReport run_l4l8_2d(const ExperimentConfig& cfg);
EstimateReport run_monotonicity(const ExperimentConfig& cfg);
EstimateReport run_scattering(const ExperimentConfig& cfg);
EstimateReport run_i_energy(const ExperimentConfig& cfg);
EstimateReport run_scale_invariance(const ExperimentConfig& cfg);

// Least-squares slope of log(y) against log(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

// Composite trapezoid over uniformly spaced nodes.
double trapezoid(const std::vector<double>& values, double dt);

} // namespace nlslab
