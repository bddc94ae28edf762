#pragma once

#include "nlslab/initial.hpp"
#include "nlslab/solver.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace nlslab {

enum class ExperimentKind {
    thm1_2d,
    thm2_1d_deriv,
    thm2_1d_p3,
    l4l8_2d,
    monotonicity,
    scattering,
    i_energy,
    scale_invariance,
};

std::string to_string(ExperimentKind k);
ExperimentKind experiment_from_string(const std::string& s); // throws ConfigError

// Experiment-specific knobs.
struct ExperimentParams {
    std::vector<double> n_dyadic; // i_energy N list (angular scale)
    double s = 0.0;               // I-operator regularity
    double r0 = 0.5;              // weight scale
    double epsilon = 0.0;         // erf smoothing; 0 = auto (8h)
    double lambda = 2.0;          // rescaling factor
    std::uint64_t sample_seed = 0;
    std::uint64_t max_direct_pairs = 1ull << 29;
};

struct GridSpec {
    int dim = 1;
    double length = 64.0;
    int points = 1024;
};

struct ExperimentConfig {
    ExperimentKind experiment = ExperimentKind::thm2_1d_deriv;
    std::uint64_t seed = 0;
    GridSpec grid;
    SolverConfig solver;
    InitialSpec initial;
    ExperimentParams params;
    bool store_snapshots = false;

    void validate() const; // throws ConfigError naming the offending key
};

// Flat sectioned text: [section] lines of key = value, '#' comments.
// Sections: experiment, grid, solver, initial, params, output.
ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig parse_config_file(const std::string& path);

// Sorted sections/keys, single-space normalized values; hashing input.
std::string canonical_text(const ExperimentConfig& cfg);
std::uint64_t fnv1a64(const std::string& s);
std::string config_hash(const ExperimentConfig& cfg); // 16 hex digits

// Serialize back out (canonical form); parse(serialize(c)) == c.
std::string to_config_text(const ExperimentConfig& cfg);

// Assign one "section.key" from a string value (sweep overrides).
void apply_override(ExperimentConfig& cfg, const std::string& dotted_key, const std::string& value);

} // namespace nlslab
