#pragma once

#include <stdexcept>
#include <string>

namespace nlslab {

// Bad arguments / malformed configuration. Maps to exit code 2 at the CLI.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

class InvalidArgument : public std::invalid_argument {
public:
    explicit InvalidArgument(const std::string& what) : std::invalid_argument(what) {}
};

// A run-aborting condition detected during time integration.
class RunError : public std::runtime_error {
public:
    RunError(const std::string& what, double t) : std::runtime_error(what), time(t) {}
    double time = 0.0;
};

// Mass fraction in the outer region of the box exceeded the guard limit.
class TruncationBreach : public RunError {
public:
    TruncationBreach(double t, double fraction)
        : RunError("truncation guard breached at t=" + std::to_string(t) +
                       " (outer mass fraction " + std::to_string(fraction) + ")",
                   t) {}
};

// NaN/Inf or unbounded amplitude growth: an unresolved run, not physics.
class NumericalBlowup : public RunError {
public:
    NumericalBlowup(double t, const std::string& detail)
        : RunError("numerical blowup at t=" + std::to_string(t) + ": " + detail, t) {}
};

// A direct double integral would exceed the configured pair budget.
class BudgetExceeded : public std::runtime_error {
public:
    explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

// Density below the cutoff where a 1/rho diagnostic was requested.
class DegenerateDensity : public std::runtime_error {
public:
    explicit DegenerateDensity(const std::string& what) : std::runtime_error(what) {}
};

class MonotonicityViolation : public std::runtime_error {
public:
    MonotonicityViolation(const std::string& what, double t0, double t1)
        : std::runtime_error(what), interval_begin(t0), interval_end(t1) {}
    double interval_begin = 0.0;
    double interval_end = 0.0;
};

} // namespace nlslab
