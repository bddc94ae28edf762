#pragma once

#include "nlslab/field.hpp"

#include <array>
#include <filesystem>
#include <functional>
#include <vector>

namespace nlslab {

// Time integration parameters for i u_t + Lap u = |u|^{p-1} u (defocusing).
struct SolverConfig {
    double p = 3.0;       // nonlinearity exponent, > 1
    double dt = 1e-3;     // time step
    double t_final = 1.0; // T
    double dt_out = 1e-2; // snapshot interval; dt_out/dt and T/dt_out integral

    // Test hook: scales the nonlinear phase; 0 gives the free flow.
    double coupling = 1.0;

    double truncation_limit = 1e-6; // outer-mass-fraction guard
    double blowup_factor = 10.0;    // L^inf growth guard

    void validate() const; // throws ConfigError
    long steps_per_snapshot() const;
    long snapshot_count() const; // excluding t = 0
};

struct GuardStats {
    double max_outer_mass_fraction = 0.0;
    double max_amplitude_ratio = 0.0; // sup_t ||u||_inf / ||u0||_inf
};

// Uniform-cadence snapshots (t_i, field), t_0 = 0.
struct Trajectory {
    Grid grid;
    SolverConfig config;
    std::vector<double> times;
    std::vector<Field> snapshots;
    GuardStats guards;

    void save(const std::filesystem::path& dir) const;
    static Trajectory load(const std::filesystem::path& dir);
};

// Exact flow of i u_t = |u|^{p-1} u: pointwise u -> u * exp(-i |u|^{p-1} dt).
Field nonlinear_phase(const Field& f, double p, double dt);

// Strang step: free(dt/2) . nonlinear(dt) . free(dt/2).
Field strang_step(const Field& f, const SolverConfig& cfg);

// Repeated Strang stepping with merged interior kinetic half-steps.
// Calls observer at every snapshot time (including t = 0); checks the
// truncation / blowup / NaN guards at snapshot cadence and throws
// TruncationBreach or NumericalBlowup on failure.
void evolve(const Field& f0, const SolverConfig& cfg,
            const std::function<void(double t, const Field& u)>& observer,
            GuardStats* stats = nullptr);

Trajectory evolve(const Field& f0, const SolverConfig& cfg);

double mass(const Field& f);                  // ||f||_{L^2}^2
double energy(const Field& f, double p);      // 1/2 ||grad f||^2 + 1/(p+1) ||f||_{p+1}^{p+1}
std::array<double, 2> momentum(const Field& f); // Im integral conj(f) grad f

// Mass fraction carried by the outer 25% shell of the box (max-norm annulus).
double outer_mass_fraction(const Field& f);

// Scaling symmetry at t = 0: lambda^{-2/(p-1)} u(x/lambda) on the grid with
// box length lambda*L (same M). Warns via the returned flag when the spectral
// tail above half-Nyquist carries more than 1e-8 of the mass.
struct RescaleResult {
    Field field;
    bool resolution_warning = false;
    double tail_mass_fraction = 0.0;
};
RescaleResult rescale(const Field& f, double lambda, double p);

} // namespace nlslab
