#pragma once

#include "nlslab/field.hpp"

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

namespace nlslab {

// Radial weight a(|x|) with its first derivative and Laplacian. a_r lies in
// [0,1] and a is convex for every weight constructed here.
struct RadialWeight {
    std::string label;
    int dim = 2;
    double r0 = 0.0; // 0 for the |x| weight
    std::function<double(double)> a;
    std::function<double(double)> a_r;
    std::function<double(double)> lap_a;
    // d/dr-combination Delta a + r (Delta a)'; closed form, used by the
    // convexity certificate. Empty for weights without one.
    std::function<double(double)> lap_plus_r_dlap;
};

// a(r) = r, a_r = 1, Delta a = (n-1)/r.
RadialWeight weight_abs(int dim);

// The smoothed two-dimensional weight: Delta a(r) = (1/r0)(1 + log(r0/r)) for
// r < r0 and 1/r for r >= r0; a_r = (1/r) int_0^r s Delta a(s) ds evaluated by
// adaptive Gauss-Kronrod quadrature (abs tol 1e-12); a = int_0^r a_r.
RadialWeight weight_r0(double r0);

// w_{r0}(s) = 1/s^3 for s >= r0, else 0.
double w_r0(double s, double r0);

struct ConvexityReport {
    bool pass = false;
    double min_q_scaled = 0.0; // min q(r)/max|q| over samples
    std::vector<double> r;
    std::vector<double> q;    // q(r) = int_0^r [2 Delta a(r) - Delta a(s)] s ds
    std::vector<double> a_rr; // q(r)/r^2
};

// Samples q(r) = r^2 Delta a(r) - r a_r(r) on the given radii (log-spaced by
// callers); passes iff q >= -1e-12 * scale everywhere.
ConvexityReport convexity_certificate(const RadialWeight& w, const std::vector<double>& r_samples);

// Uniform lookup table for a_r on [0, r_max]; linear interpolation. The
// interpolant of a monotone a_r stays monotone, so the tabulated weight is
// still convex.
struct WeightTable {
    double dr = 0.0;
    std::vector<double> a_r;
    double operator()(double r) const;
};
WeightTable tabulate_a_r(const RadialWeight& w, double r_max, int n = 8192);

struct PairSumOptions {
    std::uint64_t max_direct_pairs = 1ull << 29; // direct evaluation budget
    bool allow_sampling = true;                  // stratified fallback beyond it
    int samples_per_point = 32;
    std::uint64_t seed = 0;
};

struct PairSumResult {
    double value = 0.0;
    double stderr_est = 0.0; // 0 for direct evaluation
    bool sampled = false;
};

// < (-Lap Lap a) rho1, rho2 > for the r0 weight in 2-D:
//   (2 pi / r0) int rho1 rho2 dx  -  int int w_{r0}(|x1-x2|) rho1(x1) rho2(x2).
// Minimum-image distances; fields must share a 2-D grid.
struct BilaplacianPairing {
    double value = 0.0;
    double delta_term = 0.0; // (2 pi / r0) int rho1 rho2
    double w_term = 0.0;
    double stderr_est = 0.0;
    bool sampled = false;
};
BilaplacianPairing bilaplacian_pairing(const RadialWeight& w, const std::vector<double>& rho1,
                                       const std::vector<double>& rho2, const Grid& g,
                                       const PairSumOptions& opts = {});

// Rearranged quadratic form int int {rho(x1)-rho(x2)}^2 w_{r0} dx1 dx2
// (equals 2x the pairing when rho1 = rho2 and the w-mass identity holds).
PairSumResult rearranged_square_form(double r0, const std::vector<double>& rho, const Grid& g,
                                     const PairSumOptions& opts = {});

// CSV export: r, a, a_r, lap_a, a_rr.
void write_weight_table(const RadialWeight& w, const std::filesystem::path& path,
                        const std::vector<double>& r_samples);

} // namespace nlslab
