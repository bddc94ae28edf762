#pragma once

// Internal engine for the O(M^{2n}) double Riemann sums: direct evaluation
// under the pair budget, stratified sampling (per-x1 strata, seeded) above it.
// Diagonal handling is the kernel's business; kernels here all vanish there.

#include "nlslab/errors.hpp"
#include "nlslab/grid.hpp"
#include "nlslab/weights.hpp"

#include <cmath>
#include <random>
#include <vector>

namespace nlslab::detail {

// kernel(i, j) -> contribution of the (x_i, x_j) cell pair, WITHOUT the
// h^{2n} measure (applied here). symmetric=true halves the direct sweep;
// the kernel must satisfy k(i,j) = k(j,i) and vanish on the diagonal.
template <typename Kernel>
PairSumResult pair_sum(const Grid& g, const PairSumOptions& opts, Kernel&& kernel,
                       bool symmetric = false) {
    const std::size_t n = g.size();
    const double measure = g.cell_measure() * g.cell_measure();
    const std::uint64_t pairs = static_cast<std::uint64_t>(n) * n;

    PairSumResult res;
    if (pairs <= opts.max_direct_pairs) {
        double acc = 0.0;
        if (symmetric) {
            for (std::size_t i = 0; i < n; ++i) {
                double row = 0.0;
                for (std::size_t j = i + 1; j < n; ++j) row += kernel(i, j);
                acc += 2.0 * row;
            }
        } else {
            for (std::size_t i = 0; i < n; ++i) {
                double row = 0.0;
                for (std::size_t j = 0; j < n; ++j) row += kernel(i, j);
                acc += row;
            }
        }
        res.value = measure * acc;
        return res;
    }
    if (!opts.allow_sampling)
        throw BudgetExceeded("pair integral needs " + std::to_string(pairs) +
                             " evaluations, budget is " + std::to_string(opts.max_direct_pairs));

    // Stratified: every x1 cell is a stratum; x2 sampled uniformly.
    const int k = std::max(2, opts.samples_per_point);
    double total = 0.0;
    double var = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        std::mt19937_64 eng(opts.seed ^ (0x9E3779B97F4A7C15ull * (i + 1)));
        std::uniform_int_distribution<std::size_t> pick(0, n - 1);
        double s1 = 0.0, s2 = 0.0;
        for (int t = 0; t < k; ++t) {
            double v = kernel(i, pick(eng));
            s1 += v;
            s2 += v * v;
        }
        double mean = s1 / k;
        total += mean;
        double sample_var = (s2 - k * mean * mean) / (k - 1);
        if (sample_var > 0.0) var += sample_var / k;
    }
    res.value = measure * static_cast<double>(n) * total;
    res.stderr_est = measure * static_cast<double>(n) * std::sqrt(var);
    res.sampled = true;
    return res;
}

// Coordinates of every grid cell, flattened.
inline std::vector<std::array<double, 2>> cell_coords(const Grid& g) {
    std::vector<std::array<double, 2>> xs(g.size());
    if (g.dim == 1) {
        for (int j = 0; j < g.points; ++j) xs[j] = {g.coord(j), 0.0};
    } else {
        std::size_t idx = 0;
        for (int j0 = 0; j0 < g.points; ++j0)
            for (int j1 = 0; j1 < g.points; ++j1, ++idx) xs[idx] = {g.coord(j0), g.coord(j1)};
    }
    return xs;
}

} // namespace nlslab::detail
