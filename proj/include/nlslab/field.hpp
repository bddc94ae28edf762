#pragma once

#include "nlslab/grid.hpp"

#include <complex>
#include <filesystem>
#include <vector>

namespace nlslab {

using cplx = std::complex<double>;

// Complex state sampled on a Grid, row-major (x index fastest in 1-D,
// x0 slow / x1 fast in 2-D). Treated as an immutable value everywhere.
struct Field {
    Grid grid;
    std::vector<cplx> values;

    cplx& at(int i) { return values[static_cast<std::size_t>(i)]; }
    const cplx& at(int i) const { return values[static_cast<std::size_t>(i)]; }
    cplx& at(int i, int j) { return values[static_cast<std::size_t>(i) * grid.points + j]; }
    const cplx& at(int i, int j) const {
        return values[static_cast<std::size_t>(i) * grid.points + j];
    }
};

Field make_field(const Grid& g); // zero-filled

bool all_finite(const Field& f);

// Flat binary snapshot layout: magic "NLSF", format version, header (n, M, L),
// then M^n interleaved re/im doubles in row-major order. Little-endian host.
void save_field(const Field& f, const std::filesystem::path& path);
Field load_field(const std::filesystem::path& path);

} // namespace nlslab
