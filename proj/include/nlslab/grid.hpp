#pragma once

#include <array>
#include <cstddef>

namespace nlslab {

// Periodic box [-L/2, L/2)^n sampled on M points per axis, M a power of two.
// Sample points x_j = -L/2 + j*h with h = L/M (exact in binary floating point
// since M is a power of two). The frequency lattice is xi_m = m/L cycles per
// unit length, m in {-M/2, ..., M/2-1}; symbols are evaluated at the angular
// value 2*pi*xi so that -Laplacian corresponds to (2*pi*|xi|)^2 exactly.
struct Grid {
    int dim = 1;          // n, 1 or 2
    double length = 0.0;  // L per axis
    int points = 0;       // M per axis
    double spacing = 0.0; // h = L/M

    std::size_t size() const {
        std::size_t m = static_cast<std::size_t>(points);
        return dim == 1 ? m : m * m;
    }
    double cell_measure() const { return dim == 1 ? spacing : spacing * spacing; }

    double coord(int j) const { return -0.5 * length + j * spacing; }

    // FFT bin k in [0, M) -> signed mode index m in [-M/2, M/2).
    int mode(int k) const { return k < points / 2 ? k : k - points; }
    double xi(int m) const { return m / length; } // cycles per unit length
    double angular(int m) const;                  // 2*pi*m/L

    // Minimum-image (torus) displacement of a coordinate difference.
    double wrap(double dx) const {
        while (dx >= 0.5 * length) dx -= length;
        while (dx < -0.5 * length) dx += length;
        return dx;
    }

    // Largest angular frequency magnitude representable: pi/h.
    double nyquist_angular() const;

    bool operator==(const Grid&) const = default;
};

// Validates n in {1,2}, M a power of two >= 8, L > 0; throws InvalidArgument.
Grid make_grid(int dim, double length, int points);

bool is_power_of_two(int m);

} // namespace nlslab
