#include "nlslab/grid.hpp"

#include "nlslab/errors.hpp"

#include <cmath>
#include <string>

namespace nlslab {

bool is_power_of_two(int m) { return m > 0 && (m & (m - 1)) == 0; }

double Grid::angular(int m) const { return 2.0 * M_PI * m / length; }

double Grid::nyquist_angular() const { return M_PI / spacing; }

Grid make_grid(int dim, double length, int points) {
    if (dim != 1 && dim != 2)
        throw InvalidArgument("grid dimension must be 1 or 2, got " + std::to_string(dim));
    if (!(length > 0.0))
        throw InvalidArgument("grid length must be positive, got " + std::to_string(length));
    if (!is_power_of_two(points) || points < 8)
        throw InvalidArgument("grid points per axis must be a power of two >= 8, got " +
                              std::to_string(points));
    Grid g;
    g.dim = dim;
    g.length = length;
    g.points = points;
    g.spacing = length / points; // exact: division by a power of two
    return g;
}

} // namespace nlslab
