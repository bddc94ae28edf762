#pragma once

#include "nlslab/field.hpp"

#include <span>
#include <vector>

namespace nlslab::fft {

// Discrete realization of the continuum pair
//   fhat(xi) = integral e^{-2*pi*i*xi*x} f(x) dx,   f(x) = integral e^{+2*pi*i*xi*x} fhat(xi) dxi
// on the grid: forward(f)[k] = h^n * sum_j e^{-2*pi*i*xi_m.x_j} f(x_j) with m = mode(k),
// stored in FFT bin order. The pair is mutually inverse to machine precision and
// satisfies the discrete Plancherel identity
//   h^n sum |f_j|^2 = (1/L^n) sum |fhat_m|^2.
std::vector<cplx> forward(const Grid& g, std::span<const cplx> values);
std::vector<cplx> inverse(const Grid& g, std::span<const cplx> spectrum);

std::vector<cplx> forward(const Field& f);
Field inverse_to_field(const Grid& g, std::span<const cplx> spectrum);

// (1/L^n) sum |spectrum|^2, the frequency-side L^2 norm squared.
double spectrum_l2sq(const Grid& g, std::span<const cplx> spectrum);

} // namespace nlslab::fft
