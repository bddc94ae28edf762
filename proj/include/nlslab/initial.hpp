#pragma once

#include "nlslab/field.hpp"

#include <cstdint>
#include <string>

namespace nlslab {

// Initial-data menu: symmetric / transport-dominated / generic.
//   gaussian:  A exp(-|x-c|^2/(2 w^2)) exp(i v.x)
//   two_bump:  bump at -c with phase +i v.x plus bump at +c with phase -i v.x
//              (counter-propagating; approaching when v points from -c to +c)
//   random:    seeded band-limited spectrum (envelope <xi>^{-spectral_decay},
//              angular band limit band_limit, Nyquist-free) times a Gaussian
//              spatial envelope of width w, renormalized to L^2 mass A^2.
struct InitialSpec {
    std::string kind = "gaussian"; // gaussian | two_bump | random
    double amplitude = 1.0;
    double width = 2.0;
    double velocity[2] = {0.0, 0.0};
    double center[2] = {0.0, 0.0};
    std::uint64_t seed = 0;
    double band_limit = 0.0;     // random only; 0 = half Nyquist
    double spectral_decay = 1.5; // random only
};

Field build_initial(const Grid& g, const InitialSpec& spec);

// Band-limited random field without the spatial envelope or normalization
// (static diagnostics: I-operator sandwich, Bernstein samples).
Field random_band_limited(const Grid& g, double band_limit, std::uint64_t seed,
                          double spectral_decay = 0.0);

} // namespace nlslab
