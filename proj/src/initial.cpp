#include "nlslab/initial.hpp"

#include "nlslab/errors.hpp"
#include "nlslab/fft.hpp"
#include "nlslab/solver.hpp"

#include <cmath>
#include <random>

namespace nlslab {

namespace {

Field gaussian_bump(const Grid& g, double A, double w, const double* v, const double* c,
                    double phase_sign) {
    Field f = make_field(g);
    const double inv2w2 = 1.0 / (2.0 * w * w);
    if (g.dim == 1) {
        for (int j = 0; j < g.points; ++j) {
            double x = g.coord(j);
            double r2 = (x - c[0]) * (x - c[0]);
            f.at(j) = A * std::exp(-r2 * inv2w2) * std::polar(1.0, phase_sign * v[0] * x);
        }
    } else {
        std::size_t idx = 0;
        for (int j0 = 0; j0 < g.points; ++j0) {
            double x0 = g.coord(j0);
            for (int j1 = 0; j1 < g.points; ++j1, ++idx) {
                double x1 = g.coord(j1);
                double r2 = (x0 - c[0]) * (x0 - c[0]) + (x1 - c[1]) * (x1 - c[1]);
                double ph = phase_sign * (v[0] * x0 + v[1] * x1);
                f.values[idx] = A * std::exp(-r2 * inv2w2) * std::polar(1.0, ph);
            }
        }
    }
    return f;
}

} // namespace

Field random_band_limited(const Grid& g, double band_limit, std::uint64_t seed,
                          double spectral_decay) {
    if (band_limit <= 0.0 || band_limit > g.nyquist_angular()) band_limit = 0.5 * g.nyquist_angular();
    std::mt19937_64 eng(seed ^ 0xD1B54A32D192ED03ull);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const int M = g.points;
    std::vector<cplx> spec(g.size(), cplx{0.0, 0.0});
    auto coeff = [&](double r) {
        double env = spectral_decay > 0.0 ? std::pow(1.0 + r, -spectral_decay) : 1.0;
        return cplx{gauss(eng), gauss(eng)} * env;
    };
    if (g.dim == 1) {
        for (int k = 0; k < M; ++k) {
            int m = g.mode(k);
            if (m == -M / 2) continue; // keep the Nyquist plane empty
            double r = std::abs(g.angular(m));
            if (r <= band_limit) spec[k] = coeff(r);
        }
    } else {
        std::size_t idx = 0;
        for (int k0 = 0; k0 < M; ++k0) {
            int m0 = g.mode(k0);
            for (int k1 = 0; k1 < M; ++k1, ++idx) {
                int m1 = g.mode(k1);
                if (m0 == -M / 2 || m1 == -M / 2) continue;
                double r = std::hypot(g.angular(m0), g.angular(m1));
                if (r <= band_limit) spec[idx] = coeff(r);
            }
        }
    }
    return fft::inverse_to_field(g, spec);
}

Field build_initial(const Grid& g, const InitialSpec& spec) {
    if (spec.kind == "gaussian") {
        return gaussian_bump(g, spec.amplitude, spec.width, spec.velocity, spec.center, +1.0);
    }
    if (spec.kind == "two_bump") {
        // Counter-propagating pair: approaching when velocity points from -c to +c.
        double cneg[2] = {-spec.center[0], -spec.center[1]};
        Field a = gaussian_bump(g, spec.amplitude, spec.width, spec.velocity, cneg, +1.0);
        Field b = gaussian_bump(g, spec.amplitude, spec.width, spec.velocity, spec.center, -1.0);
        for (std::size_t i = 0; i < a.values.size(); ++i) a.values[i] += b.values[i];
        return a;
    }
    if (spec.kind == "random") {
        Field f = random_band_limited(g, spec.band_limit, spec.seed, spec.spectral_decay);
        // Spatial envelope so the truncation guard can hold, then renormalize.
        const double inv2w2 = 1.0 / (2.0 * spec.width * spec.width);
        if (g.dim == 1) {
            for (int j = 0; j < g.points; ++j) {
                double x = g.coord(j) - spec.center[0];
                f.at(j) *= std::exp(-x * x * inv2w2);
            }
        } else {
            std::size_t idx = 0;
            for (int j0 = 0; j0 < g.points; ++j0)
                for (int j1 = 0; j1 < g.points; ++j1, ++idx) {
                    double x0 = g.coord(j0) - spec.center[0];
                    double x1 = g.coord(j1) - spec.center[1];
                    f.values[idx] *= std::exp(-(x0 * x0 + x1 * x1) * inv2w2);
                }
        }
        double m = std::sqrt(mass(f));
        if (m > 0.0) {
            double scale = spec.amplitude / m;
            for (cplx& z : f.values) z *= scale;
        }
        return f;
    }
    throw ConfigError("initial.kind must be gaussian, two_bump, or random; got '" + spec.kind +
                      "'");
}

} // namespace nlslab
