#include "nlslab/spectral.hpp"

#include "nlslab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace nlslab {

namespace {

// Iterate the frequency lattice in bin order; cb(flat_index, xi_ang, is_nyquist).
template <typename F>
void for_each_mode(const Grid& g, F&& cb) {
    const int M = g.points;
    const int nyq = -M / 2;
    if (g.dim == 1) {
        for (int k = 0; k < M; ++k) {
            int m = g.mode(k);
            double xi[2] = {g.angular(m), 0.0};
            cb(static_cast<std::size_t>(k), xi, m == nyq);
        }
    } else {
        std::size_t idx = 0;
        for (int k0 = 0; k0 < M; ++k0) {
            int m0 = g.mode(k0);
            for (int k1 = 0; k1 < M; ++k1, ++idx) {
                int m1 = g.mode(k1);
                double xi[2] = {g.angular(m0), g.angular(m1)};
                cb(idx, xi, m0 == nyq || m1 == nyq);
            }
        }
    }
}

} // namespace

std::vector<cplx> symbol_table(const Grid& g, const Multiplier& m) {
    std::vector<cplx> table(g.size());
    for_each_mode(g, [&](std::size_t idx, const double* xi, bool nyq) {
        table[idx] = (nyq && m.zero_nyquist) ? cplx{0.0, 0.0} : m.symbol(xi, g.dim);
    });
    return table;
}

Field apply_table(const Field& f, std::span<const cplx> table) {
    std::vector<cplx> spec = fft::forward(f);
    for (std::size_t i = 0; i < spec.size(); ++i) spec[i] *= table[i];
    return fft::inverse_to_field(f.grid, spec);
}

Field apply_multiplier(const Field& f, const Multiplier& m) {
    return apply_table(f, symbol_table(f.grid, m));
}

Field fractional_derivative(const Field& f, double s) {
    if (s < 0.0)
        throw InvalidArgument("fractional_derivative: s must be >= 0 (negative orders are "
                              "handled through physical-space kernels)");
    if (s == 0.0) return f;
    Multiplier m;
    m.label = "|grad|^" + std::to_string(s);
    m.zero_nyquist = true;
    m.symbol = [s](const double* xi, int dim) {
        double r2 = xi[0] * xi[0] + (dim == 2 ? xi[1] * xi[1] : 0.0);
        return cplx{r2 == 0.0 ? 0.0 : std::pow(r2, 0.5 * s), 0.0};
    };
    return apply_multiplier(f, m);
}

Field partial_derivative(const Field& f, int axis) {
    if (axis < 0 || axis >= f.grid.dim) throw InvalidArgument("partial_derivative: bad axis");
    Multiplier m;
    m.label = "d/dx" + std::to_string(axis);
    m.zero_nyquist = true;
    m.symbol = [axis](const double* xi, int) { return cplx{0.0, xi[axis]}; };
    return apply_multiplier(f, m);
}

double lp_bump(double r) {
    r = std::abs(r);
    if (r <= 1.0) return 1.0;
    if (r >= 2.0) return 0.0;
    // smoothstep from exp(-1/x): S(0)=0, S(1)=1, C^inf.
    auto psi = [](double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; };
    double t = 2.0 - r; // 1 at r=1, 0 at r=2
    double a = psi(t), b = psi(1.0 - t);
    return a / (a + b);
}

Field littlewood_paley(const Field& f, double N, LPKind kind) {
    if (!(N > 0.0)) throw InvalidArgument("littlewood_paley: N must be positive");
    if (is_dyadic(N) == 0.0) throw InvalidArgument("littlewood_paley: N must be dyadic");
    Multiplier m;
    m.zero_nyquist = false; // even bounded symbol; keeps the partition exact
    switch (kind) {
    case LPKind::leq:
        m.label = "P_<=N";
        m.symbol = [N](const double* xi, int dim) {
            double r = std::hypot(xi[0], dim == 2 ? xi[1] : 0.0);
            return cplx{lp_bump(r / N), 0.0};
        };
        break;
    case LPKind::band:
        m.label = "P_N";
        m.symbol = [N](const double* xi, int dim) {
            double r = std::hypot(xi[0], dim == 2 ? xi[1] : 0.0);
            return cplx{lp_bump(r / N) - lp_bump(2.0 * r / N), 0.0};
        };
        break;
    case LPKind::gt:
        m.label = "P_>N";
        m.symbol = [N](const double* xi, int dim) {
            double r = std::hypot(xi[0], dim == 2 ? xi[1] : 0.0);
            return cplx{1.0 - lp_bump(r / N), 0.0};
        };
        break;
    }
    return apply_multiplier(f, m);
}

double i_multiplier(double r, double N, double s) {
    r = std::abs(r);
    if (r <= N) return 1.0;
    if (r >= 2.0 * N) return std::pow(r / N, s - 1.0);
    // log m against log r: cubic Hermite, slope 0 at N and s-1 at 2N.
    const double ln2 = std::log(2.0);
    double t = std::log(r / N) / ln2; // in (0,1)
    double h = (s - 1.0) * ln2 * t * t * (2.0 - t);
    return std::exp(h);
}

Field i_operator(const Field& f, double N, double s) {
    if (!(s > 0.0 && s < 1.0)) throw InvalidArgument("i_operator: s must lie in (0,1)");
    if (is_dyadic(N) == 0.0) throw InvalidArgument("i_operator: N must be dyadic");
    double nyq = f.grid.nyquist_angular();
    if (!(N > 1.0 && N < 0.5 * nyq))
        throw InvalidArgument("i_operator: need 1 < N < nyquist/2 = " + std::to_string(0.5 * nyq));
    Multiplier m;
    m.label = "I_N";
    m.zero_nyquist = false;
    m.symbol = [N, s](const double* xi, int dim) {
        double r = std::hypot(xi[0], dim == 2 ? xi[1] : 0.0);
        return cplx{i_multiplier(r, N, s), 0.0};
    };
    return apply_multiplier(f, m);
}

Field free_propagate(const Field& f, double t) {
    if (t == 0.0) return f;
    Multiplier m;
    m.label = "e^{itLap}";
    m.zero_nyquist = false; // modulus-1 even symbol: exactly unitary
    m.symbol = [t](const double* xi, int dim) {
        double r2 = xi[0] * xi[0] + (dim == 2 ? xi[1] * xi[1] : 0.0);
        return std::polar(1.0, -t * r2);
    };
    return apply_multiplier(f, m);
}

double norm(const Field& f, NormKind kind, double param) {
    const Grid& g = f.grid;
    switch (kind) {
    case NormKind::lebesgue: {
        double r = param;
        if (!(r >= 1.0)) throw InvalidArgument("norm: Lebesgue exponent must be >= 1");
        if (std::isinf(r)) {
            double m = 0.0;
            for (const cplx& z : f.values) m = std::max(m, std::abs(z));
            return m;
        }
        double s = 0.0;
        for (const cplx& z : f.values) s += std::pow(std::abs(z), r);
        return std::pow(g.cell_measure() * s, 1.0 / r);
    }
    case NormKind::sobolev_hom: {
        double s2 = 2.0 * param;
        std::vector<cplx> spec = fft::forward(f);
        double acc = 0.0;
        for_each_mode(g, [&](std::size_t idx, const double* xi, bool nyq) {
            double r2 = xi[0] * xi[0] + (g.dim == 2 ? xi[1] * xi[1] : 0.0);
            if (r2 == 0.0) {
                if (param > 0.0 || param < 0.0) return; // |xi|^s with zero mode -> 0
                acc += std::norm(spec[idx]);
                return;
            }
            if (nyq && param > 0.0) return; // derivative-type: Nyquist zeroed
            acc += std::pow(r2, 0.5 * s2) * std::norm(spec[idx]);
        });
        const double Ln = g.dim == 1 ? g.length : g.length * g.length;
        return std::sqrt(acc / Ln);
    }
    case NormKind::sobolev_inhom: {
        double s = param;
        std::vector<cplx> spec = fft::forward(f);
        double acc = 0.0;
        for_each_mode(g, [&](std::size_t idx, const double* xi, bool) {
            double r2 = xi[0] * xi[0] + (g.dim == 2 ? xi[1] * xi[1] : 0.0);
            acc += std::pow(1.0 + r2, s) * std::norm(spec[idx]);
        });
        const double Ln = g.dim == 1 ? g.length : g.length * g.length;
        return std::sqrt(acc / Ln);
    }
    }
    return 0.0;
}

double norm_l2(const Field& f) { return norm(f, NormKind::lebesgue, 2.0); }
double norm_lp(const Field& f, double r) { return norm(f, NormKind::lebesgue, r); }
double norm_hdot(const Field& f, double s) { return norm(f, NormKind::sobolev_hom, s); }
double norm_h(const Field& f, double s) { return norm(f, NormKind::sobolev_inhom, s); }

double is_dyadic(double N) {
    if (!(N > 0.0)) return 0.0;
    double l = std::log2(N);
    double r = std::round(l);
    if (std::abs(l - r) > 1e-9) return 0.0;
    return std::exp2(r);
}

} // namespace nlslab
