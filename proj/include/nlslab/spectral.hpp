#pragma once

#include "nlslab/fft.hpp"

#include <functional>
#include <string>

namespace nlslab {

// Fourier multiplier. The symbol is evaluated at the angular frequency vector
// (2*pi times the cycles lattice); it must be deterministic and finite there.
// zero_nyquist kills the sign-ambiguous m = -M/2 modes; it is set only by the
// derivative-type operators below.
struct Multiplier {
    std::string label;
    std::function<cplx(const double* xi_ang, int dim)> symbol;
    bool zero_nyquist = false;
};

Field apply_multiplier(const Field& f, const Multiplier& m);

// Precomputed per-bin symbol values (Nyquist zeroing already applied).
std::vector<cplx> symbol_table(const Grid& g, const Multiplier& m);
Field apply_table(const Field& f, std::span<const cplx> table);

// |nabla|^s: symbol |xi_ang|^s, zero frequency -> 0, Nyquist zeroed. s >= 0.
Field fractional_derivative(const Field& f, double s);

// d/dx_axis: symbol i*xi_ang_axis, Nyquist zeroed.
Field partial_derivative(const Field& f, int axis);

// Smooth Littlewood-Paley bump: 1 on [0,1], 0 beyond 2, exp(-1/x) smoothstep
// in between. Radial argument r = |xi_ang| / N.
double lp_bump(double r);

enum class LPKind { leq, band, gt };
// P_{<=N}: phi(|xi|/N); P_N: phi(|xi|/N) - phi(2|xi|/N); P_{>N}: 1 - phi(|xi|/N).
// P_{<=N} + P_{>N} = identity exactly. N dyadic on the angular scale.
Field littlewood_paley(const Field& f, double N, LPKind kind);

// m_N profile: 1 for r <= N, (r/N)^{s-1} for r >= 2N, monotone C^1 log-log
// cubic Hermite in between (endpoint slopes 0 and s-1).
double i_multiplier(double r, double N, double s);
// Requires 1 < N < nyquist/2, s in (0,1).
Field i_operator(const Field& f, double N, double s);

// Free Schroedinger propagator: symbol e^{-i t |xi_ang|^2}; solves i u_t + Lap u = 0.
Field free_propagate(const Field& f, double t);

enum class NormKind { lebesgue, sobolev_hom, sobolev_inhom };

// lebesgue: Riemann sum (h^n sum |f|^r)^{1/r}, max for r = inf; requires r >= 1.
// sobolev_hom: || |nabla|^s f ||_{L^2} by Plancherel; s < 0 drops the zero mode
// (mean-zero-safe inputs only; callers document usage).
// sobolev_inhom: symbol (1 + |xi_ang|^2)^{s/2}.
double norm(const Field& f, NormKind kind, double param);

double norm_l2(const Field& f);
double norm_lp(const Field& f, double r);
double norm_hdot(const Field& f, double s);
double norm_h(const Field& f, double s);

double is_dyadic(double N); // helper: nearest power of two if close, else 0

} // namespace nlslab
