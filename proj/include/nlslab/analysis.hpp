#pragma once

#include "nlslab/solver.hpp"
#include "nlslab/weights.hpp"

#include <array>

namespace nlslab {

// Local conservation-law fields of the dispersive fluid:
//   rho = |u|^2 / 2, p_j = Im(conj(u) d_j u), sigma_jk = 2 Re(d_k u d_j conj(u)).
// Gradients are spectral. sigma stored as (xx, xy, yy); xy/yy unused in 1-D.
struct DensitySet {
    Grid grid;
    std::vector<double> rho;
    std::array<std::vector<double>, 2> p;
    std::array<std::vector<double>, 3> sigma;
    double rho_max = 0.0;
    double delta() const { return 1e-10 * rho_max; } // 1/rho cutoff
};

DensitySet densities(const Field& f);

// Max relative deviation of sigma_jk from (p_j p_k + d_j rho d_k rho)/rho over
// cells with rho > delta. The two stress formulas agree analytically.
double sigma_equivalence_error(const Field& f, const DensitySet& d);

// M_a = 2 int a_r(|x|) (x/|x|) . p dx; the origin cell contributes 0.
double morawetz_action(const Field& f, const RadialWeight& w);

// Tensor-product action specialized to u1 = u2:
//   M = int int a_r(|x1-x2|) ((x1-x2)/|x1-x2|) . [p(x1) rho(x2) - p(x2) rho(x1)] dx1 dx2,
// diagonal cells excluded, minimum-image distances. Equals 2 <X rho | p>.
PairSumResult interaction_action(const DensitySet& d, const WeightTable& a_r,
                                 const PairSumOptions& opts = {});
PairSumResult interaction_action(const Field& f, const RadialWeight& w,
                                 const PairSumOptions& opts = {});

// Same integral assembled in the commutator order: X rho as a field
// (X rho)(x) = int a_r(|x-y|) ((x-y)/|x-y|) rho(y) dy, then 2 <X rho | p>.
double interaction_action_commutator(const DensitySet& d, const WeightTable& a_r);

// eta(x,y) = (|r|^2 I - r r^T)/|r|^3, r = x - y: symmetric PSD with
// eigenvalues {0, 1/|r| (multiplicity n-1)}. Requires x != y.
std::array<double, 4> commutator_kernel(const double* x, const double* y, int dim);

// J(x,y) = sqrt(rho(y)/rho(x)) p(x) - sqrt(rho(x)/rho(y)) p(y); throws
// DegenerateDensity below the cutoff.
std::array<double, 2> two_point_momentum(const DensitySet& d, std::size_t ix, std::size_t iy);

// 1/2 int int J^T eta J dx dy over a strided subsample of the grid (stride 1
// covers everything); pairs with rho below cutoff are skipped, not zero-filled.
double p2_kernel_form(const DensitySet& d, int stride = 1);

// Gauss-Weierstrass-smoothed action pieces (1-D). The smoothing kernel is the
// unit-mass heat kernel g_eps(z) = exp(-z^2/eps^2)/(eps sqrt(pi)); the action
// kernel is the centered odd primitive A_eps(z) = erf(z/eps)/2.
struct ErfActionTerms {
    double M = 0.0;
    double P1 = 0.0, P2 = 0.0, P3 = 0.0, P4 = 0.0;
    double epsilon = 0.0;
    double dM() const { return P1 + P2 + P3 + P4; }
};

// Requires a 1-D grid and eps >= 2h. With rho > delta cutoff:
//   P1 = <G_eps rho, rho_x^2/rho>
//   P2 = 1/2 int int g_eps(x-y) J(x,y)^2 (symmetrized square form)
//   P3 = <G_eps rho, -rho_xx> = sum_k xi~^2 |rho_hat|^2 e^{-eps^2 xi~^2/4} / L
//   P4 = c_p <G_eps rho, rho^{(p+1)/2}>, c_p = 2^{(p+1)/2} (p-1)/(p+1)
ErfActionTerms erf_action_terms(const Field& f, double p, double eps);

// P1 alone (cheap; used per snapshot by the harness).
double erf_p1(const Field& f, double eps);

// int int {|u(x1)|^2 - |u(x2)|^2}^2 / |x1-x2|^3 dx1 dx2 on a 2-D grid,
// diagonal excluded, minimum-image distances. Proportional to
// || |u|^2 ||_{Hdot^{1/2}}^2 (constant measured, not asserted).
PairSumResult besov_double_integral(const Field& f, const PairSumOptions& opts = {});

// Spacetime left-hand side over snapshots with composite trapezoid weights:
// 2-D: sum_i w_i || |nabla|^{1/2} |u(t_i)|^2 ||_{L^2}^2; 1-D: same with d_x.
// Requires at least two snapshots.
double interaction_lhs(const Trajectory& traj);
// Single-snapshot version of the integrand.
double interaction_lhs_node(const Field& f);

// |u|^2 as a (real-valued) Field on the same grid.
Field abs_squared(const Field& f);

} // namespace nlslab
