#include "nlslab/weights.hpp"

#include "nlslab/errors.hpp"
#include "pair_sum.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>

namespace nlslab {

namespace {

using GK = boost::math::quadrature::gauss_kronrod<double, 15>;
constexpr double kQuadTol = 1e-13;
constexpr int kQuadDepth = 12;

double quad(const std::function<double(double)>& f, double a, double b) {
    if (b <= a) return 0.0;
    return GK::integrate(f, a, b, kQuadDepth, kQuadTol);
}

// int_0^c f(s) ds for integrands with an s log s endpoint; the substitution
// s = c t^2 turns that into t^3 log t, which the adaptive rule resolves fast.
double quad_from_zero(const std::function<double(double)>& f, double c) {
    if (c <= 0.0) return 0.0;
    return quad([&](double t) { return f(c * t * t) * 2.0 * c * t; }, 0.0, 1.0);
}

// Delta a for the r0 weight: (1/r0)(1 + log(r0/r)) below r0, 1/r above.
double lap_a_r0(double r, double r0) {
    if (r <= 0.0) return std::numeric_limits<double>::infinity();
    return r < r0 ? (1.0 + std::log(r0 / r)) / r0 : 1.0 / r;
}

// a_r(r) = (1/r) int_0^r s Delta a(s) ds; the inner-core integral over
// [0, r0] is quadrature-evaluated once and reused above the kink.
double a_r_r0(double r, double r0, double core) {
    if (r <= 0.0) return 0.0;
    auto integrand = [r0](double s) { return s * lap_a_r0(s, r0); };
    if (r <= r0) return quad_from_zero(integrand, r) / r;
    return (core + quad(integrand, r0, r)) / r;
}

} // namespace

double w_r0(double s, double r0) { return s >= r0 ? 1.0 / (s * s * s) : 0.0; }

RadialWeight weight_abs(int dim) {
    RadialWeight w;
    w.label = "abs";
    w.dim = dim;
    w.r0 = 0.0;
    w.a = [](double r) { return r; };
    w.a_r = [](double) { return 1.0; };
    w.lap_a = [dim](double r) { return r > 0.0 ? (dim - 1) / r : 0.0; };
    w.lap_plus_r_dlap = [](double) { return 0.0; };
    return w;
}

RadialWeight weight_r0(double r0) {
    if (!(r0 > 0.0)) throw InvalidArgument("weight_r0: r0 must be positive");
    // core = int_0^{r0} s Delta a(s) ds; evaluated once, shared by the closures.
    const double core =
        quad_from_zero([r0](double s) { return s * lap_a_r0(s, r0); }, r0);
    RadialWeight w;
    w.label = "r0";
    w.dim = 2;
    w.r0 = r0;
    w.lap_a = [r0](double r) { return lap_a_r0(r, r0); };
    w.a_r = [r0, core](double r) { return a_r_r0(r, r0, core); };
    const double a_core =
        quad_from_zero([r0, core](double s) { return a_r_r0(s, r0, core); }, r0);
    w.a = [r0, core, a_core](double r) {
        auto ar = [r0, core](double s) { return a_r_r0(s, r0, core); };
        if (r <= r0) return quad_from_zero(ar, r);
        return a_core + quad(ar, r0, r);
    };
    w.lap_plus_r_dlap = [r0](double r) { return r < r0 ? std::log(r0 / r) / r0 : 0.0; };
    return w;
}

ConvexityReport convexity_certificate(const RadialWeight& w, const std::vector<double>& r_samples) {
    ConvexityReport rep;
    rep.r = r_samples;
    rep.q.reserve(r_samples.size());
    rep.a_rr.reserve(r_samples.size());
    double scale = 0.0;
    for (double r : r_samples) {
        // a_rr = Delta a - (n-1)/r a_r; q = r^2 a_rr is the certificate integral.
        double arr = w.lap_a(r) - (w.dim - 1) / r * w.a_r(r);
        double q = r * r * arr;
        rep.a_rr.push_back(arr);
        rep.q.push_back(q);
        scale = std::max(scale, std::abs(q));
    }
    double min_q = 0.0;
    for (double q : rep.q) min_q = std::min(min_q, q);
    rep.min_q_scaled = scale > 0.0 ? min_q / scale : min_q;
    rep.pass = min_q >= -1e-12 * std::max(scale, 1.0);
    return rep;
}

double WeightTable::operator()(double r) const {
    if (r <= 0.0) return a_r.front();
    double x = r / dr;
    auto i = static_cast<std::size_t>(x);
    if (i + 1 >= a_r.size()) return a_r.back();
    double f = x - static_cast<double>(i);
    return a_r[i] * (1.0 - f) + a_r[i + 1] * f;
}

WeightTable tabulate_a_r(const RadialWeight& w, double r_max, int n) {
    WeightTable t;
    t.dr = r_max / (n - 1);
    t.a_r.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) t.a_r[static_cast<std::size_t>(i)] = w.a_r(i * t.dr);
    return t;
}

BilaplacianPairing bilaplacian_pairing(const RadialWeight& w, const std::vector<double>& rho1,
                                       const std::vector<double>& rho2, const Grid& g,
                                       const PairSumOptions& opts) {
    if (g.dim != 2) throw InvalidArgument("bilaplacian_pairing: 2-D grids only");
    if (!(w.r0 > 0.0)) throw InvalidArgument("bilaplacian_pairing: needs the r0 weight");
    if (rho1.size() != g.size() || rho2.size() != g.size())
        throw InvalidArgument("bilaplacian_pairing: field size mismatch");

    BilaplacianPairing out;
    double dot = 0.0;
    for (std::size_t i = 0; i < rho1.size(); ++i) dot += rho1[i] * rho2[i];
    out.delta_term = 2.0 * M_PI / w.r0 * g.cell_measure() * dot;

    const auto xs = detail::cell_coords(g);
    const double r0 = w.r0;
    PairSumResult ws = detail::pair_sum(g, opts, [&](std::size_t i, std::size_t j) {
        double dx = g.wrap(xs[i][0] - xs[j][0]);
        double dy = g.wrap(xs[i][1] - xs[j][1]);
        double r2 = dx * dx + dy * dy;
        if (r2 < r0 * r0) return 0.0;
        return rho1[i] * rho2[j] / (r2 * std::sqrt(r2));
    });
    out.w_term = ws.value;
    out.stderr_est = ws.stderr_est;
    out.sampled = ws.sampled;
    out.value = out.delta_term - out.w_term;
    return out;
}

PairSumResult rearranged_square_form(double r0, const std::vector<double>& rho, const Grid& g,
                                     const PairSumOptions& opts) {
    if (g.dim != 2) throw InvalidArgument("rearranged_square_form: 2-D grids only");
    const auto xs = detail::cell_coords(g);
    return detail::pair_sum(
        g, opts,
        [&](std::size_t i, std::size_t j) {
            double dx = g.wrap(xs[i][0] - xs[j][0]);
            double dy = g.wrap(xs[i][1] - xs[j][1]);
            double r2 = dx * dx + dy * dy;
            if (r2 < r0 * r0) return 0.0;
            double d = rho[i] - rho[j];
            return d * d / (r2 * std::sqrt(r2));
        },
        /*symmetric=*/true);
}

void write_weight_table(const RadialWeight& w, const std::filesystem::path& path,
                        const std::vector<double>& r_samples) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open " + path.string() + " for writing");
    out << "schema_version,r,a,a_r,lap_a,a_rr\n";
    char buf[512];
    for (double r : r_samples) {
        double arr = w.lap_a(r) - (w.dim - 1) / r * w.a_r(r);
        std::snprintf(buf, sizeof buf, "1,%.17g,%.17g,%.17g,%.17g,%.17g\n", r, w.a(r), w.a_r(r),
                      w.lap_a(r), arr);
        out << buf;
    }
}

} // namespace nlslab
