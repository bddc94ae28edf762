#include "nlslab/analysis.hpp"
#include "nlslab/errors.hpp"
#include "nlslab/weights.hpp"

#include "test_helpers.hpp"

#include <doctest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <filesystem>
#include <fstream>

using namespace nlslab;
using namespace nlslab::testing;

namespace {

std::vector<double> log_samples(double lo, double hi, int n) {
    std::vector<double> out;
    for (int i = 0; i < n; ++i)
        out.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1)));
    return out;
}

// rho1(x) = |u|^2 for a pair of separated bumps; used by the pairing tests.
std::vector<double> bump_pair_density(const Grid& g) {
    std::vector<double> rho(g.size());
    std::size_t idx = 0;
    for (int j0 = 0; j0 < g.points; ++j0)
        for (int j1 = 0; j1 < g.points; ++j1, ++idx) {
            double x = g.coord(j0), y = g.coord(j1);
            double a = std::exp(-((x - 1.5) * (x - 1.5) + y * y) / 0.49);
            double b = std::exp(-((x + 1.5) * (x + 1.5) + y * y) / 0.49);
            rho[idx] = (a + b) * (a + b);
        }
    return rho;
}

} // namespace

TEST_CASE("abs weight") {
    RadialWeight w = weight_abs(2);
    CHECK(w.a(2.5) == 2.5);
    CHECK(w.a_r(17.0) == 1.0);
    CHECK(w.lap_a(2.0) == 0.5);

    ConvexityReport rep = convexity_certificate(w, log_samples(1e-3, 50.0, 40));
    CHECK(rep.pass);
    for (double arr : rep.a_rr) CHECK(std::abs(arr) < 1e-12);

    RadialWeight w1 = weight_abs(1);
    CHECK(w1.lap_a(3.0) == 0.0);
    CHECK(convexity_certificate(w1, log_samples(1e-3, 50.0, 40)).pass);
}

TEST_CASE("r0 weight closed forms") {
    const double r0 = 0.7;
    RadialWeight w = weight_r0(r0);

    CHECK(rel_err(w.lap_a(r0 / M_E), 2.0 / r0) < 1e-14);
    // continuity at r0: the left limit (1/r0)(1 + log 1) equals 1/r0
    CHECK(rel_err(w.lap_a(r0 * (1 - 1e-13)), 1.0 / r0) < 1e-10);
    CHECK(rel_err(w.lap_a(r0), 1.0 / r0) < 1e-14);

    // quadrature a_r against the frozen closed forms
    CHECK(std::abs(w.a_r(r0) - 0.75) < 1e-10);
    for (double r : {0.1, 0.3, 0.5, 0.69}) {
        double exact = (r / r0) * (0.75 + 0.5 * std::log(r0 / r));
        CHECK(rel_err(w.a_r(r), exact) < 1e-10);
    }
    for (double r : {1.0, 2.0, 10.0, 70.0}) {
        double exact = 1.0 - r0 / (4.0 * r);
        CHECK(rel_err(w.a_r(r), exact) < 1e-10);
    }
    CHECK(std::abs(w.a_r(100.0 * r0) - 0.9975) < 1e-10);

    // a(r): r^2/(2 r0) (1 + log(r0/r)/2) below r0; a(r0) = r0/2
    for (double r : {0.2, 0.5}) {
        double exact = r * r / (2.0 * r0) * (1.0 + 0.5 * std::log(r0 / r));
        CHECK(rel_err(w.a(r), exact) < 1e-9);
    }
    CHECK(rel_err(w.a(r0), 0.5 * r0) < 1e-9);

    // a_r bounded by [0, 1], monotone non-decreasing
    double prev = 0.0;
    for (double r : log_samples(1e-3 * r0, 100.0 * r0, 60)) {
        double ar = w.a_r(r);
        CHECK(ar >= -1e-12);
        CHECK(ar <= 1.0 + 1e-12);
        CHECK(ar >= prev - 1e-12);
        prev = ar;
    }

    CHECK_THROWS_AS(weight_r0(-1.0), InvalidArgument);
}

TEST_CASE("convexity certificate for the r0 weight") {
    RadialWeight w = weight_r0(1.0);
    ConvexityReport rep = convexity_certificate(w, log_samples(1e-3, 50.0, 50));
    CHECK(rep.pass);
    CHECK(rep.min_q_scaled >= -1e-12);

    // closed form Delta a + r (Delta a)': 1 at r = 1/e, 0 at r = 2 (r0 = 1)
    CHECK(w.lap_plus_r_dlap(1.0 / M_E) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(w.lap_plus_r_dlap(2.0) == 0.0);
}

TEST_CASE("w_r0 mass identity under quadrature") {
    const double r0 = 0.25;
    using GK = boost::math::quadrature::gauss_kronrod<double, 15>;
    double R = 1e4 * r0;
    double quad = GK::integrate([&](double s) { return 2.0 * M_PI * s * w_r0(s, r0); }, r0, R, 15,
                                1e-13);
    double closed = 2.0 * M_PI * (1.0 / r0 - 1.0 / R);
    CHECK(rel_err(quad, closed) < 1e-8);
    CHECK(rel_err(quad, 2.0 * M_PI / r0) < 2e-4); // gap to the limit is exactly r0/R
    CHECK(rel_err(quad, 2.0 * M_PI / r0) > 0.5e-4);
}

TEST_CASE("bilaplacian pairing against the rearranged square form") {
    Grid g = make_grid(2, 8.0, 32);
    const double r0 = 0.5;
    RadialWeight w = weight_r0(r0);
    std::vector<double> rho = bump_pair_density(g);

    BilaplacianPairing pr = bilaplacian_pairing(w, rho, rho, g);
    PairSumResult rr = rearranged_square_form(r0, rho, g);
    CHECK(rr.value >= 0.0);

    // exact discrete identity: P - R/2 = (2 pi / r0 - Wbar) sum rho^2 h^2,
    // Wbar the torus mass of w_{r0}
    double wbar = 0.0;
    for (int j0 = 0; j0 < g.points; ++j0)
        for (int j1 = 0; j1 < g.points; ++j1) {
            double dx = g.wrap(g.coord(j0) - g.coord(0));
            double dy = g.wrap(g.coord(j1) - g.coord(0));
            double s2 = dx * dx + dy * dy;
            if (s2 >= r0 * r0) wbar += 1.0 / (s2 * std::sqrt(s2));
        }
    wbar *= g.cell_measure();
    double sum_rho2 = 0.0;
    for (double r : rho) sum_rho2 += r * r;
    sum_rho2 *= g.cell_measure();
    double expected_gap = (2.0 * M_PI / r0 - wbar) * sum_rho2;
    CHECK(rel_err(pr.value - 0.5 * rr.value, expected_gap) < 1e-10);

    // uniform-on-a-ball density: rearranged form still nonnegative, pairing
    // carries the same positive truncation offset
    std::vector<double> ball(g.size(), 0.0);
    std::size_t idx = 0;
    for (int j0 = 0; j0 < g.points; ++j0)
        for (int j1 = 0; j1 < g.points; ++j1, ++idx) {
            double x = g.coord(j0), y = g.coord(j1);
            if (x * x + y * y <= 4.0) ball[idx] = 1.0;
        }
    CHECK(rearranged_square_form(r0, ball, g).value >= 0.0);
    CHECK(bilaplacian_pairing(w, ball, ball, g).value >= 0.0);

    // constant density on the torus: the rearranged form vanishes identically
    std::vector<double> flat(g.size(), 0.7);
    CHECK(rearranged_square_form(r0, flat, g).value == 0.0);
}

TEST_CASE("rearranged form converges to the Besov integral as r0 -> 0") {
    Grid g = make_grid(2, 8.0, 64);
    Field u = make_field(g);
    std::size_t idx = 0;
    for (int j0 = 0; j0 < g.points; ++j0)
        for (int j1 = 0; j1 < g.points; ++j1, ++idx) {
            double x = g.coord(j0), y = g.coord(j1);
            u.values[idx] = std::exp(-((x - 1.5) * (x - 1.5) + y * y) / 0.49) +
                            std::exp(-((x + 1.5) * (x + 1.5) + y * y) / 0.49);
        }
    std::vector<double> rho(g.size());
    for (std::size_t i = 0; i < rho.size(); ++i) rho[i] = std::norm(u.values[i]);

    double besov = besov_double_integral(u).value;
    REQUIRE(besov > 0.0);
    double prev_gap = 1e9;
    for (double r0 : {2.0, 1.0, 0.5, 0.25}) {
        double r = rearranged_square_form(r0, rho, g).value;
        double gap = (besov - r) / besov;
        CHECK(gap > 0.0); // truncated kernel underestimates
        CHECK(gap < prev_gap);
        prev_gap = gap;
    }
    // the removed |z| < r0 core is O(r0); at r0 = 2h the residual sits near 1/4
    CHECK(prev_gap < 0.30);
}

TEST_CASE("pair budget") {
    Grid g = make_grid(2, 8.0, 32);
    std::vector<double> rho = bump_pair_density(g);
    PairSumOptions opts;
    opts.max_direct_pairs = 1000;
    opts.allow_sampling = false;
    CHECK_THROWS_AS(rearranged_square_form(0.5, rho, g, opts), BudgetExceeded);

    // stratified estimate agrees with direct within a few standard errors
    PairSumResult direct = rearranged_square_form(0.5, rho, g);
    opts.allow_sampling = true;
    opts.samples_per_point = 64;
    opts.seed = 11;
    PairSumResult sampled = rearranged_square_form(0.5, rho, g, opts);
    CHECK(sampled.sampled);
    CHECK(sampled.stderr_est > 0.0);
    CHECK(std::abs(sampled.value - direct.value) < 6.0 * sampled.stderr_est);

    // deterministic: same seed, same estimate
    PairSumResult again = rearranged_square_form(0.5, rho, g, opts);
    CHECK(again.value == sampled.value);
}

TEST_CASE("weight table export") {
    RadialWeight w = weight_r0(0.5);
    auto path = std::filesystem::temp_directory_path() / "nlslab_weight_table.csv";
    write_weight_table(w, path, log_samples(0.01, 5.0, 12));
    std::ifstream in(path);
    std::string header;
    std::getline(in, header);
    CHECK(header == "schema_version,r,a,a_r,lap_a,a_rr");
    int rows = 0;
    for (std::string line; std::getline(in, line);) ++rows;
    CHECK(rows == 12);
    std::filesystem::remove(path);
}

TEST_CASE("tabulated a_r tracks the quadrature values") {
    RadialWeight w = weight_r0(0.5);
    WeightTable t = tabulate_a_r(w, 10.0, 4096);
    // linear interpolation error is (dr^2/8) |a_r''|, largest near the core
    for (double r : {0.1, 0.45, 0.8, 3.0, 9.5})
        CHECK(rel_err(t(r), w.a_r(r)) < 2e-5);
}
