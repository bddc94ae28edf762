#include "nlslab/errors.hpp"
#include "nlslab/initial.hpp"
#include "nlslab/solver.hpp"
#include "nlslab/spectral.hpp"

#include "test_helpers.hpp"

#include <doctest.h>

#include <filesystem>

using namespace nlslab;
using namespace nlslab::testing;

namespace {

SolverConfig cfg_1d(double p = 3.0, double dt = 1e-3, double T = 2.0, double dt_out = 1e-2) {
    SolverConfig c;
    c.p = p;
    c.dt = dt;
    c.t_final = T;
    c.dt_out = dt_out;
    return c;
}

} // namespace

TEST_CASE("config validation") {
    SolverConfig c = cfg_1d();
    CHECK_NOTHROW(c.validate());
    c.dt_out = 0.0033; // not an integer multiple of dt
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = cfg_1d();
    c.p = 1.0;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = cfg_1d();
    c.dt = -1e-3; // sign mismatch with T
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = cfg_1d(3.0, -1e-3, -2.0, -1e-2); // reversed run is fine
    CHECK_NOTHROW(c.validate());
}

TEST_CASE("nonlinear phase") {
    Grid g = make_grid(1, 32.0, 256);
    Field f = gaussian(g, 1.0, 0.5);

    Field out = nonlinear_phase(f, 3.0, 0.1);
    double worst = 0.0;
    for (std::size_t i = 0; i < f.values.size(); ++i)
        worst = std::max(worst, std::abs(std::abs(out.values[i]) - std::abs(f.values[i])));
    CHECK(worst <= 1e-14 * norm_lp(f, std::numeric_limits<double>::infinity()));

    // constant field: phase rotates by A^2 dt exactly for p = 3
    Field c = make_field(g);
    const double A = 0.8, dt = 0.37;
    for (auto& z : c.values) z = A;
    Field rot = nonlinear_phase(c, 3.0, dt);
    cplx expected = A * std::polar(1.0, -A * A * dt);
    CHECK(std::abs(rot.at(7) - expected) < 1e-15);

    Field idn = nonlinear_phase(f, 3.0, 0.0);
    CHECK(max_pointwise_err(idn, f) == 0.0);
}

TEST_CASE("strang step") {
    Grid g = make_grid(1, 32.0, 256);
    Field f = gaussian(g, 1.0, 0.3);

    SolverConfig c = cfg_1d(3.0, 1e-2, 1e-2, 1e-2);
    c.coupling = 0.0;
    Field stepped = strang_step(f, c);
    Field free = free_propagate(f, c.dt);
    CHECK(max_pointwise_err(stepped, free) / norm_l2(free) < 1e-13);

    c.coupling = 1.0;
    Field full = strang_step(f, c);
    CHECK(rel_err(mass(full), mass(f)) <= 1e-14);
}

TEST_CASE("self-convergence is second order") {
    Grid g = make_grid(1, 32.0, 256);
    Field f0 = gaussian(g, 1.5, 0.4);
    const double T = 0.5;
    auto final_state = [&](double dt) {
        Field out = f0;
        evolve(f0, cfg_1d(3.0, dt, T, T), [&](double t, const Field& u) {
            if (t == T) out = u;
        });
        return out;
    };
    Field ref = final_state(T / 4096);
    auto err = [&](double dt) {
        Field d = final_state(dt);
        for (std::size_t i = 0; i < d.values.size(); ++i) d.values[i] -= ref.values[i];
        return norm_l2(d);
    };
    double e1 = err(T / 128);
    double e2 = err(T / 256);
    CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.2));
}

TEST_CASE("conserved quantities on closed forms") {
    Grid g = make_grid(1, 40.0, 1024);
    Field f = gaussian(g, 1.0);
    CHECK(std::abs(mass(f) - std::sqrt(M_PI / 2.0)) < 1e-8);

    auto mom_real = momentum(f);
    CHECK(std::abs(mom_real[0]) < 1e-12);

    double v = 0.7;
    Field fv = gaussian(g, 1.0, v);
    auto mom = momentum(fv);
    CHECK(std::abs(mom[0] - v * mass(fv)) < 1e-8);

    // defocusing energy dominates the kinetic part
    Field fr = random_band_limited(g, 10.0, 3, 1.0);
    double grad = norm_hdot(fr, 1.0);
    CHECK(energy(fr, 3.0) >= 0.5 * grad * grad);
    CHECK(energy(fr, 3.0) >= 0.0);
}

TEST_CASE("evolve conserves mass, energy, momentum") {
    Grid g = make_grid(1, 64.0, 512);
    Field f0 = gaussian(g, 2.0, 0.5);
    SolverConfig c = cfg_1d(3.0, 1e-3, 2.0, 2e-2);
    Trajectory traj = evolve(f0, c);
    REQUIRE(traj.snapshots.size() == 101);
    CHECK(traj.times.front() == 0.0);
    CHECK(traj.times.back() == doctest::Approx(2.0));

    double m0 = mass(traj.snapshots.front());
    double e0 = energy(traj.snapshots.front(), c.p);
    double p0 = momentum(traj.snapshots.front())[0];
    double dm = 0, de = 0, dp = 0;
    for (const auto& u : traj.snapshots) {
        dm = std::max(dm, std::abs(mass(u) - m0));
        de = std::max(de, std::abs(energy(u, c.p) - e0));
        dp = std::max(dp, std::abs(momentum(u)[0] - p0));
    }
    CHECK(dm / m0 <= 1e-10);
    CHECK(de / e0 <= 1e-6);
    CHECK(dp / std::abs(p0) <= 1e-6);

    // symmetric real data: momentum stays at zero in absolute terms
    Field sym = gaussian(g, 2.0);
    Trajectory ts = evolve(sym, cfg_1d(3.0, 1e-3, 0.5, 1e-2));
    double worst = 0.0;
    for (const auto& u : ts.snapshots) worst = std::max(worst, std::abs(momentum(u)[0]));
    CHECK(worst <= 1e-8);
}

TEST_CASE("zero data stays zero") {
    Grid g = make_grid(1, 32.0, 128);
    Field z = make_field(g);
    Trajectory traj = evolve(z, cfg_1d());
    for (const auto& u : traj.snapshots) CHECK(norm_l2(u) == 0.0);
}

TEST_CASE("time reversibility") {
    Grid g = make_grid(1, 64.0, 512);
    Field f0 = gaussian(g, 2.0, 0.3);
    SolverConfig fwd = cfg_1d(3.0, 1e-3, 1.0, 1e-2);
    Field end = f0;
    evolve(f0, fwd, [&](double t, const Field& u) {
        if (t == fwd.t_final) end = u;
    });
    SolverConfig bwd = cfg_1d(3.0, -1e-3, -1.0, -1e-2);
    Field back = end;
    evolve(end, bwd, [&](double t, const Field& u) {
        if (t == bwd.t_final) back = u;
    });
    Field diff = back;
    for (std::size_t i = 0; i < diff.values.size(); ++i) diff.values[i] -= f0.values[i];
    CHECK(norm_l2(diff) <= 1e-6);
}

TEST_CASE("guards abort bad runs") {
    // narrow box: dispersion reaches the outer shell quickly
    Grid g = make_grid(1, 16.0, 128);
    Field f0 = gaussian(g, 2.0);
    CHECK_THROWS_AS(evolve(f0, cfg_1d(3.0, 1e-2, 2.0, 1e-1)), TruncationBreach);

    Field bad = f0;
    bad.at(3) = cplx{std::nan(""), 0.0};
    CHECK_THROWS_AS(evolve(bad, cfg_1d()), NumericalBlowup);
}

TEST_CASE("rescale") {
    Grid g = make_grid(1, 64.0, 512);
    Field f = gaussian(g, 1.0, 0.4);

    RescaleResult same = rescale(f, 1.0, 3.0);
    CHECK(same.field.grid == g);
    CHECK(max_pointwise_err(same.field, f) == 0.0);
    CHECK_FALSE(same.resolution_warning);

    // spectral tail beyond half-Nyquist trips the resolution warning
    Field rough = random_band_limited(g, 0.9 * g.nyquist_angular(), 4, 0.0);
    CHECK(rescale(rough, 2.0, 3.0).resolution_warning);

    // critical-norm invariance: s_c = 1/2 - 2/(p-1) in 1-D
    for (double p : {3.0, 7.0}) {
        double sc = 0.5 - 2.0 / (p - 1.0);
        RescaleResult r = rescale(f, 2.0, p);
        CHECK(rel_err(norm_hdot(r.field, sc), norm_hdot(f, sc)) < 1e-8);
    }

    // evolve-then-rescale equals rescale-then-evolve with scaled times
    double lambda = 2.0, p = 3.0, T = 0.5;
    SolverConfig base = cfg_1d(p, 1e-3, T, T);
    Field endA = f;
    evolve(f, base, [&](double t, const Field& u) {
        if (t == T) endA = u;
    });
    Field scaledA = rescale(endA, lambda, p).field;

    Field f_scaled = rescale(f, lambda, p).field;
    SolverConfig scaled_cfg =
        cfg_1d(p, 1e-3 * lambda * lambda, T * lambda * lambda, T * lambda * lambda);
    Field endB = f_scaled;
    evolve(f_scaled, scaled_cfg, [&](double t, const Field& u) {
        if (t == scaled_cfg.t_final) endB = u;
    });
    Field diff = scaledA;
    for (std::size_t i = 0; i < diff.values.size(); ++i) diff.values[i] -= endB.values[i];
    CHECK(norm_l2(diff) / norm_l2(endB) < 1e-10);
}

TEST_CASE("trajectory serialization") {
    Grid g = make_grid(1, 32.0, 64);
    Field f0 = gaussian(g, 3.0, 0.0, 0.0, 0.3);
    Trajectory traj = evolve(f0, cfg_1d(3.0, 1e-2, 0.1, 5e-2));
    auto dir = std::filesystem::temp_directory_path() / "nlslab_test_traj";
    traj.save(dir);
    Trajectory back = Trajectory::load(dir);
    CHECK(back.times == traj.times);
    CHECK(back.grid == traj.grid);
    REQUIRE(back.snapshots.size() == traj.snapshots.size());
    for (std::size_t i = 0; i < back.snapshots.size(); ++i)
        CHECK(max_pointwise_err(back.snapshots[i], traj.snapshots[i]) == 0.0);
    std::filesystem::remove_all(dir);
}
