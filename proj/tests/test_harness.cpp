#include "nlslab/errors.hpp"
#include "nlslab/report.hpp"
#include "nlslab/sweep.hpp"

#include "test_helpers.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>

using namespace nlslab;
using namespace nlslab::testing;

namespace {

namespace fs = std::filesystem;

ExperimentConfig tiny_thm2(ExperimentKind kind = ExperimentKind::thm2_1d_deriv) {
    ExperimentConfig c;
    c.experiment = kind;
    c.grid = {1, 32.0, 256};
    c.solver.p = 3.0;
    c.solver.dt = 2e-3;
    c.solver.dt_out = 2e-2;
    c.solver.t_final = 0.4;
    c.initial.kind = "gaussian";
    c.initial.amplitude = 1.0;
    c.initial.width = 2.0;
    c.initial.velocity[0] = 0.5;
    return c;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    REQUIRE(in);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

} // namespace

TEST_CASE("config text round trip and hashing") {
    ExperimentConfig c = tiny_thm2();
    std::string text = to_config_text(c);
    ExperimentConfig back = parse_config_text(text);
    CHECK(canonical_text(back) == canonical_text(c));
    CHECK(config_hash(back) == config_hash(c));

    // whitespace and comments do not affect the canonical form
    ExperimentConfig again = parse_config_text("# comment\n[solver]\n  p =   3.0\n" + text);
    CHECK(config_hash(again) == config_hash(c));

    ExperimentConfig other = c;
    other.solver.p = 3.5;
    CHECK(config_hash(other) != config_hash(c));
}

TEST_CASE("config errors name the offending key") {
    CHECK_THROWS_WITH_AS(parse_config_text("[solver]\nbogus = 1\n"),
                         doctest::Contains("solver.bogus"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config_text("[nope]\nx = 1\n"), doctest::Contains("nope"),
                         ConfigError);
    CHECK_THROWS_WITH_AS(parse_config_text("[solver]\np 3\n"), doctest::Contains("key = value"),
                         ConfigError);
    CHECK_THROWS_WITH_AS(parse_config_text("[solver]\np = abc\n"), doctest::Contains("solver.p"),
                         ConfigError);

    ExperimentConfig c = tiny_thm2();
    c.grid.points = 100;
    CHECK_THROWS_WITH_AS(c.validate(), doctest::Contains("grid.points"), ConfigError);

    c = tiny_thm2();
    c.experiment = ExperimentKind::i_energy;
    c.grid = {2, 8.0, 256};
    c.solver.p = 5.0;
    c.params.s = 0.5; // below s_k = 0.8
    c.params.n_dyadic = {8.0};
    CHECK_THROWS_WITH_AS(c.validate(), doctest::Contains("params.s"), ConfigError);

    CHECK_THROWS_AS(experiment_from_string("bogus"), ConfigError);
}

TEST_CASE("apply_override") {
    ExperimentConfig c = tiny_thm2();
    apply_override(c, "solver.p", "5");
    CHECK(c.solver.p == 5.0);
    apply_override(c, "initial.velocity", "0.25");
    CHECK(c.initial.velocity[0] == 0.25);
    CHECK_THROWS_AS(apply_override(c, "solver.zzz", "1"), ConfigError);
    CHECK_THROWS_AS(apply_override(c, "noseparator", "1"), ConfigError);
}

TEST_CASE("thm2 deriv run produces a finite ratio and the P1 cross-check") {
    EstimateReport rep = run_experiment(tiny_thm2());
    CHECK(rep.lhs > 0.0);
    CHECK(rep.rhs > 0.0);
    CHECK(std::isfinite(rep.ratio));
    CHECK(rep.aux.at("p1_cross_check_rel") < 0.02);
    CHECK(rep.aux.at("mass_drift_rel") < 1e-10);
    CHECK(rep.series_t.size() == 21);
    CHECK(rep.series.at("deriv_node").size() == 21);
}

TEST_CASE("thm1 in the near-linear regime matches the free flow") {
    ExperimentConfig c;
    c.experiment = ExperimentKind::thm1_2d;
    c.grid = {2, 16.0, 64};
    c.solver.p = 3.5;
    c.solver.dt = 2e-3;
    c.solver.dt_out = 2e-2;
    c.solver.t_final = 0.4;
    c.initial.kind = "gaussian";
    c.initial.amplitude = 1e-3;
    c.initial.width = 1.5;
    EstimateReport weak = run_experiment(c);

    ExperimentConfig lin = c;
    lin.solver.coupling = 0.0;
    EstimateReport free_rep = run_experiment(lin);
    CHECK(rel_err(weak.ratio, free_rep.ratio) < 0.01);
}

TEST_CASE("l4l8 homogeneity under the frozen linear flow") {
    ExperimentConfig c;
    c.experiment = ExperimentKind::l4l8_2d;
    c.grid = {2, 16.0, 64};
    c.solver.coupling = 0.0; // test hook
    c.solver.dt = 2e-3;
    c.solver.dt_out = 2e-2;
    c.solver.t_final = 0.4;
    c.initial.kind = "gaussian";
    c.initial.amplitude = 1.0;
    c.initial.width = 1.5;
    EstimateReport one = run_experiment(c);
    c.initial.amplitude = 2.0;
    EstimateReport two = run_experiment(c);
    CHECK(rel_err(two.lhs, 16.0 * one.lhs) < 1e-10);
    CHECK(rel_err(two.rhs, 16.0 * one.rhs) < 1e-10);
    CHECK(rel_err(two.ratio, one.ratio) < 1e-6);
    CHECK(one.lhs <= one.aux.at("sobolev_chain_ratio") * one.aux.at("halfderiv_lhs_sq") * 1.0001);
}

TEST_CASE("monotonicity: free flow from rest starts at zero and increases") {
    ExperimentConfig c;
    c.experiment = ExperimentKind::monotonicity;
    c.grid = {1, 48.0, 512};
    c.solver.coupling = 0.0;
    c.solver.dt = 1e-3;
    c.solver.dt_out = 1e-2;
    c.solver.t_final = 0.5;
    c.initial.kind = "gaussian";
    c.initial.amplitude = 1.0;
    c.initial.width = 1.5;
    EstimateReport rep = run_experiment(c);
    const auto& action = rep.series.at("action");
    CHECK(std::abs(action.front()) < 1e-12);
    CHECK(action.back() > 1e-4);
    CHECK(rep.aux.at("min_increment_scaled") >= -1e-6);

    // halving dt leaves the sampled action curve unchanged
    ExperimentConfig fine = c;
    fine.solver.dt = 5e-4;
    EstimateReport rep2 = run_experiment(fine);
    double worst = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < action.size(); ++i) {
        worst = std::max(worst, std::abs(action[i] - rep2.series.at("action")[i]));
        scale = std::max(scale, std::abs(action[i]));
    }
    CHECK(worst / scale < 1e-6);
}

TEST_CASE("scattering diagnostic is exactly Cauchy for the linear flow") {
    ExperimentConfig c;
    c.experiment = ExperimentKind::scattering;
    c.grid = {2, 16.0, 64};
    c.solver.p = 5.0;
    c.solver.coupling = 0.0;
    c.solver.dt = 2e-3;
    c.solver.dt_out = 2e-2;
    c.solver.t_final = 0.4;
    c.initial.kind = "gaussian";
    c.initial.amplitude = 0.5;
    c.initial.width = 1.5;
    EstimateReport rep = run_experiment(c);
    CHECK(rep.aux.at("d0") <= 1e-10);
    // d is a max over a shrinking pair set: non-increasing by construction
    const auto& d = rep.series.at("cauchy_tail");
    for (std::size_t i = 0; i + 1 < d.size(); ++i) CHECK(d[i + 1] <= d[i] + 1e-18);
}

TEST_CASE("i_energy: I acts as the identity on fully resolved data") {
    ExperimentConfig c;
    c.experiment = ExperimentKind::i_energy;
    c.grid = {2, 8.0, 256}; // nyquist ~ 100.5
    c.solver.p = 5.0;
    c.solver.dt = 1e-3;
    c.solver.dt_out = 5e-3;
    c.solver.t_final = 0.05;
    c.initial.kind = "random";
    c.initial.amplitude = 0.4;
    c.initial.width = 0.7; // outer-shell mass below the guard on the L = 8 box
    c.initial.seed = 3;
    c.initial.band_limit = 8.0;
    c.params.s = 0.85;
    c.params.n_dyadic = {32.0, 16.0};
    EstimateReport rep = run_experiment(c);

    // data band-limited to 8 and weak coupling: N = 32 leaves every occupied
    // mode untouched, so inc(32) collapses to the solver's own energy drift
    double drift = rep.aux.at("energy_drift_rel") * rep.series.at("energy").front();
    CHECK(rep.aux.at("inc_N32") <= drift * 1.5 + 1e-12);
    CHECK(rep.aux.at("inc_N16") >= 0.0);
}

TEST_CASE("scale invariance") {
    ExperimentConfig c;
    c.experiment = ExperimentKind::scale_invariance;
    c.grid = {1, 32.0, 256};
    c.solver.p = 3.0;
    c.solver.dt = 1e-3;
    c.solver.dt_out = 1e-2;
    c.solver.t_final = 0.2;
    c.initial.kind = "gaussian";
    c.initial.amplitude = 1.0;
    c.initial.width = 1.5;
    c.params.lambda = 1.0;
    EstimateReport same = run_experiment(c);
    CHECK(same.aux.at("evolved_rel_gap") < 1e-12);

    c.params.lambda = 2.0;
    EstimateReport rep = run_experiment(c);
    CHECK(rep.aux.at("frozen_rel_gap") < 1e-8);
    CHECK(rep.aux.at("evolved_rel_gap") < 0.01);
}

TEST_CASE("run_to_dir writes the full output set deterministically") {
    TempDir tmp("nlslab_run_dir");
    ExperimentConfig c = tiny_thm2();
    run_to_dir(c, tmp.path / "a");
    run_to_dir(c, tmp.path / "b");
    CHECK(slurp(tmp.path / "a" / "aggregate.csv") == slurp(tmp.path / "b" / "aggregate.csv"));
    CHECK(fs::exists(tmp.path / "a" / "report.json"));
    CHECK(fs::exists(tmp.path / "a" / "manifest.json"));

    // seed override changes the hash column
    RunOptions opts;
    opts.seed_override = 7;
    run_to_dir(c, tmp.path / "c", opts);
    CHECK(slurp(tmp.path / "a" / "aggregate.csv") != slurp(tmp.path / "c" / "aggregate.csv"));
}

TEST_CASE("store_snapshots emits a loadable trajectory") {
    TempDir tmp("nlslab_snap_dir");
    ExperimentConfig c = tiny_thm2();
    c.store_snapshots = true;
    run_to_dir(c, tmp.path);
    Trajectory traj = Trajectory::load(tmp.path / "trajectory");
    CHECK(traj.snapshots.size() == 21);
    CHECK(traj.grid.points == 256);
}

TEST_CASE("sweep aggregates rows in value order at any worker count") {
    TempDir tmp("nlslab_sweep_dir");
    ExperimentConfig c = tiny_thm2(ExperimentKind::thm2_1d_p3);
    c.solver.t_final = 0.2;

    RunOptions one;
    one.workers = 1;
    SweepResult r1 = sweep(c, "solver.p", {"3.5", "5", "7"}, tmp.path / "w1", one);
    CHECK(r1.total == 3);
    CHECK(r1.failed == 0);

    RunOptions four;
    four.workers = 4;
    sweep(c, "solver.p", {"3.5", "5", "7"}, tmp.path / "w4", four);
    CHECK(slurp(tmp.path / "w1" / "aggregate.csv") == slurp(tmp.path / "w4" / "aggregate.csv"));

    std::string summary = slurp(tmp.path / "w1" / "summary.json");
    CHECK(summary.find("ratio_spread") != std::string::npos);

    CHECK_THROWS_AS(sweep(c, "solver.p", {}, tmp.path / "empty"), ConfigError);
    CHECK_THROWS_AS(sweep(c, "solver.bogus", {"1"}, tmp.path / "bad"), ConfigError);

    // a run that breaches the guard mid-sweep is marked, the rest continue
    ExperimentConfig wide = c;
    wide.solver.t_final = 1.0;
    wide.solver.dt_out = 0.1;
    SweepResult part = sweep(wide, "initial.width", {"2", "8"}, tmp.path / "part");
    CHECK(part.total == 2);
    CHECK(part.failed == 1);
    std::string rows = slurp(tmp.path / "part" / "aggregate.csv");
    CHECK(rows.find(",ok") != std::string::npos);
    CHECK(rows.find("run_error") != std::string::npos);
    CHECK(fs::exists(tmp.path / "part" / "run_0001" / "error.json"));
}

TEST_CASE("sweeping the I-frequency fits a slope and emits inc tables") {
    TempDir tmp("nlslab_ie_sweep");
    ExperimentConfig c;
    c.experiment = ExperimentKind::i_energy;
    c.grid = {2, 8.0, 256};
    c.solver.p = 5.0;
    c.solver.dt = 5e-4;
    c.solver.dt_out = 2.5e-3;
    c.solver.t_final = 0.01;
    c.initial.kind = "random";
    c.initial.amplitude = 1.0;
    c.initial.width = 0.7;
    c.initial.seed = 3;
    c.initial.band_limit = 40.0;
    c.initial.spectral_decay = 1.75;
    c.params.s = 0.85;
    c.params.n_dyadic = {8.0};

    SweepResult res = sweep(c, "params.n_dyadic", {"8", "16", "32"}, tmp.path);
    CHECK(res.failed == 0);
    std::string summary = slurp(res.summary_json);
    CHECK(summary.find("i_energy_slope") != std::string::npos);

    emit_plotdata(tmp.path, false);
    std::string inc = slurp(tmp.path / "run_0000" / "inc_vs_N.csv");
    CHECK(inc.find("schema_version,N,inc") == 0);
}

TEST_CASE("plotdata emits series csv") {
    TempDir tmp("nlslab_plot_dir");
    ExperimentConfig c = tiny_thm2();
    run_to_dir(c, tmp.path / "run");
    auto files = emit_plotdata(tmp.path, true);
    CHECK(fs::exists(tmp.path / "run" / "series.csv"));
    bool has_svg = false;
    for (const auto& f : files)
        if (f.find(".svg") != std::string::npos) has_svg = true;
    CHECK(has_svg);

    std::string series = slurp(tmp.path / "run" / "series.csv");
    CHECK(series.find("schema_version,t") == 0);
    CHECK(series.find("mass") != std::string::npos);

    CHECK_THROWS_AS(emit_plotdata(tmp.path / "nothing_here", false), ConfigError);
}

TEST_CASE("rerun of a config+seed is byte-identical including random data") {
    TempDir tmp("nlslab_det_dir");
    ExperimentConfig c = tiny_thm2();
    c.initial.kind = "random";
    c.initial.width = 2.2;
    c.initial.band_limit = 6.0; // keep the fastest packets inside the shell
    c.solver.t_final = 0.2;
    c.initial.seed = 42;
    c.seed = 17;
    run_to_dir(c, tmp.path / "a");
    run_to_dir(c, tmp.path / "b");
    CHECK(slurp(tmp.path / "a" / "aggregate.csv") == slurp(tmp.path / "b" / "aggregate.csv"));

    // reports agree apart from the wall clock
    auto strip_wall = [](std::string s) {
        auto pos = s.find("\"wall_time_s\"");
        if (pos != std::string::npos) {
            auto end = s.find('\n', pos);
            s.erase(pos, end - pos);
        }
        return s;
    };
    CHECK(strip_wall(slurp(tmp.path / "a" / "report.json")) ==
          strip_wall(slurp(tmp.path / "b" / "report.json")));
}
