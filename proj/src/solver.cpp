#include "nlslab/solver.hpp"

#include "nlslab/errors.hpp"
#include "nlslab/spectral.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <fstream>

namespace nlslab {

namespace {

long checked_ratio(double num, double den, const char* what) {
    double q = num / den;
    long r = std::lround(q);
    if (r < 1 || std::abs(q - r) > 1e-9 * std::max(1.0, std::abs(q)))
        throw ConfigError(std::string(what) + " must be a positive integer, got " +
                          std::to_string(q));
    return r;
}

// u *= exp(-i phase_scale |u|^{p-1}) pointwise; |u| is preserved exactly.
void phase_rotate_inplace(std::vector<cplx>& v, double p, double phase_scale) {
    if (phase_scale == 0.0) return;
    const double q = 0.5 * (p - 1.0);
    auto rotate = [&](cplx& z, double amp_pow) {
        double ph = -phase_scale * amp_pow;
        z *= cplx{std::cos(ph), std::sin(ph)};
    };
    if (q == 1.0) {
        for (cplx& z : v) rotate(z, std::norm(z));
    } else if (q == 2.0) {
        for (cplx& z : v) {
            double n2 = std::norm(z);
            rotate(z, n2 * n2);
        }
    } else if (q == 3.0) {
        for (cplx& z : v) {
            double n2 = std::norm(z);
            rotate(z, n2 * n2 * n2);
        }
    } else {
        for (cplx& z : v) {
            double n2 = std::norm(z);
            rotate(z, n2 > 0.0 ? std::pow(n2, q) : 0.0);
        }
    }
}

std::vector<cplx> kinetic_table(const Grid& g, double t) {
    Multiplier m;
    m.label = "kinetic";
    m.symbol = [t](const double* xi, int dim) {
        double r2 = xi[0] * xi[0] + (dim == 2 ? xi[1] * xi[1] : 0.0);
        return std::polar(1.0, -t * r2);
    };
    return symbol_table(g, m);
}

void check_guards(const Field& u, double t, const SolverConfig& cfg, double amp0,
                  GuardStats* stats) {
    if (!all_finite(u)) throw NumericalBlowup(t, "non-finite value in field");
    double frac = outer_mass_fraction(u);
    double amp = norm(u, NormKind::lebesgue, std::numeric_limits<double>::infinity());
    double ratio = amp0 > 0.0 ? amp / amp0 : 0.0;
    if (stats) {
        stats->max_outer_mass_fraction = std::max(stats->max_outer_mass_fraction, frac);
        stats->max_amplitude_ratio = std::max(stats->max_amplitude_ratio, ratio);
    }
    if (frac > cfg.truncation_limit) throw TruncationBreach(t, frac);
    if (ratio > cfg.blowup_factor)
        throw NumericalBlowup(t, "amplitude grew by " + std::to_string(ratio) + "x");
}

} // namespace

void SolverConfig::validate() const {
    if (!(p > 1.0)) throw ConfigError("solver.p must be > 1, got " + std::to_string(p));
    if (dt == 0.0 || dt_out == 0.0 || t_final == 0.0)
        throw ConfigError("solver.dt, solver.dt_out, solver.T must be nonzero");
    // Negative steps run the flow backwards; signs must agree.
    if ((dt > 0) != (dt_out > 0) || (dt > 0) != (t_final > 0))
        throw ConfigError("solver.dt, solver.dt_out, solver.T must share a sign");
    if (std::abs(dt) > std::abs(dt_out) || std::abs(dt_out) > std::abs(t_final))
        throw ConfigError("solver requires |dt| <= |dt_out| <= |T|");
    checked_ratio(dt_out, dt, "solver.dt_out / solver.dt");
    checked_ratio(t_final, dt_out, "solver.T / solver.dt_out");
    if (!(coupling >= 0.0)) throw ConfigError("solver.coupling must be >= 0");
}

long SolverConfig::steps_per_snapshot() const { return checked_ratio(dt_out, dt, "dt_out/dt"); }
long SolverConfig::snapshot_count() const { return checked_ratio(t_final, dt_out, "T/dt_out"); }

Field nonlinear_phase(const Field& f, double p, double dt) {
    Field out = f;
    phase_rotate_inplace(out.values, p, dt);
    return out;
}

Field strang_step(const Field& f, const SolverConfig& cfg) {
    cfg.validate();
    Field u = free_propagate(f, 0.5 * cfg.dt);
    phase_rotate_inplace(u.values, cfg.p, cfg.coupling * cfg.dt);
    return free_propagate(u, 0.5 * cfg.dt);
}

void evolve(const Field& f0, const SolverConfig& cfg,
            const std::function<void(double, const Field&)>& observer, GuardStats* stats) {
    cfg.validate();
    const long steps_per = cfg.steps_per_snapshot();
    const long n_out = cfg.snapshot_count();
    const Grid& g = f0.grid;

    const double amp0 = norm(f0, NormKind::lebesgue, std::numeric_limits<double>::infinity());
    check_guards(f0, 0.0, cfg, amp0, stats);
    observer(0.0, f0);

    const std::vector<cplx> half = kinetic_table(g, 0.5 * cfg.dt);
    const std::vector<cplx> full = kinetic_table(g, cfg.dt);

    Field u = f0;
    for (long snap = 1; snap <= n_out; ++snap) {
        // Strang composition with interior half-steps merged.
        u = apply_table(u, half);
        phase_rotate_inplace(u.values, cfg.p, cfg.coupling * cfg.dt);
        for (long k = 1; k < steps_per; ++k) {
            u = apply_table(u, full);
            phase_rotate_inplace(u.values, cfg.p, cfg.coupling * cfg.dt);
        }
        u = apply_table(u, half);
        double t = snap * cfg.dt_out;
        check_guards(u, t, cfg, amp0, stats);
        observer(t, u);
    }
}

Trajectory evolve(const Field& f0, const SolverConfig& cfg) {
    Trajectory traj;
    traj.grid = f0.grid;
    traj.config = cfg;
    evolve(
        f0, cfg,
        [&](double t, const Field& u) {
            traj.times.push_back(t);
            traj.snapshots.push_back(u);
        },
        &traj.guards);
    return traj;
}

double mass(const Field& f) {
    double s = 0.0;
    for (const cplx& z : f.values) s += std::norm(z);
    return f.grid.cell_measure() * s;
}

double energy(const Field& f, double p) {
    const Grid& g = f.grid;
    std::vector<cplx> spec = fft::forward(f);
    const int M = g.points;
    const int nyq = -M / 2;
    double kin = 0.0;
    if (g.dim == 1) {
        for (int k = 0; k < M; ++k) {
            int m = g.mode(k);
            if (m == nyq) continue;
            double xi = g.angular(m);
            kin += xi * xi * std::norm(spec[k]);
        }
        kin /= g.length;
    } else {
        std::size_t idx = 0;
        for (int k0 = 0; k0 < M; ++k0) {
            int m0 = g.mode(k0);
            double w0 = m0 == nyq ? 0.0 : g.angular(m0) * g.angular(m0);
            for (int k1 = 0; k1 < M; ++k1, ++idx) {
                int m1 = g.mode(k1);
                double w = w0 + (m1 == nyq ? 0.0 : g.angular(m1) * g.angular(m1));
                kin += w * std::norm(spec[idx]);
            }
        }
        kin /= g.length * g.length;
    }
    double pot = 0.0;
    const double q = 0.5 * (p + 1.0);
    for (const cplx& z : f.values) {
        double n2 = std::norm(z);
        pot += n2 > 0.0 ? std::pow(n2, q) : 0.0;
    }
    pot *= g.cell_measure();
    return 0.5 * kin + pot / (p + 1.0);
}

std::array<double, 2> momentum(const Field& f) {
    std::array<double, 2> mom = {0.0, 0.0};
    for (int axis = 0; axis < f.grid.dim; ++axis) {
        Field du = partial_derivative(f, axis);
        double s = 0.0;
        for (std::size_t i = 0; i < f.values.size(); ++i)
            s += std::imag(std::conj(f.values[i]) * du.values[i]);
        mom[axis] = f.grid.cell_measure() * s;
    }
    return mom;
}

double outer_mass_fraction(const Field& f) {
    const Grid& g = f.grid;
    const double edge = 0.75 * 0.5 * g.length; // outer 25% shell in max-norm
    double outer = 0.0, total = 0.0;
    if (g.dim == 1) {
        for (int j = 0; j < g.points; ++j) {
            double n2 = std::norm(f.at(j));
            total += n2;
            if (std::abs(g.coord(j)) >= edge) outer += n2;
        }
    } else {
        std::size_t idx = 0;
        for (int j0 = 0; j0 < g.points; ++j0) {
            bool o0 = std::abs(g.coord(j0)) >= edge;
            for (int j1 = 0; j1 < g.points; ++j1, ++idx) {
                double n2 = std::norm(f.values[idx]);
                total += n2;
                if (o0 || std::abs(g.coord(j1)) >= edge) outer += n2;
            }
        }
    }
    return total > 0.0 ? outer / total : 0.0;
}

RescaleResult rescale(const Field& f, double lambda, double p) {
    if (!(lambda > 0.0)) throw InvalidArgument("rescale: lambda must be positive");
    const Grid& g = f.grid;
    RescaleResult res;

    // Spectral tail above half-Nyquist on the source field.
    std::vector<cplx> spec = fft::forward(f);
    const int M = g.points;
    double tail = 0.0, tot = 0.0;
    std::size_t idx = 0;
    const std::size_t n = g.size();
    for (idx = 0; idx < n; ++idx) {
        int k0 = g.dim == 1 ? static_cast<int>(idx) : static_cast<int>(idx) / M;
        int k1 = g.dim == 1 ? 0 : static_cast<int>(idx) % M;
        int m0 = g.mode(k0);
        int m1 = g.dim == 1 ? 0 : g.mode(k1);
        double e = std::norm(spec[idx]);
        tot += e;
        if (std::abs(m0) > M / 4 || std::abs(m1) > M / 4) tail += e;
    }
    res.tail_mass_fraction = tot > 0.0 ? tail / tot : 0.0;
    res.resolution_warning = res.tail_mass_fraction > 1e-8;

    Grid gs = make_grid(g.dim, g.length * lambda, g.points);
    res.field.grid = gs;
    res.field.values = f.values;
    const double amp = std::pow(lambda, -2.0 / (p - 1.0));
    for (cplx& z : res.field.values) z *= amp;
    return res;
}

void Trajectory::save(const std::filesystem::path& dir) const {
    std::filesystem::create_directories(dir);
    nlohmann::json j;
    j["schema_version"] = 1;
    j["grid"] = {{"dim", grid.dim}, {"length", grid.length}, {"points", grid.points}};
    j["config"] = {{"p", config.p},       {"dt", config.dt},
                   {"T", config.t_final}, {"dt_out", config.dt_out},
                   {"coupling", config.coupling}};
    j["guards"] = {{"max_outer_mass_fraction", guards.max_outer_mass_fraction},
                   {"max_amplitude_ratio", guards.max_amplitude_ratio}};
    j["times"] = times;
    std::vector<std::string> files;
    for (std::size_t i = 0; i < snapshots.size(); ++i) {
        char name[32];
        std::snprintf(name, sizeof name, "snap_%06zu.nlsf", i);
        files.emplace_back(name);
        save_field(snapshots[i], dir / name);
    }
    j["snapshots"] = files;
    std::ofstream out(dir / "manifest.json");
    out << j.dump(2) << "\n";
}

Trajectory Trajectory::load(const std::filesystem::path& dir) {
    std::ifstream in(dir / "manifest.json");
    if (!in) throw ConfigError("missing trajectory manifest in " + dir.string());
    nlohmann::json j;
    in >> j;
    Trajectory traj;
    traj.grid = make_grid(j["grid"]["dim"], j["grid"]["length"], j["grid"]["points"]);
    traj.config.p = j["config"]["p"];
    traj.config.dt = j["config"]["dt"];
    traj.config.t_final = j["config"]["T"];
    traj.config.dt_out = j["config"]["dt_out"];
    traj.config.coupling = j["config"]["coupling"];
    traj.guards.max_outer_mass_fraction = j["guards"]["max_outer_mass_fraction"];
    traj.guards.max_amplitude_ratio = j["guards"]["max_amplitude_ratio"];
    traj.times = j["times"].get<std::vector<double>>();
    for (const auto& name : j["snapshots"])
        traj.snapshots.push_back(load_field(dir / name.get<std::string>()));
    return traj;
}

} // namespace nlslab
