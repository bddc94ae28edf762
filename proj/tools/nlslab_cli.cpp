// Command-line front end. Links against the C API only.

#include "nlslab.h"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <memory>
#include <string>

namespace {

int exit_code(nlslab_status st) {
    switch (st) {
    case NLSLAB_OK: return 0;
    case NLSLAB_ERR_BADINPUT: return 2;
    case NLSLAB_ERR_RUNTIME: return 1;
    }
    return 1;
}

// One-line machine-readable error record on stderr.
int fail(nlslab_session* s, nlslab_status st) {
    std::string msg = nlslab_last_error(s);
    for (char& c : msg)
        if (c == '"') c = '\'';
    std::fprintf(stderr, "{\"error\": \"%s\", \"exit\": %d}\n", msg.c_str(), exit_code(st));
    return exit_code(st);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"nlslab: pseudo-spectral NLS experiment runner"};
    app.set_version_flag("--version", std::string(nlslab_version()));
    app.require_subcommand(1);

    std::string config_path, out_dir = "out", param, values, report_dir;
    int workers = 1;
    unsigned long long seed = 0;
    bool have_seed = false, svg = false;

    if (const char* env = std::getenv("NLSLAB_WORKERS")) workers = std::atoi(env);

    auto* run = app.add_subcommand("run", "run one experiment config");
    run->add_option("--config", config_path, "config file")->required();
    run->add_option("--out", out_dir, "output directory");
    run->add_option("--workers", workers, "worker threads");
    run->add_option("--seed", seed, "override experiment seed")->each([&](const std::string&) {
        have_seed = true;
    });

    auto* sw = app.add_subcommand("sweep", "sweep one config key over values");
    sw->add_option("--config", config_path, "config file")->required();
    sw->add_option("--param", param, "dotted config key, e.g. solver.p")->required();
    sw->add_option("--values", values, "comma-separated values")->required();
    sw->add_option("--out", out_dir, "output directory");
    sw->add_option("--workers", workers, "worker threads");
    sw->add_option("--seed", seed, "override experiment seed")->each([&](const std::string&) {
        have_seed = true;
    });

    auto* pd = app.add_subcommand("plotdata", "emit time-series CSV (and SVG) from reports");
    pd->add_option("--reports", report_dir, "directory containing report.json files")->required();
    pd->add_flag("--svg", svg, "also write SVG line plots");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    std::unique_ptr<nlslab_session, void (*)(nlslab_session*)> session(nlslab_session_new(),
                                                                       nlslab_session_free);
    nlslab_session* s = session.get();
    if (!s) {
        std::fprintf(stderr, "{\"error\": \"out of memory\", \"exit\": 1}\n");
        return 1;
    }
    if (workers > 0) nlslab_set_workers(s, workers);
    if (have_seed) nlslab_set_seed(s, seed);
    nlslab_set_svg(s, svg ? 1 : 0);

    nlslab_status st = NLSLAB_OK;
    if (run->parsed()) {
        st = nlslab_run(s, config_path.c_str(), out_dir.c_str());
    } else if (sw->parsed()) {
        st = nlslab_sweep(s, config_path.c_str(), param.c_str(), values.c_str(), out_dir.c_str());
    } else if (pd->parsed()) {
        st = nlslab_plotdata(s, report_dir.c_str());
    }
    if (st != NLSLAB_OK) return fail(s, st);
    return 0;
}
