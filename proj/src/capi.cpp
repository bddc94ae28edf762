#include "nlslab.h"

#include "nlslab/errors.hpp"
#include "nlslab/sweep.hpp"

#include <sstream>
#include <string>

// Opaque session: run options plus the last error message.
struct nlslab_session {
    nlslab::RunOptions opts;
    std::string last_error;
};

namespace {

nlslab_status guarded(nlslab_session* s, const std::function<void()>& body) {
    if (!s) return NLSLAB_ERR_BADINPUT;
    s->last_error.clear();
    try {
        body();
        return NLSLAB_OK;
    } catch (const nlslab::ConfigError& e) {
        s->last_error = e.what();
        return NLSLAB_ERR_BADINPUT;
    } catch (const nlslab::InvalidArgument& e) {
        s->last_error = e.what();
        return NLSLAB_ERR_BADINPUT;
    } catch (const std::exception& e) {
        s->last_error = e.what();
        return NLSLAB_ERR_RUNTIME;
    } catch (...) {
        s->last_error = "unknown error";
        return NLSLAB_ERR_RUNTIME;
    }
}

std::vector<std::string> split_csv(const std::string& csv) {
    std::vector<std::string> out;
    std::istringstream in(csv);
    std::string item;
    while (std::getline(in, item, ',')) {
        // trim
        auto b = item.find_first_not_of(" \t");
        auto e = item.find_last_not_of(" \t");
        if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
    }
    return out;
}

} // namespace

extern "C" {

const char* nlslab_version(void) { return nlslab::tool_version(); }

nlslab_session* nlslab_session_new(void) { return new (std::nothrow) nlslab_session; }

void nlslab_session_free(nlslab_session* s) { delete s; }

const char* nlslab_last_error(const nlslab_session* s) {
    return s ? s->last_error.c_str() : "null session";
}

nlslab_status nlslab_set_workers(nlslab_session* s, int workers) {
    return guarded(s, [&] {
        if (workers < 1) throw nlslab::ConfigError("workers must be >= 1");
        s->opts.workers = workers;
    });
}

nlslab_status nlslab_set_seed(nlslab_session* s, unsigned long long seed) {
    return guarded(s, [&] { s->opts.seed_override = seed; });
}

nlslab_status nlslab_set_svg(nlslab_session* s, int enable) {
    return guarded(s, [&] { s->opts.svg = enable != 0; });
}

nlslab_status nlslab_run(nlslab_session* s, const char* config_path, const char* out_dir) {
    return guarded(s, [&] {
        if (!config_path || !out_dir) throw nlslab::ConfigError("null argument");
        nlslab::ExperimentConfig cfg = nlslab::parse_config_file(config_path);
        nlslab::run_to_dir(cfg, out_dir, s->opts);
    });
}

nlslab_status nlslab_sweep(nlslab_session* s, const char* config_path, const char* param,
                           const char* values_csv, const char* out_dir) {
    return guarded(s, [&] {
        if (!config_path || !param || !values_csv || !out_dir)
            throw nlslab::ConfigError("null argument");
        nlslab::ExperimentConfig cfg = nlslab::parse_config_file(config_path);
        auto values = split_csv(values_csv);
        if (values.empty()) throw nlslab::ConfigError("sweep: empty value list");
        nlslab::sweep(cfg, param, values, out_dir, s->opts);
    });
}

nlslab_status nlslab_plotdata(nlslab_session* s, const char* report_dir) {
    return guarded(s, [&] {
        if (!report_dir) throw nlslab::ConfigError("null argument");
        nlslab::emit_plotdata(report_dir, s->opts.svg);
    });
}

} // extern "C"
