#include "nlslab/sweep.hpp"

#include "nlslab/errors.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <thread>

namespace nlslab {

namespace {

ExperimentConfig with_seed(ExperimentConfig cfg, const RunOptions& opts) {
    if (opts.seed_override) cfg.seed = *opts.seed_override;
    return cfg;
}

struct RunOutcome {
    EstimateReport report;
    std::string status = "ok";
    std::string error;
    bool failed = false;
};

RunOutcome execute(const ExperimentConfig& cfg, const std::filesystem::path& run_dir) {
    RunOutcome out;
    auto t0 = std::chrono::steady_clock::now();
    try {
        out.report = run_experiment(cfg, run_dir / "trajectory");
        if (!out.report.pass) out.status = "assert_failed";
    } catch (const ConfigError& e) {
        out.failed = true;
        out.status = "config_error";
        out.error = e.what();
    } catch (const MonotonicityViolation& e) {
        out.failed = true;
        out.status = "monotonicity_violation";
        out.error = e.what();
    } catch (const RunError& e) {
        out.failed = true;
        out.status = "run_error";
        out.error = e.what();
    } catch (const std::exception& e) {
        out.failed = true;
        out.status = "error";
        out.error = e.what();
    }
    out.report.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

void write_error_record(const std::filesystem::path& path, const std::string& status,
                        const std::string& message, const ExperimentConfig& cfg) {
    nlohmann::json j;
    j["schema_version"] = kSchemaVersion;
    j["status"] = status;
    j["error"] = message;
    j["config_hash"] = config_hash(cfg);
    write_text_atomic(path, j.dump(2) + "\n");
}

} // namespace

EstimateReport run_to_dir(const ExperimentConfig& cfg_in, const std::filesystem::path& out_dir,
                          const RunOptions& opts) {
    ExperimentConfig cfg = with_seed(cfg_in, opts);
    cfg.validate();
    std::filesystem::create_directories(out_dir);
    RunOutcome out = execute(cfg, out_dir);
    if (out.failed) {
        write_error_record(out_dir / "error.json", out.status, out.error, cfg);
        std::string csv = aggregate_csv_header() + "\n" +
                          aggregate_csv_row(cfg, out.report, 0, out.status) + "\n";
        write_text_atomic(out_dir / "aggregate.csv", csv);
        if (out.status == "config_error") throw ConfigError(out.error);
        throw std::runtime_error(out.error);
    }
    write_report_json(out.report, out_dir / "report.json");
    std::string csv =
        aggregate_csv_header() + "\n" + aggregate_csv_row(cfg, out.report, 0, out.status) + "\n";
    write_text_atomic(out_dir / "aggregate.csv", csv);
    write_manifest(cfg, {"report.json", "aggregate.csv"}, out_dir / "manifest.json");
    return out.report;
}

SweepResult sweep(const ExperimentConfig& base_in, const std::string& param,
                  const std::vector<std::string>& values, const std::filesystem::path& out_dir,
                  const RunOptions& opts) {
    if (values.empty()) throw ConfigError("sweep: empty value list");
    ExperimentConfig base = with_seed(base_in, opts);

    // Validate every point up front so bad values fail fast with the key name.
    std::vector<ExperimentConfig> configs;
    for (const auto& v : values) {
        ExperimentConfig cfg = base;
        apply_override(cfg, param, v);
        cfg.validate();
        configs.push_back(cfg);
    }

    std::filesystem::create_directories(out_dir);
    std::vector<RunOutcome> outcomes(configs.size());
    std::atomic<std::size_t> next{0};
    int workers = std::max(1, opts.workers);
    workers = std::min<int>(workers, static_cast<int>(configs.size()));

    auto worker = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= configs.size()) return;
            char name[32];
            std::snprintf(name, sizeof name, "run_%04zu", i);
            std::filesystem::path run_dir = out_dir / name;
            std::filesystem::create_directories(run_dir);
            outcomes[i] = execute(configs[i], run_dir);
            if (outcomes[i].failed) {
                write_error_record(run_dir / "error.json", outcomes[i].status, outcomes[i].error,
                                   configs[i]);
            } else {
                write_report_json(outcomes[i].report, run_dir / "report.json");
                write_manifest(configs[i], {"report.json"}, run_dir / "manifest.json");
            }
        }
    };
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    // Aggregate rows ordered by value index, independent of completion order.
    std::string csv = aggregate_csv_header() + "\n";
    for (std::size_t i = 0; i < configs.size(); ++i)
        csv += aggregate_csv_row(configs[i], outcomes[i].report, static_cast<int>(i),
                                 outcomes[i].status) +
               "\n";
    SweepResult res;
    res.aggregate_csv = out_dir / "aggregate.csv";
    write_text_atomic(res.aggregate_csv, csv);

    // Summary: ratio spread per experiment, plus the i_energy slope when the
    // sweep parameter is the I-frequency.
    std::vector<double> ratios;
    std::vector<double> Ns, incs;
    int failed = 0;
    for (std::size_t i = 0; i < configs.size(); ++i) {
        if (outcomes[i].failed) {
            ++failed;
            continue;
        }
        ratios.push_back(outcomes[i].report.ratio);
        if (configs[i].experiment == ExperimentKind::i_energy) {
            if (!configs[i].params.n_dyadic.empty()) {
                Ns.push_back(configs[i].params.n_dyadic.front());
                incs.push_back(outcomes[i].report.lhs);
            }
        }
    }
    nlohmann::json j;
    j["schema_version"] = kSchemaVersion;
    j["experiment"] = to_string(base.experiment);
    j["param"] = param;
    j["values"] = values;
    j["total"] = configs.size();
    j["failed"] = failed;
    if (!ratios.empty()) {
        std::vector<double> sorted = ratios;
        std::sort(sorted.begin(), sorted.end());
        j["ratio_min"] = sorted.front();
        j["ratio_max"] = sorted.back();
        j["ratio_median"] = sorted[sorted.size() / 2];
        if (sorted.front() > 0.0) j["ratio_spread"] = sorted.back() / sorted.front();
    }
    if (Ns.size() >= 2) j["i_energy_slope"] = loglog_slope(Ns, incs);
    res.summary_json = out_dir / "summary.json";
    write_text_atomic(res.summary_json, j.dump(2) + "\n");

    res.total = static_cast<int>(configs.size());
    res.failed = failed;
    return res;
}

} // namespace nlslab
