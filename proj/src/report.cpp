#include "nlslab/report.hpp"

#include "nlslab/errors.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>

namespace nlslab {

const char* tool_version() { return "0.1.0"; }

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_text_atomic(const std::filesystem::path& path, const std::string& content) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw ConfigError("cannot open " + tmp.string() + " for writing");
        out << content;
    }
    std::filesystem::rename(tmp, path);
}

std::string aggregate_csv_header() {
    return "schema_version,run_index,experiment,config_hash,seed,dimension,length,points,p,dt,"
           "t_final,dt_out,lhs,rhs,ratio,guard_outer_mass_fraction,guard_amplitude_ratio,status";
}

std::string aggregate_csv_row(const ExperimentConfig& cfg, const EstimateReport& rep,
                              int run_index, const std::string& status) {
    std::ostringstream row;
    row << kSchemaVersion << ',' << run_index << ',' << to_string(cfg.experiment) << ','
        << config_hash(cfg) << ',' << cfg.seed << ',' << cfg.grid.dim << ','
        << format_double(cfg.grid.length) << ',' << cfg.grid.points << ','
        << format_double(cfg.solver.p) << ',' << format_double(cfg.solver.dt) << ','
        << format_double(cfg.solver.t_final) << ',' << format_double(cfg.solver.dt_out) << ','
        << format_double(rep.lhs) << ',' << format_double(rep.rhs) << ','
        << format_double(rep.ratio) << ',' << format_double(rep.guards.max_outer_mass_fraction)
        << ',' << format_double(rep.guards.max_amplitude_ratio) << ',' << status;
    return row.str();
}

void write_report_json(const EstimateReport& rep, const std::filesystem::path& path) {
    nlohmann::json j;
    j["schema_version"] = kSchemaVersion;
    j["tool_version"] = tool_version();
    j["experiment"] = rep.experiment;
    j["config_hash"] = rep.config_hash;
    j["seed"] = rep.seed;
    j["lhs"] = rep.lhs;
    j["rhs"] = rep.rhs;
    j["ratio"] = rep.ratio;
    j["pass"] = rep.pass;
    if (!rep.note.empty()) j["note"] = rep.note;
    j["aux"] = rep.aux;
    j["guards"] = {{"max_outer_mass_fraction", rep.guards.max_outer_mass_fraction},
                   {"max_amplitude_ratio", rep.guards.max_amplitude_ratio}};
    j["wall_time_s"] = rep.wall_time_s;
    j["config"] = rep.config_canonical;
    j["series_t"] = rep.series_t;
    for (const auto& [name, col] : rep.series) j["series"][name] = col;
    write_text_atomic(path, j.dump(2) + "\n");
}

void write_manifest(const ExperimentConfig& cfg, const std::vector<std::string>& outputs,
                    const std::filesystem::path& path) {
    nlohmann::json j;
    j["schema_version"] = kSchemaVersion;
    j["tool_version"] = tool_version();
    j["config_hash"] = config_hash(cfg);
    j["seed"] = cfg.seed;
    j["experiment"] = to_string(cfg.experiment);
    j["outputs"] = outputs;
    std::time_t now = std::time(nullptr);
    char stamp[64];
    std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    j["created"] = stamp;
    write_text_atomic(path, j.dump(2) + "\n");
}

namespace {

// Minimal non-interactive line plot.
void write_svg(const std::filesystem::path& path, const std::vector<double>& x,
               const std::vector<double>& y, const std::string& title) {
    if (x.size() < 2 || x.size() != y.size()) return;
    const double W = 640, H = 400, m = 50;
    double xmin = *std::min_element(x.begin(), x.end());
    double xmax = *std::max_element(x.begin(), x.end());
    double ymin = *std::min_element(y.begin(), y.end());
    double ymax = *std::max_element(y.begin(), y.end());
    if (xmax == xmin) xmax = xmin + 1;
    if (ymax == ymin) ymax = ymin + 1;
    std::ostringstream svg;
    svg << "<svg xmlns='http://www.w3.org/2000/svg' width='" << W << "' height='" << H << "'>\n"
        << "<rect width='100%' height='100%' fill='white'/>\n"
        << "<text x='" << W / 2 << "' y='20' text-anchor='middle' font-size='14'>" << title
        << "</text>\n<polyline fill='none' stroke='steelblue' stroke-width='1.5' points='";
    for (std::size_t i = 0; i < x.size(); ++i) {
        double px = m + (x[i] - xmin) / (xmax - xmin) * (W - 2 * m);
        double py = H - m - (y[i] - ymin) / (ymax - ymin) * (H - 2 * m);
        svg << px << ',' << py << ' ';
    }
    svg << "'/>\n<line x1='" << m << "' y1='" << H - m << "' x2='" << W - m << "' y2='" << H - m
        << "' stroke='black'/>\n<line x1='" << m << "' y1='" << m << "' x2='" << m << "' y2='"
        << H - m << "' stroke='black'/>\n"
        << "<text x='" << m << "' y='" << H - m + 20 << "' font-size='11'>" << format_double(xmin)
        << "</text>\n<text x='" << W - m << "' y='" << H - m + 20
        << "' text-anchor='end' font-size='11'>" << format_double(xmax) << "</text>\n"
        << "<text x='" << m - 5 << "' y='" << H - m << "' text-anchor='end' font-size='11'>"
        << format_double(ymin) << "</text>\n<text x='" << m - 5 << "' y='" << m + 5
        << "' text-anchor='end' font-size='11'>" << format_double(ymax) << "</text>\n</svg>\n";
    write_text_atomic(path, svg.str());
}

} // namespace

std::vector<std::string> emit_plotdata(const std::filesystem::path& report_dir, bool svg) {
    namespace fs = std::filesystem;
    std::vector<fs::path> reports;
    if (!fs::exists(report_dir)) throw ConfigError("no such report directory: " + report_dir.string());
    for (const auto& entry : fs::recursive_directory_iterator(report_dir))
        if (entry.is_regular_file() && entry.path().filename() == "report.json")
            reports.push_back(entry.path());
    std::sort(reports.begin(), reports.end());
    if (reports.empty()) throw ConfigError("no report.json found under " + report_dir.string());

    std::vector<std::string> emitted;
    for (const auto& rp : reports) {
        std::ifstream in(rp);
        nlohmann::json j;
        in >> j;
        std::vector<double> t = j.value("series_t", std::vector<double>{});
        std::vector<std::string> names;
        if (j.contains("series"))
            for (auto it = j["series"].begin(); it != j["series"].end(); ++it)
                names.push_back(it.key());
        std::sort(names.begin(), names.end());

        if (!t.empty() && !names.empty()) {
            std::ostringstream csv;
            csv << "schema_version,t";
            for (const auto& n : names) csv << ',' << n;
            csv << '\n';
            for (std::size_t i = 0; i < t.size(); ++i) {
                csv << kSchemaVersion << ',' << format_double(t[i]);
                for (const auto& n : names) {
                    const auto& col = j["series"][n];
                    csv << ',' << (i < col.size() ? format_double(col[i].get<double>()) : "");
                }
                csv << '\n';
            }
            fs::path out = rp.parent_path() / "series.csv";
            write_text_atomic(out, csv.str());
            emitted.push_back(out.string());
            if (svg) {
                for (const auto& n : names) {
                    std::vector<double> y = j["series"][n].get<std::vector<double>>();
                    if (y.size() == t.size()) {
                        fs::path sp = rp.parent_path() / ("series_" + n + ".svg");
                        write_svg(sp, t, y, n);
                        emitted.push_back(sp.string());
                    }
                }
            }
        }

        // i_energy (N, inc) pairs, log-log plot data.
        if (j.contains("aux")) {
            std::vector<double> Ns, incs;
            for (auto it = j["aux"].begin(); it != j["aux"].end(); ++it) {
                const std::string& k = it.key();
                if (k.rfind("inc_N", 0) == 0) {
                    Ns.push_back(std::stod(k.substr(5)));
                    incs.push_back(it.value().get<double>());
                }
            }
            if (!Ns.empty()) {
                std::vector<std::size_t> order(Ns.size());
                for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
                std::sort(order.begin(), order.end(),
                          [&](std::size_t a, std::size_t b) { return Ns[a] < Ns[b]; });
                std::ostringstream csv;
                csv << "schema_version,N,inc\n";
                for (std::size_t i : order)
                    csv << kSchemaVersion << ',' << format_double(Ns[i]) << ','
                        << format_double(incs[i]) << '\n';
                fs::path out = rp.parent_path() / "inc_vs_N.csv";
                write_text_atomic(out, csv.str());
                emitted.push_back(out.string());
            }
        }
    }
    return emitted;
}

} // namespace nlslab
