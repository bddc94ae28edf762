#include "nlslab/config.hpp"

#include "nlslab/errors.hpp"
#include "nlslab/spectral.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace nlslab {

namespace {

using SectionMap = std::map<std::string, std::map<std::string, std::string>>;

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
}

// Collapse internal whitespace runs to single spaces.
std::string normalize_value(const std::string& v) {
    std::istringstream in(v);
    std::string word, out;
    while (in >> word) {
        if (!out.empty()) out += ' ';
        out += word;
    }
    return out;
}

SectionMap parse_sections(const std::string& text) {
    SectionMap sections;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("config line " + std::to_string(lineno) + ": unterminated section");
            section = lower(trim(line.substr(1, line.size() - 2)));
            sections[section];
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
        if (section.empty())
            throw ConfigError("config line " + std::to_string(lineno) + ": key outside any section");
        std::string key = lower(trim(line.substr(0, eq)));
        std::string value = normalize_value(trim(line.substr(eq + 1)));
        if (key.empty()) throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
        sections[section][key] = value;
    }
    return sections;
}

double to_double(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing");
        return d;
    } catch (const std::exception&) {
        throw ConfigError(key + ": expected a number, got '" + v + "'");
    }
}

long to_long(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        long d = std::stol(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing");
        return d;
    } catch (const std::exception&) {
        throw ConfigError(key + ": expected an integer, got '" + v + "'");
    }
}

std::uint64_t to_u64(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        auto d = std::stoull(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing");
        return d;
    } catch (const std::exception&) {
        throw ConfigError(key + ": expected an unsigned integer, got '" + v + "'");
    }
}

bool to_bool(const std::string& key, const std::string& v) {
    std::string s = lower(v);
    if (s == "true" || s == "1" || s == "yes") return true;
    if (s == "false" || s == "0" || s == "no") return false;
    throw ConfigError(key + ": expected a boolean, got '" + v + "'");
}

std::vector<double> to_vec(const std::string& key, const std::string& v) {
    std::istringstream in(v);
    std::vector<double> out;
    std::string word;
    while (in >> word) out.push_back(to_double(key, word));
    return out;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt_vec(const std::vector<double>& v) {
    std::string out;
    for (double d : v) {
        if (!out.empty()) out += ' ';
        out += fmt(d);
    }
    return out;
}

SectionMap config_to_map(const ExperimentConfig& c) {
    SectionMap m;
    m["experiment"]["kind"] = to_string(c.experiment);
    m["experiment"]["seed"] = std::to_string(c.seed);
    m["experiment"]["store_snapshots"] = c.store_snapshots ? "true" : "false";
    m["grid"]["dimension"] = std::to_string(c.grid.dim);
    m["grid"]["length"] = fmt(c.grid.length);
    m["grid"]["points"] = std::to_string(c.grid.points);
    m["solver"]["p"] = fmt(c.solver.p);
    m["solver"]["dt"] = fmt(c.solver.dt);
    m["solver"]["t_final"] = fmt(c.solver.t_final);
    m["solver"]["dt_out"] = fmt(c.solver.dt_out);
    m["solver"]["coupling"] = fmt(c.solver.coupling);
    m["solver"]["truncation_limit"] = fmt(c.solver.truncation_limit);
    m["solver"]["blowup_factor"] = fmt(c.solver.blowup_factor);
    m["initial"]["kind"] = c.initial.kind;
    m["initial"]["amplitude"] = fmt(c.initial.amplitude);
    m["initial"]["width"] = fmt(c.initial.width);
    m["initial"]["velocity"] = fmt_vec({c.initial.velocity[0], c.initial.velocity[1]});
    m["initial"]["center"] = fmt_vec({c.initial.center[0], c.initial.center[1]});
    m["initial"]["seed"] = std::to_string(c.initial.seed);
    m["initial"]["band_limit"] = fmt(c.initial.band_limit);
    m["initial"]["spectral_decay"] = fmt(c.initial.spectral_decay);
    m["params"]["n_dyadic"] = fmt_vec(c.params.n_dyadic);
    m["params"]["s"] = fmt(c.params.s);
    m["params"]["r0"] = fmt(c.params.r0);
    m["params"]["epsilon"] = fmt(c.params.epsilon);
    m["params"]["lambda"] = fmt(c.params.lambda);
    m["params"]["sample_seed"] = std::to_string(c.params.sample_seed);
    m["params"]["max_direct_pairs"] = std::to_string(c.params.max_direct_pairs);
    return m;
}

ExperimentConfig config_from_map(const SectionMap& m) {
    static const SectionMap known = config_to_map(ExperimentConfig{});
    for (const auto& [sec, keys] : m) {
        auto sit = known.find(sec);
        if (sit == known.end()) throw ConfigError("unknown config section [" + sec + "]");
        for (const auto& [key, value] : keys) {
            (void)value;
            if (sit->second.find(key) == sit->second.end())
                throw ConfigError("unknown config key " + sec + "." + key);
        }
    }
    auto get = [&](const std::string& sec, const std::string& key) -> const std::string* {
        auto sit = m.find(sec);
        if (sit == m.end()) return nullptr;
        auto kit = sit->second.find(key);
        return kit == sit->second.end() ? nullptr : &kit->second;
    };
    ExperimentConfig c;
    if (auto* v = get("experiment", "kind")) c.experiment = experiment_from_string(*v);
    if (auto* v = get("experiment", "seed")) c.seed = to_u64("experiment.seed", *v);
    if (auto* v = get("experiment", "store_snapshots"))
        c.store_snapshots = to_bool("experiment.store_snapshots", *v);
    if (auto* v = get("grid", "dimension")) c.grid.dim = static_cast<int>(to_long("grid.dimension", *v));
    if (auto* v = get("grid", "length")) c.grid.length = to_double("grid.length", *v);
    if (auto* v = get("grid", "points")) c.grid.points = static_cast<int>(to_long("grid.points", *v));
    if (auto* v = get("solver", "p")) c.solver.p = to_double("solver.p", *v);
    if (auto* v = get("solver", "dt")) c.solver.dt = to_double("solver.dt", *v);
    if (auto* v = get("solver", "t_final")) c.solver.t_final = to_double("solver.t_final", *v);
    if (auto* v = get("solver", "dt_out")) c.solver.dt_out = to_double("solver.dt_out", *v);
    if (auto* v = get("solver", "coupling")) c.solver.coupling = to_double("solver.coupling", *v);
    if (auto* v = get("solver", "truncation_limit"))
        c.solver.truncation_limit = to_double("solver.truncation_limit", *v);
    if (auto* v = get("solver", "blowup_factor"))
        c.solver.blowup_factor = to_double("solver.blowup_factor", *v);
    if (auto* v = get("initial", "kind")) c.initial.kind = *v;
    if (auto* v = get("initial", "amplitude")) c.initial.amplitude = to_double("initial.amplitude", *v);
    if (auto* v = get("initial", "width")) c.initial.width = to_double("initial.width", *v);
    if (auto* v = get("initial", "velocity")) {
        auto vec = to_vec("initial.velocity", *v);
        if (vec.empty() || vec.size() > 2)
            throw ConfigError("initial.velocity: expected 1 or 2 components");
        c.initial.velocity[0] = vec[0];
        c.initial.velocity[1] = vec.size() > 1 ? vec[1] : 0.0;
    }
    if (auto* v = get("initial", "center")) {
        auto vec = to_vec("initial.center", *v);
        if (vec.empty() || vec.size() > 2) throw ConfigError("initial.center: expected 1 or 2 components");
        c.initial.center[0] = vec[0];
        c.initial.center[1] = vec.size() > 1 ? vec[1] : 0.0;
    }
    if (auto* v = get("initial", "seed")) c.initial.seed = to_u64("initial.seed", *v);
    if (auto* v = get("initial", "band_limit")) c.initial.band_limit = to_double("initial.band_limit", *v);
    if (auto* v = get("initial", "spectral_decay"))
        c.initial.spectral_decay = to_double("initial.spectral_decay", *v);
    if (auto* v = get("params", "n_dyadic")) c.params.n_dyadic = to_vec("params.n_dyadic", *v);
    if (auto* v = get("params", "s")) c.params.s = to_double("params.s", *v);
    if (auto* v = get("params", "r0")) c.params.r0 = to_double("params.r0", *v);
    if (auto* v = get("params", "epsilon")) c.params.epsilon = to_double("params.epsilon", *v);
    if (auto* v = get("params", "lambda")) c.params.lambda = to_double("params.lambda", *v);
    if (auto* v = get("params", "sample_seed"))
        c.params.sample_seed = to_u64("params.sample_seed", *v);
    if (auto* v = get("params", "max_direct_pairs"))
        c.params.max_direct_pairs = to_u64("params.max_direct_pairs", *v);
    return c;
}

std::string render(const SectionMap& m) {
    std::string out;
    for (const auto& [sec, keys] : m) {
        out += "[" + sec + "]\n";
        for (const auto& [key, value] : keys) out += key + " = " + value + "\n";
    }
    return out;
}

} // namespace

std::string to_string(ExperimentKind k) {
    switch (k) {
    case ExperimentKind::thm1_2d: return "thm1_2d";
    case ExperimentKind::thm2_1d_deriv: return "thm2_1d_deriv";
    case ExperimentKind::thm2_1d_p3: return "thm2_1d_p3";
    case ExperimentKind::l4l8_2d: return "l4l8_2d";
    case ExperimentKind::monotonicity: return "monotonicity";
    case ExperimentKind::scattering: return "scattering";
    case ExperimentKind::i_energy: return "i_energy";
    case ExperimentKind::scale_invariance: return "scale_invariance";
    }
    return "?";
}

ExperimentKind experiment_from_string(const std::string& s) {
    for (auto k : {ExperimentKind::thm1_2d, ExperimentKind::thm2_1d_deriv,
                   ExperimentKind::thm2_1d_p3, ExperimentKind::l4l8_2d,
                   ExperimentKind::monotonicity, ExperimentKind::scattering,
                   ExperimentKind::i_energy, ExperimentKind::scale_invariance})
        if (to_string(k) == s) return k;
    throw ConfigError("experiment.kind: unknown experiment '" + s + "'");
}

ExperimentConfig parse_config_text(const std::string& text) {
    return config_from_map(parse_sections(text));
}

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

std::string to_config_text(const ExperimentConfig& cfg) { return render(config_to_map(cfg)); }

std::string canonical_text(const ExperimentConfig& cfg) { return to_config_text(cfg); }

std::uint64_t fnv1a64(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::string config_hash(const ExperimentConfig& cfg) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a64(canonical_text(cfg))));
    return buf;
}

void apply_override(ExperimentConfig& cfg, const std::string& dotted_key, const std::string& value) {
    auto dot = dotted_key.find('.');
    if (dot == std::string::npos)
        throw ConfigError("override key must be section.key, got '" + dotted_key + "'");
    SectionMap m = config_to_map(cfg);
    std::string sec = lower(trim(dotted_key.substr(0, dot)));
    std::string key = lower(trim(dotted_key.substr(dot + 1)));
    if (m.find(sec) == m.end() || m[sec].find(key) == m[sec].end())
        throw ConfigError("unknown config key " + sec + "." + key);
    m[sec][key] = normalize_value(value);
    cfg = config_from_map(m);
}

void ExperimentConfig::validate() const {
    if (grid.dim != 1 && grid.dim != 2) throw ConfigError("grid.dimension must be 1 or 2");
    if (!(grid.length > 0.0)) throw ConfigError("grid.length must be positive");
    if (!is_power_of_two(grid.points) || grid.points < 8)
        throw ConfigError("grid.points must be a power of two >= 8");
    solver.validate();
    if (!(initial.width > 0.0)) throw ConfigError("initial.width must be positive");
    if (!(initial.amplitude >= 0.0)) throw ConfigError("initial.amplitude must be >= 0");
    if (initial.kind != "gaussian" && initial.kind != "two_bump" && initial.kind != "random")
        throw ConfigError("initial.kind must be gaussian, two_bump, or random");

    const double h = grid.length / grid.points;
    const double nyq = M_PI / h;
    auto require_dim = [&](int d) {
        if (grid.dim != d)
            throw ConfigError("grid.dimension: experiment " + to_string(experiment) + " needs " +
                              std::to_string(d) + "-D");
    };
    switch (experiment) {
    case ExperimentKind::thm1_2d:
    case ExperimentKind::l4l8_2d: require_dim(2); break;
    case ExperimentKind::thm2_1d_deriv:
    case ExperimentKind::thm2_1d_p3: require_dim(1); break;
    case ExperimentKind::scattering:
        require_dim(2);
        if (!(solver.p >= 3.0))
            throw ConfigError("solver.p: scattering diagnostic needs p >= 3 (asserted only for p > 3)");
        break;
    case ExperimentKind::monotonicity:
        if (grid.dim == 1 && params.epsilon != 0.0 && params.epsilon < 2.0 * h)
            throw ConfigError("params.epsilon must be >= 2h");
        if (grid.dim == 2 && !(params.r0 > 0.0)) throw ConfigError("params.r0 must be positive");
        break;
    case ExperimentKind::i_energy: {
        require_dim(2);
        double k = 0.5 * (solver.p - 1.0);
        if (std::abs(k - std::round(k)) > 1e-9 || std::round(k) < 2)
            throw ConfigError("solver.p: i_energy needs p = 2k+1 with integer k >= 2");
        double sk = 1.0 - 1.0 / (4.0 * std::round(k) - 3.0);
        if (!(params.s > sk && params.s < 1.0))
            throw ConfigError("params.s must lie in (" + std::to_string(sk) + ", 1) for p = " +
                              std::to_string(solver.p));
        if (params.n_dyadic.empty()) throw ConfigError("params.n_dyadic must list at least one N");
        for (double N : params.n_dyadic) {
            if (is_dyadic(N) == 0.0) throw ConfigError("params.n_dyadic: N must be dyadic");
            if (!(N > 1.0 && N < 0.5 * nyq))
                throw ConfigError("params.n_dyadic: need 1 < N < nyquist/2 = " +
                                  std::to_string(0.5 * nyq));
        }
        break;
    }
    case ExperimentKind::scale_invariance:
        require_dim(1);
        if (!(params.lambda > 0.0)) throw ConfigError("params.lambda must be positive");
        break;
    }
}

} // namespace nlslab
