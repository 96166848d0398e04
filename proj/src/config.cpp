#include "probespec/config.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace probespec {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

double parse_real(const std::string& key, const std::string& value) {
    std::size_t used = 0;
    double x = 0;
    try {
        x = std::stod(value, &used);
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "': not a number: '" + value +
                          "'");
    }
    if (used != value.size() || !std::isfinite(x))
        throw ConfigError("config key '" + key + "': not a number: '" + value +
                          "'");
    return x;
}

int parse_int(const std::string& key, const std::string& value) {
    const double x = parse_real(key, value);
    const int n = static_cast<int>(std::lround(x));
    if (x != static_cast<double>(n))
        throw ConfigError("config key '" + key + "': not an integer: '" +
                          value + "'");
    return n;
}

HalfInt parse_half_int(const std::string& key, const std::string& value) {
    try {
        return HalfInt::parse(trim(value));
    } catch (const std::invalid_argument& e) {
        throw ConfigError("config key '" + key + "': " + e.what());
    }
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

// Keys that would ask for physics the model does not include.  Rejected with
// a dedicated message so the limitation is explicit rather than "unknown".
const std::set<std::string> kOffResonantKeys = {
    "coupling_detuning", "delta_c",        "omega_c_detuning",
    "pump_detuning",     "coupling_offset"};

}  // namespace

std::string run_mode_name(RunMode mode) {
    switch (mode) {
        case RunMode::Analyze: return "analyze";
        case RunMode::Spectrum: return "spectrum";
        case RunMode::Compare: return "compare";
        case RunMode::Sweep: return "sweep";
    }
    return "?";
}

std::vector<double> GridSpec::values() const {
    std::vector<double> g;
    g.reserve(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i)
        g.push_back(min + (max - min) * i / (points - 1));
    return g;
}

GridSpec parse_grid_spec(const std::string& text) {
    const auto parts = split(trim(text), ':');
    if (parts.size() != 3)
        throw ConfigError("grid: expected min:max:points, got '" + text + "'");
    GridSpec g;
    g.min = parse_real("grid.min", trim(parts[0]));
    g.max = parse_real("grid.max", trim(parts[1]));
    g.points = parse_int("grid.points", trim(parts[2]));
    if (!(g.min < g.max))
        throw ConfigError("grid: min must be < max, got '" + text + "'");
    if (g.points < 3)
        throw ConfigError("grid: points must be >= 3, got '" + text + "'");
    return g;
}

RunConfig parse_config(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) +
                              ": expected key = value: '" + line + "'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw ConfigError("config line " + std::to_string(lineno) +
                              ": empty key");
        if (kv.count(key))
            throw ConfigError("config key '" + key + "': given twice");
        kv[key] = value;
    }

    for (const auto& [key, value] : kv) {
        (void)value;
        if (kOffResonantKeys.count(key))
            throw ConfigError("config key '" + key +
                              "': off-resonant coupling is unsupported (the "
                              "coupling field is always on atomic resonance)");
    }

    const std::set<std::string> known = {
        "F_g",  "F_e",  "omega_c_rabi", "gamma",        "theta_degrees",
        "probe_rabi", "grid", "mode",   "sweep_values", "output_dir"};
    for (const auto& [key, value] : kv) {
        (void)value;
        if (!known.count(key))
            throw ConfigError("config key '" + key + "': unknown key");
    }

    for (const char* req : {"F_g", "F_e", "omega_c_rabi"})
        if (!kv.count(req))
            throw ConfigError("config key '" + std::string(req) +
                              "': required but missing");

    RunConfig cfg;
    cfg.F_g = parse_half_int("F_g", kv.at("F_g"));
    cfg.F_e = parse_half_int("F_e", kv.at("F_e"));
    cfg.omega_c_rabi = parse_real("omega_c_rabi", kv.at("omega_c_rabi"));
    if (kv.count("gamma")) cfg.gamma = parse_real("gamma", kv.at("gamma"));
    if (kv.count("theta_degrees"))
        cfg.theta_degrees = parse_real("theta_degrees", kv.at("theta_degrees"));
    if (kv.count("probe_rabi"))
        cfg.probe_rabi = parse_real("probe_rabi", kv.at("probe_rabi"));
    if (kv.count("grid")) cfg.grid = parse_grid_spec(kv.at("grid"));
    if (kv.count("output_dir")) cfg.output_dir = kv.at("output_dir");

    if (kv.count("mode")) {
        const std::string m = kv.at("mode");
        if (m == "analyze") cfg.mode = RunMode::Analyze;
        else if (m == "spectrum") cfg.mode = RunMode::Spectrum;
        else if (m == "compare") cfg.mode = RunMode::Compare;
        else if (m == "sweep") cfg.mode = RunMode::Sweep;
        else
            throw ConfigError(
                "config key 'mode': expected analyze|spectrum|compare|sweep, "
                "got '" + m + "'");
        cfg.mode_set = true;
    }

    if (kv.count("sweep_values")) {
        for (const auto& part : split(kv.at("sweep_values"), ',')) {
            const std::string p = trim(part);
            if (p.empty())
                throw ConfigError(
                    "config key 'sweep_values': empty entry in list");
            cfg.sweep_values.push_back(parse_real("sweep_values", p));
        }
        if (cfg.sweep_values.empty())
            throw ConfigError("config key 'sweep_values': empty list");
        for (double v : cfg.sweep_values)
            if (v < 0)
                throw ConfigError(
                    "config key 'sweep_values': negative coupling Rabi");
    }
    if (cfg.mode_set && cfg.mode == RunMode::Sweep && cfg.sweep_values.empty())
        throw ConfigError(
            "config key 'sweep_values': required for sweep mode");

    // Physical validation.
    const int twice_g = cfg.F_g.twice(), twice_e = cfg.F_e.twice();
    if (twice_g < 0 || twice_e < 0)
        throw ConfigError("config key 'F_g'/'F_e': negative angular momentum");
    if (twice_g == 0 && twice_e == 0)
        throw ConfigError(
            "config key 'F_g'/'F_e': F_g = F_e = 0 has no dipole transition");
    if (std::abs(twice_g - twice_e) > 2)
        throw ConfigError(
            "config key 'F_g'/'F_e': |F_g - F_e| must be 0 or 1 for a dipole "
            "transition");
    if (cfg.omega_c_rabi < 0)
        throw ConfigError("config key 'omega_c_rabi': must be >= 0");
    if (!(cfg.gamma > 0))
        throw ConfigError("config key 'gamma': must be > 0");
    if (cfg.probe_rabi < 0)
        throw ConfigError("config key 'probe_rabi': must be >= 0");
    if (cfg.theta_degrees < 0 || cfg.theta_degrees > 180)
        throw ConfigError(
            "config key 'theta_degrees': must lie in [0, 180]");
    return cfg;
}

RunConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

TransitionSystem make_system(const RunConfig& cfg) {
    return build_system(cfg.F_g, cfg.F_e, cfg.omega_c_rabi, cfg.gamma, 0.0,
                        ProbeGeometry{cfg.theta_degrees * kPi / 180.0});
}

}  // namespace probespec
