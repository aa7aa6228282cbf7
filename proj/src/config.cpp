#include "cgl/config.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

namespace cgl {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

double to_real(const std::string& key, const std::string& v) {
    try {
        size_t used = 0;
        const double x = std::stod(v, &used);
        if (used == v.size()) return x;
    } catch (const std::logic_error&) {
    }
    throw ConfigError(key + ": expected a real number, got '" + v + "'");
}

int to_int(const std::string& key, const std::string& v) {
    try {
        size_t used = 0;
        const int x = std::stoi(v, &used);
        if (used == v.size()) return x;
    } catch (const std::logic_error&) {
    }
    throw ConfigError(key + ": expected an integer, got '" + v + "'");
}

Rational to_rational(const std::string& key, const std::string& v) {
    try {
        return Rational::parse(v);
    } catch (const std::exception&) {
        throw ConfigError(key + ": expected a rational such as 3 or 1/2, got '" + v + "'");
    }
}

// shortest text that reads back to the same double
std::string fmt(double x) {
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, r.ptr);
}

}  // namespace

const std::vector<std::string>& config_keys() {
    static const std::vector<std::string> keys = {
        "p",       "delta",   "grid.L", "grid.N", "ds",    "s0",    "s_end",      "K",           "K_data",
        "A",       "M_track", "scheme", "order",  "exec",  "output.dir", "shoot.grid", "shoot.half_width",
        "shoot.max_levels", "shoot.workers"};
    return keys;
}

void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value) {
    SimConfig& s = cfg.sim;
    if (key == "p") s.p = to_rational(key, value);
    else if (key == "delta") s.delta = to_rational(key, value);
    else if (key == "grid.L") s.L = to_real(key, value);
    else if (key == "grid.N") s.N = to_int(key, value);
    else if (key == "ds") s.ds = to_real(key, value);
    else if (key == "s0") s.s0 = to_real(key, value);
    else if (key == "s_end") s.s_end = to_real(key, value);
    else if (key == "K") s.K = to_real(key, value);
    else if (key == "K_data") s.K_data = to_real(key, value);
    else if (key == "A") s.A = to_real(key, value);
    else if (key == "M_track") s.M_track = to_int(key, value);
    else if (key == "scheme") {
        try {
            s.scheme = parse_scheme(value);
        } catch (const std::exception& e) {
            throw ConfigError(std::string("scheme: ") + e.what());
        }
    } else if (key == "order") s.order = to_int(key, value);
    else if (key == "exec") {
        if (value == "serial") s.exec = Exec::serial;
        else if (value == "omp") s.exec = Exec::omp;
        else throw ConfigError("exec: expected serial or omp, got '" + value + "'");
    } else if (key == "output.dir") cfg.output_dir = value;
    else if (key == "shoot.grid") cfg.shoot.grid = to_int(key, value);
    else if (key == "shoot.half_width") cfg.shoot.half_width = to_real(key, value);
    else if (key == "shoot.max_levels") cfg.shoot.max_levels = to_int(key, value);
    else if (key == "shoot.workers") cfg.shoot.workers = to_int(key, value);
    else throw ConfigError("unknown key '" + key + "'");
}

RunConfig parse_config(std::istream& in, const std::string& source) {
    RunConfig cfg;
    std::set<std::string> seen;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        const std::string where = source + ":" + std::to_string(lineno) + ": ";
        if (eq == std::string::npos) throw ConfigError(where + "expected key = value");
        const std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty()) throw ConfigError(where + "expected key = value");
        if (!seen.insert(key).second) throw ConfigError(where + "repeated key '" + key + "'");
        try {
            apply_setting(cfg, key, value);
        } catch (const ConfigError& e) {
            throw ConfigError(where + e.what());
        }
    }
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    return parse_config(in, path);
}

std::vector<std::pair<std::string, std::string>> config_entries(const RunConfig& cfg, double K_resolved) {
    const SimConfig& s = cfg.sim;
    return {
        {"p", s.p.str()},
        {"delta", s.delta.str()},
        {"grid.L", fmt(s.L)},
        {"grid.N", std::to_string(s.N)},
        {"ds", fmt(s.ds)},
        {"s0", fmt(s.s0)},
        {"s_end", fmt(s.s_end)},
        {"K", K_resolved > 0 ? fmt(K_resolved) : s.K > 0 ? fmt(s.K) : "default"},
        {"K_data", fmt(s.K_data)},
        {"A", fmt(s.A)},
        {"M_track", std::to_string(s.M_track)},
        {"scheme", to_string(s.scheme)},
        {"order", std::to_string(s.order)},
        {"exec", s.exec == Exec::omp ? "omp" : "serial"},
        {"output.dir", cfg.output_dir},
        {"shoot.grid", std::to_string(cfg.shoot.grid)},
        {"shoot.half_width", fmt(cfg.shoot.half_width)},
        {"shoot.max_levels", std::to_string(cfg.shoot.max_levels)},
        {"shoot.workers", std::to_string(cfg.shoot.workers)},
    };
}

}  // namespace cgl
