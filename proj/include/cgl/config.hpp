#pragma once
// Line-oriented key = value configuration.  '#' starts a comment; blank lines are
// ignored; unknown keys and repeated keys are errors.
#include "cgl/shoot.hpp"

#include <istream>
#include <string>
#include <utility>
#include <vector>

namespace cgl {

struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct RunConfig {
    SimConfig sim;
    ShootConfig shoot;
    std::string output_dir = ".";
};

// the accepted keys, in echo order
const std::vector<std::string>& config_keys();

void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value);

RunConfig parse_config(std::istream& in, const std::string& source = "<config>");
RunConfig load_config(const std::string& path);

// every key with its resolved value (K shown as resolved when `K_resolved` > 0)
std::vector<std::pair<std::string, std::string>> config_entries(const RunConfig& cfg, double K_resolved = 0);

}  // namespace cgl
