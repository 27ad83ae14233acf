#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace atomtopo {

using json = nlohmann::json;

const std::vector<std::string>& experiment_names();

// Default configuration of one experiment, every knob present.
json default_config(const std::string& experiment);

// Merges the user config into the defaults and checks types and ranges.
// Throws ConfigError naming the offending field.
json effective_config(const json& user);

struct RunContext {
    bool verbose = false;
};

struct RunResult {
    json metrics;
    std::vector<std::string> artifacts;  // file names relative to the output directory
};

// Runs a validated configuration and writes its artifacts into out_dir
// (which must exist). manifest.json is written by the caller.
RunResult run_experiment(const json& effective, const std::filesystem::path& out_dir, const RunContext& ctx = {});

}  // namespace atomtopo
