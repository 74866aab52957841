#pragma once

// Command execution behind the hypodense binary. Flags and config files both
// reduce to (command, params JSON); params are validated (unknown keys
// rejected) before anything runs, and output is rendered fully in memory
// before a single write, so failures leave no partial artifacts.

#include <string>

#include "hypodense/serialize.hpp"

namespace hypodense {

enum class Emit { json, csv, text };

struct CommandResult {
    std::string output;  // rendered document
    bool passed = true;  // all checks held
};

// Commands: density, forge, schedule, orbit, shadow, prop50, prop51, hits,
// identity, verify. Throws ConfigError for bad params.
CommandResult execute(const std::string& command, const json& params, Emit emit);

// {"command": ..., "params": {...}, "emit": "json", "out": "path"}
struct ExperimentConfig {
    std::string command;
    json params;
    Emit emit = Emit::json;
    std::string out;  // empty: stdout
};
ExperimentConfig parse_config(const json& doc);

// Exit status: 0 all checks pass, 1 a check failed or computation error,
// 2 config/validation error.
int cli_main(int argc, char** argv);

}  // namespace hypodense
