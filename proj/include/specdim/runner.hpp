#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

// Batch front-end: one RunConfig in, report files out.  Kept out of the CLI
// binary so tests can drive commands directly and diff the bytes.

namespace specdim {

struct RunConfig {
    std::string command;         // one of command_names()
    nlohmann::json params;       // module-specific parameters (the config file body)
    std::string out_dir = ".";   // created if absent
    int workers = 0;             // OpenMP thread count; 0 keeps the default
    std::uint64_t seed = 1;      // feeds every randomized generator
};

struct RunResult {
    std::vector<std::string> files;  // paths written, in emit order
};

const std::vector<std::string>& command_names();

/// Dispatches one subcommand and writes <command>.csv plus <command>.json
/// (some commands add a second CSV) under out_dir.  Outputs are
/// deterministic in (params, seed); the JSON report echoes the config.
/// BadConfig names the failing field; module errors pass through.
RunResult run(const RunConfig& config);

}  // namespace specdim
