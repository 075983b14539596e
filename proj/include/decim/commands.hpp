#pragma once

#include "decim/run_config.hpp"

namespace decim {

/// Result of one command: a JSON summary document plus named file payloads
/// (CSV tables, series dumps). Writing files is the caller's job, so all
/// output stays on the coordinating thread.
struct CommandResult {
    nlohmann::ordered_json summary;
    std::vector<std::pair<std::string, std::string>> artifacts;
};

/// Validate the config and execute one command. Throws ConfigError for
/// invalid configs and std::runtime_error for runtime failures. Identical
/// config and seeds produce byte-identical payloads.
CommandResult run_command(const std::string& command, const nlohmann::json& config);

/// Validate only; return the derived plan (kernel size, windows, memory
/// estimate) without sampling.
nlohmann::ordered_json dry_run_plan(const std::string& command, const nlohmann::json& config);

/// Fixed CSV headers of the tabular artifacts.
extern const char* const probe_csv_header;
extern const char* const annulus_csv_header;
extern const char* const magnetize_csv_header;
extern const char* const energy_bound_csv_header;

}  // namespace decim
