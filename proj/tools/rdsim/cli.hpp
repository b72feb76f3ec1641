#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

namespace rds::cli {

using Json = nlohmann::ordered_json;

/// Exit codes of `run`.
enum ExitCode : int {
    kOk = 0,
    kRuntimeError = 1,
    kConfigError = 2,
};

struct Rendered {
    std::string text;
    /// False when a selftest check failed.
    bool passed = true;
};

/// Runs one experiment described by `config` (the object echoed under
/// "config" in every report) and renders it in config["format"].
/// `workers` only affects wall-clock time, never the output. Invalid
/// parameters throw std::invalid_argument.
Rendered execute(const Json& config, int workers);

/// Entry point behind the rdsim binary. `args` excludes the program name.
/// Writes the report to `out` (or to --output) and diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rds::cli
