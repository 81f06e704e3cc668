#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace rmdp {

enum ExitCode : int {
    kExitOk = 0,
    kExitFailure = 1,
    kExitValidation = 2,
    kExitRefused = 3,
    kExitSchema = 4,
};

struct RunConfig {
    std::string command;
    /// Instance file; optional only for `counterexample`.
    std::string input;
    /// Report file; empty writes the report to the output stream.
    std::string output;
    /// "json" or "csv"
    std::string format = "json";
    std::uint64_t seed = 0;
    /// Reporting tolerance (saddle search, weak-duality flag); defaults to 1e-12.
    std::optional<double> tol;
    std::uint64_t cap = 10'000'000;
};

const std::vector<std::string>& commands();

/// Runs one command. Errors are written to `err` as one JSON object per line.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

} // namespace rmdp
