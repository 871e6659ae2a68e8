#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dioph/arakelov.hpp"
#include "dioph/report.hpp"

namespace dioph {

struct RunConfig {
    std::string command;
    std::string input;   // TOML file; empty when the command needs none
    std::string output;  // JSON report; empty writes to stdout
    prec_t precision = 128;
    std::uint64_t seed = 1;
    std::size_t max_lattice = kDefaultMaxLattice;
    std::size_t max_plucker = kDefaultMaxPlucker;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;  // some verdict False or Unknown, or a hypothesis fails
inline constexpr int kExitInput = 2;   // malformed or unsupported input

struct RunResult {
    int exit_code = kExitOk;
    std::string report;  // JSON text, newline-terminated
};

const std::vector<std::string>& command_names();

// DIOPH_PRECISION, DIOPH_SEED, DIOPH_MAX_LATTICE, DIOPH_MAX_PLUCKER, DIOPH_INPUT
// and DIOPH_OUTPUT replace the corresponding fields when set.
void apply_env_overrides(RunConfig& cfg);

// Runs a command on TOML text. Never throws for library or input errors; they
// become an "error" entry in the report and the matching exit code.
RunResult run_text(const RunConfig& cfg, const std::string& toml_text);

// Reads cfg.input (if any), runs, and writes cfg.output when it is set.
RunResult run(const RunConfig& cfg);

}  // namespace dioph
