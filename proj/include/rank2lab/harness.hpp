#pragma once
// Command front end: one function per subcommand, each returning a report
// and a verdict. Writing files and choosing exit codes happens here too so
// that the CLI and the Python module share one code path.

#include "rank2lab/systems.hpp"

#include <filesystem>
#include <optional>

namespace rank2lab {

// Everything that determines a run. Identical configs give identical bytes.
struct RunConfig {
    std::string command;
    std::optional<std::string> algebra, system;
    std::optional<int> fundamental;
    Mode mode = Mode::Exact;
    int trials = 100;
    int points = 20;
    uint64_t seed = 1;
    unsigned precision = 60;
    double step = 1e-3;
    std::optional<int> sets;  // random coefficient sets when no file is given
    std::optional<std::string> coeffs, out, tolerance;
    std::optional<nlohmann::json> coeffs_json;  // inline alternative to the coefficient file
};

struct RunResult {
    nlohmann::json report;
    bool passed = false;
    std::string default_name;  // file name used when no --out is given
    std::string summary;       // one line for the terminal
};

// Environment variable naming the default output directory.
inline constexpr const char* kOutDirEnv = "RANK2LAB_OUT_DIR";

RunResult cmd_build_rep(const std::string& algebra, int fundamental);
// All four algebras when none is given.
RunResult cmd_check_identities(const std::optional<std::string>& algebra, int trials, uint64_t seed);
RunResult cmd_solve(const RunConfig& rc);
RunResult cmd_verify(const RunConfig& rc);
RunResult run_command(const RunConfig& rc);

// Coefficient file: one configuration object or an array of them.
std::vector<SystemConfig> parse_configs(const nlohmann::json& j, std::optional<SystemId> system);
std::vector<SystemConfig> load_configs(const std::filesystem::path& path, std::optional<SystemId> system);

// Serialized report: sorted keys, two-space indent, trailing newline.
std::string report_bytes(const nlohmann::json& report);

// --out if given ("-" means stdout, returned as empty), otherwise the
// default name inside $RANK2LAB_OUT_DIR or the working directory.
std::filesystem::path output_path(const RunConfig& rc, const std::string& default_name);
void write_report(const std::filesystem::path& path, const nlohmann::json& report);

// Runs the command and writes its report. Returns the exit code:
// 0 all checks passed, 1 some check failed, 2 usage or input error.
int execute(const RunConfig& rc, std::ostream& out, std::ostream& err);

}  // namespace rank2lab
