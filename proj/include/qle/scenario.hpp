#pragma once

// Line-oriented scenario files:
//
//   # comment
//   [scenario.passive_bound]
//   kind = TbpReport
//   tau = 1
//   gamma = 2
//
// Vectors are comma-separated; matrices are referenced by file path (relative
// paths resolve against the config file's directory). Keys are typed per kind
// and unknown keys are rejected.

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace qle::scenario {

enum class Kind { GaugeCheck, TbpReport, ClassicalRun, MomentRun, OracleRun, Dilate, Closure, ThermoRun };

const char* to_string(Kind k) noexcept;

using Value = std::variant<double, std::vector<double>, std::string, bool>;

struct Scenario {
    std::string name;
    Kind kind = Kind::TbpReport;
    std::map<std::string, Value> parameters;
    std::string output_path;  // empty when the kind writes nothing
    int line = 0;             // section header line, for diagnostics

    bool has(const std::string& key) const { return parameters.count(key) != 0; }
    double number(const std::string& key) const;
    double number_or(const std::string& key, double fallback) const;
    const std::vector<double>& vector(const std::string& key) const;
    std::vector<double> vector_or(const std::string& key, std::vector<double> fallback) const;
    const std::string& text(const std::string& key) const;
    bool flag(const std::string& key) const;
};

/// Throws Error{ParseError} (with line number) or Error{ValidationError}
/// (naming the offending key).
std::vector<Scenario> parse_config(std::string_view text, const std::filesystem::path& base_dir = {});

std::vector<Scenario> parse_config_file(const std::filesystem::path& path);

struct RunOptions {
    bool check = false;
    std::filesystem::path out_dir = "qle_out";
};

struct ScenarioResult {
    std::string name;
    std::string verdict;
    bool check_passed = true;
    std::vector<std::string> check_failures{};
};

/// Executes one scenario, writing its CSV (if any) under opts.out_dir.
/// Module errors propagate with the scenario name prefixed.
ScenarioResult run_scenario(const Scenario& s, const RunOptions& opts);

/// Runs every scenario and prints one verdict line each to `out`
/// (plus CHECK FAILED lines under --check). Returns the process exit status:
/// 0 when all scenarios ran (and, with check, all checks passed).
int run(const std::vector<Scenario>& scenarios, const RunOptions& opts, std::ostream& out);

/// Resolves the output directory: explicit flag > QLE_OUT_DIR > "qle_out".
std::filesystem::path resolve_out_dir(const std::string& flag_value);

}  // namespace qle::scenario
