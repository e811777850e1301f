#pragma once

// Machine-readable run records shared by the CLI and the test harnesses.
// JSON schema: {"command", "inputs", "per_term":[{"label","value","err"}],
// "total", "oracle", "passed", "n_evals"} with "wall_time_ms" appended
// unless timing is suppressed.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace slater::report {

struct TermEntry {
    std::string label;
    double value = 0.0;
    double err = 0.0;
};

struct ReportRecord {
    std::string command;
    std::vector<std::pair<std::string, std::string>> inputs;  // insertion-ordered
    std::vector<TermEntry> per_term;
    double total = 0.0;
    std::optional<double> oracle;
    std::optional<bool> passed;
    std::int64_t n_evals = 0;
    std::optional<std::int64_t> wall_time_ms;
};

std::string to_json(const ReportRecord& record);
std::string to_json(const std::vector<ReportRecord>& records);
std::string to_csv(const ReportRecord& record);
std::string to_csv(const std::vector<ReportRecord>& records);
std::string to_table(const ReportRecord& record);
std::string to_table(const std::vector<ReportRecord>& records);

}  // namespace slater::report
