#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "config.hpp"
#include "moser/flow.hpp"

namespace moser::app {

enum class Stage { schedule, normalize, verify, all };

enum ExitCode { exit_ok = 0, exit_check_failed = 1, exit_config_error = 2, exit_engine_error = 3 };

struct CsvFile {
    std::string name, content;
};

struct Outcome {
    nlohmann::ordered_json report;
    std::vector<CsvFile> csv;
    int exit_code = exit_ok;
};

/// Never throws on engine failures; they become an "error" object and exit 3.
Outcome run_pipeline(const ProblemConfig &cfg, Stage stage, std::uint64_t seed = 0);

/// Config text to outcome, mapping schema violations to exit 2.
Outcome run_text(const std::string &config_text, Stage stage, std::uint64_t seed = 0);

/// Writes report.json and the CSV files into dir (created if needed).
void emit(const Outcome &out, const std::string &dir);

/// Human-readable summary for stdout.
std::string summary(const Outcome &out);

std::string trajectory_csv(const Trajectory &tr);

} // namespace moser::app
