#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "specreg/app/config.hpp"
#include "specreg/operators.hpp"

namespace specreg::app {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

struct OutputFile {
  std::string name;
  std::string content;
};

struct CommandResult {
  int exit_code = kExitPass;
  std::string summary;  // one line per check, printed to stdout
  std::vector<OutputFile> files;
};

std::string version();

/// Adds `config_hash`, `version` and `command` and dumps with indent 2.
std::string dump_report(nlohmann::json report, const ExperimentConfig& config, const std::string& command);
std::string csv_comment(const ExperimentConfig& config);

SpectralVector build_solution(const ExperimentConfig& config, const SpectralOperator& op);

CommandResult cmd_validate_filter(const ExperimentConfig& config);
CommandResult cmd_rate_exact(const ExperimentConfig& config);
CommandResult cmd_rate_noisy(const ExperimentConfig& config);
CommandResult cmd_var_ineq(const ExperimentConfig& config);
CommandResult cmd_distance(const ExperimentConfig& config);
CommandResult cmd_run_all(const ExperimentConfig& config);

/// Dispatches by subcommand name; unknown names throw unknown_name.
CommandResult run_command(const std::string& name, const ExperimentConfig& config);

void write_outputs(const std::filesystem::path& dir, const std::vector<OutputFile>& files);

}  // namespace specreg::app
