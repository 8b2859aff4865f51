#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "logdamp/experiments.hpp"

namespace logdamp {

enum class Command { simulate, decay, profile, optimality, lemmas, all };

const char* to_string(Command command);

struct RunConfig {
  Command command = Command::all;
  ExperimentSettings settings{};
  std::filesystem::path out_dir = "out";
};

// Parses `logdamp-lab <command> [flags]`. A --config JSON file supplies
// defaults that explicit flags override. Throws ConfigInvalid naming the
// offending flag or key.
RunConfig parse_args(const std::vector<std::string>& args);

// Throws ConfigInvalid unless the configuration is runnable.
void validate(const RunConfig& config);

// Runs the command, writing out/<experiment>/ for each experiment and a
// one-line summary per check to `log`. Returns 0 when every check passes and
// 2 otherwise.
int run(const RunConfig& config, std::ostream& log);

// Matplotlib script plotting every trace of the report from its CSV file.
// Byte-for-byte deterministic for a given report.
std::string plot_script(const ExperimentReport& report);

// Writes plot_script(report) to <dir>/plot.py.
void emit_plot_script(const ExperimentReport& report, const std::filesystem::path& dir);

// Entry point for the executable: maps ConfigInvalid and usage errors to
// exit status 1.
int cli_main(int argc, char** argv);

}  // namespace logdamp
