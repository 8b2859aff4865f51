#pragma once

#include <filesystem>
#include <string>

#include "logdamp/experiments.hpp"

namespace logdamp {

// JSON document with stable key order: name, parameters, traces (label and
// CSV file name), fits, checks, all_pass.
std::string report_json(const ExperimentReport& report);

// CSV with header "t,value"; numbers printed with 17 significant digits so
// the text round-trips and is byte-stable.
std::string trace_csv(const Trace& trace);

// Writes <dir>/<name>.json and <dir>/<label>.csv for every trace. Creates
// `dir` if needed.
void write_report(const ExperimentReport& report, const std::filesystem::path& dir);

}  // namespace logdamp
