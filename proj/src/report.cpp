#include "logdamp/report.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include <fmt/format.h>
#include <json.hpp>

namespace logdamp {
namespace {

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

// JSON has no infinities; a non-finite margin is reported as a string.
nlohmann::ordered_json number(double x) {
  if (std::isfinite(x)) return x;
  return fmt::format("{}", x);
}

}  // namespace

std::string report_json(const ExperimentReport& rep) {
  using nlohmann::ordered_json;
  ordered_json doc;
  doc["name"] = rep.name;
  ordered_json params = ordered_json::object();
  for (const auto& [k, v] : rep.parameters) params[k] = v;
  doc["parameters"] = params;

  ordered_json traces = ordered_json::array();
  for (const auto& tr : rep.traces) {
    traces.push_back({{"label", tr.label}, {"csv", tr.label + ".csv"}, {"samples", tr.times.size()}});
  }
  doc["traces"] = traces;

  ordered_json fits = ordered_json::array();
  for (const auto& [label, fit] : rep.fits) {
    fits.push_back({{"trace", label},
                    {"model", to_string(fit.model)},
                    {"rate", fit.rate},
                    {"intercept", fit.intercept},
                    {"max_residual", fit.max_residual},
                    {"window", {fit.t_lo, fit.t_hi}},
                    {"samples", fit.samples}});
  }
  doc["fits"] = fits;

  ordered_json checks = ordered_json::array();
  for (const auto& c : rep.checks) {
    checks.push_back({{"description", c.description}, {"pass", c.pass}, {"margin", number(c.margin)}});
  }
  doc["checks"] = checks;
  doc["all_pass"] = rep.all_pass();
  return doc.dump(2) + "\n";
}

std::string trace_csv(const Trace& tr) {
  std::string out = "t,value\n";
  for (std::size_t i = 0; i < tr.times.size(); ++i) {
    out += fmt::format("{:.17g},{:.17g}\n", tr.times[i], tr.values[i]);
  }
  return out;
}

void write_report(const ExperimentReport& rep, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  write_text(dir / (rep.name + ".json"), report_json(rep));
  for (const auto& tr : rep.traces) write_text(dir / (tr.label + ".csv"), trace_csv(tr));
}

}  // namespace logdamp
