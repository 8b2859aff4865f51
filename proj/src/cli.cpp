#include "logdamp/cli.hpp"

#include <fstream>
#include <iostream>
#include <map>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "logdamp/errors.hpp"
#include "logdamp/report.hpp"

namespace logdamp {
namespace {

const std::map<std::string, Command>& command_names() {
  static const std::map<std::string, Command> names{
      {"simulate", Command::simulate}, {"decay", Command::decay},   {"profile", Command::profile},
      {"optimality", Command::optimality}, {"lemmas", Command::lemmas}, {"all", Command::all}};
  return names;
}

Command parse_command(const std::string& text) {
  const auto it = command_names().find(text);
  if (it == command_names().end()) throw ConfigInvalid("command", "unknown command '" + text + "'");
  return it->second;
}

PropagatorMode parse_mode(const std::string& text) {
  if (text == "ode") return PropagatorMode::ode;
  if (text == "paper") return PropagatorMode::paper;
  throw ConfigInvalid("mode", "expected 'ode' or 'paper', got '" + text + "'");
}

Spacing parse_spacing(const std::string& text) {
  if (text == "log") return Spacing::log;
  if (text == "linear") return Spacing::linear;
  throw ConfigInvalid("spacing", "expected 'log' or 'linear', got '" + text + "'");
}

template <class T>
T json_value(const nlohmann::json& doc, const std::string& key) {
  try {
    return doc.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigInvalid(key, std::string("bad value in config file: ") + e.what());
  }
}

void apply_config_file(const std::filesystem::path& path, RunConfig& cfg) {
  std::ifstream in(path);
  if (!in) throw ConfigInvalid("config", "cannot open '" + path.string() + "'");
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigInvalid("config", path.string() + ": " + e.what());
  }
  if (!doc.is_object()) throw ConfigInvalid("config", "top level must be an object");
  ExperimentSettings& s = cfg.settings;
  for (const auto& [key, value] : doc.items()) {
    if (key == "command") {
      cfg.command = parse_command(json_value<std::string>(doc, key));
    } else if (key == "n") {
      s.dim = json_value<int>(doc, key);
    } else if (key == "mode") {
      s.mode = parse_mode(json_value<std::string>(doc, key));
    } else if (key == "u0") {
      s.u0 = json_value<std::string>(doc, key);
    } else if (key == "u1") {
      s.u1 = json_value<std::string>(doc, key);
    } else if (key == "t_lo") {
      s.grid.lo = json_value<double>(doc, key);
    } else if (key == "t_hi") {
      s.grid.hi = json_value<double>(doc, key);
    } else if (key == "t_count") {
      s.grid.count = json_value<std::size_t>(doc, key);
    } else if (key == "spacing") {
      s.grid.spacing = parse_spacing(json_value<std::string>(doc, key));
    } else if (key == "tol") {
      s.tol = json_value<double>(doc, key);
    } else if (key == "out") {
      cfg.out_dir = json_value<std::string>(doc, key);
    } else if (key == "seed") {
      s.seed = json_value<std::uint64_t>(doc, key);
    } else {
      throw ConfigInvalid(key, "unknown key in config file");
    }
  }
}

std::vector<ExperimentReport> run_experiments(const RunConfig& cfg) {
  const ExperimentSettings& s = cfg.settings;
  std::vector<ExperimentReport> out;
  const auto want = [&](Command c) { return cfg.command == c || cfg.command == Command::all; };
  if (want(Command::simulate)) out.push_back(simulate_experiment(s));
  if (want(Command::decay)) out.push_back(decay_experiment(s));
  if (want(Command::profile)) out.push_back(profile_experiment(s));
  if (want(Command::optimality)) out.push_back(optimality_experiment(s));
  if (want(Command::lemmas)) out.push_back(lemmas_experiment(s));
  return out;
}

std::string py_string(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

const char* to_string(Command command) {
  for (const auto& [name, c] : command_names()) {
    if (c == command) return name.c_str();
  }
  return "all";
}

RunConfig parse_args(const std::vector<std::string>& args) {
  CLI::App app{"Decay experiments for the log-Laplacian damped wave model", "logdamp-lab"};
  std::string command;
  int n = 0;
  std::string mode, u0, u1, out, config;
  double t_lo = 0.0, t_hi = 0.0, tol = 0.0;
  std::size_t t_count = 0;
  std::uint64_t seed = 0;

  app.add_option("command", command, "simulate | decay | profile | optimality | lemmas | all")
      ->required();
  auto* o_n = app.add_option("--n", n, "spatial dimension (>= 3)");
  auto* o_mode = app.add_option("--mode", mode, "propagator: ode | paper");
  auto* o_u0 = app.add_option("--u0", u0, "initial displacement profile");
  auto* o_u1 = app.add_option("--u1", u1, "initial velocity profile");
  auto* o_lo = app.add_option("--t-lo", t_lo, "first time of the fit grid");
  auto* o_hi = app.add_option("--t-hi", t_hi, "last time of the fit grid");
  auto* o_count = app.add_option("--t-count", t_count, "number of grid samples");
  auto* o_tol = app.add_option("--tol", tol, "relative quadrature tolerance");
  auto* o_out = app.add_option("--out", out, "output directory");
  auto* o_seed = app.add_option("--seed", seed, "seed for random sweeps");
  auto* o_config = app.add_option("--config", config, "JSON file with the same keys");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    throw;
  } catch (const CLI::ParseError& e) {
    throw ConfigInvalid("arguments", e.what());
  }

  RunConfig cfg;
  if (o_config->count() > 0) apply_config_file(config, cfg);
  cfg.command = parse_command(command);
  ExperimentSettings& s = cfg.settings;
  if (o_n->count() > 0) s.dim = n;
  if (o_mode->count() > 0) s.mode = parse_mode(mode);
  if (o_u0->count() > 0) s.u0 = u0;
  if (o_u1->count() > 0) s.u1 = u1;
  if (o_lo->count() > 0) s.grid.lo = t_lo;
  if (o_hi->count() > 0) s.grid.hi = t_hi;
  if (o_count->count() > 0) s.grid.count = t_count;
  if (o_tol->count() > 0) s.tol = tol;
  if (o_out->count() > 0) cfg.out_dir = out;
  if (o_seed->count() > 0) s.seed = seed;
  validate(cfg);
  return cfg;
}

void validate(const RunConfig& cfg) {
  const ExperimentSettings& s = cfg.settings;
  if (s.dim < 3) throw ConfigInvalid("n", fmt::format("need N >= 3, got {}", s.dim));
  if (!(s.grid.lo > 0.0) || !(s.grid.hi > s.grid.lo)) {
    throw ConfigInvalid("t-lo", "need 0 < t_lo < t_hi");
  }
  if (s.grid.count < 2) throw ConfigInvalid("t-count", "need at least 2 samples");
  if (!(s.tol > 0.0) || !(s.tol < 1.0)) throw ConfigInvalid("tol", "need 0 < tol < 1");
  ProfileSpec u0_spec;
  try {
    u0_spec = ProfileSpec::parse(s.u0);
  } catch (const ConfigInvalid& e) {
    throw ConfigInvalid("u0", e.what());
  }
  try {
    ProfileSpec::parse(s.u1);
  } catch (const ConfigInvalid& e) {
    throw ConfigInvalid("u1", e.what());
  }
  const bool profile = cfg.command == Command::profile || cfg.command == Command::all;
  if (profile && u0_spec.kind != ProfileKind::zero) {
    throw ConfigInvalid("u0", "the profile experiment needs u0 = zero");
  }
}

int run(const RunConfig& cfg, std::ostream& log) {
  validate(cfg);
  bool ok = true;
  for (const ExperimentReport& rep : run_experiments(cfg)) {
    const auto dir = cfg.out_dir / rep.name;
    write_report(rep, dir);
    emit_plot_script(rep, dir);
    log << fmt::format("[{}] {}\n", rep.name, (dir / (rep.name + ".json")).string());
    for (const Check& c : rep.checks) {
      log << fmt::format("  {} {} (margin {:.3e})\n", c.pass ? "PASS" : "FAIL", c.description, c.margin);
    }
    ok = ok && rep.all_pass();
  }
  return ok ? 0 : 2;
}

std::string plot_script(const ExperimentReport& rep) {
  std::string out;
  out += "#!/usr/bin/env python3\n";
  out += fmt::format("\"\"\"Plots for the {} experiment; run from this directory.\"\"\"\n", rep.name);
  out += "import csv\n\nimport matplotlib\n\nmatplotlib.use(\"Agg\")\n";
  out += "import matplotlib.pyplot as plt  # noqa: E402\n\n\n";
  out += "def load(name):\n";
  out += "    with open(name, newline=\"\") as fh:\n";
  out += "        rows = list(csv.DictReader(fh))\n";
  out += "    return [float(r[\"t\"]) for r in rows], [float(r[\"value\"]) for r in rows]\n";

  for (const Trace& tr : rep.traces) {
    PlotAxes axes = PlotAxes::loglog;
    std::vector<double> hlines;
    for (const auto& f : rep.fits) {
      if (f.trace == tr.label && f.fit.model == FitModel::exponential) axes = PlotAxes::semilogy;
    }
    for (const PlotSpec& p : rep.plots) {
      if (p.trace == tr.label) {
        axes = p.axes;
        hlines = p.hlines;
      }
    }
    const std::string label = py_string(tr.label);
    out += fmt::format("\n\n# {}\n", tr.label);
    out += fmt::format("t, v = load({})\n", py_string(tr.label + ".csv"));
    out += "fig, ax = plt.subplots()\n";
    out += fmt::format("ax.{}(t, v, marker=\".\")\n", axes == PlotAxes::loglog ? "loglog" : "semilogy");
    for (double h : hlines) {
      out += fmt::format("ax.axhline({:.17g}, linestyle=\"--\", color=\"gray\")\n", h);
    }
    out += fmt::format("ax.set_xlabel(\"t\")\nax.set_ylabel({0})\nax.set_title({0})\n", label);
    out += fmt::format("fig.savefig({}, dpi=150)\nplt.close(fig)\n", py_string(tr.label + ".png"));
  }
  return out;
}

void emit_plot_script(const ExperimentReport& rep, const std::filesystem::path& dir) {
  if (rep.traces.empty()) throw std::invalid_argument("emit_plot_script: report has no traces");
  std::filesystem::create_directories(dir);
  std::ofstream out(dir / "plot.py", std::ios::binary);
  out << plot_script(rep);
  if (!out) throw std::runtime_error("cannot write " + (dir / "plot.py").string());
}

int cli_main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    const RunConfig cfg = parse_args(args);
    return run(cfg, std::cout);
  } catch (const CLI::CallForHelp&) {
    std::cout << "usage: logdamp-lab <simulate|decay|profile|optimality|lemmas|all> [--n INT] "
                 "[--mode ode|paper] [--u0 DESC] [--u1 DESC] [--t-lo F] [--t-hi F] [--t-count INT] "
                 "[--tol F] [--out DIR] [--seed INT] [--config FILE]\n";
    return 0;
  } catch (const ConfigInvalid& e) {
    std::cerr << "logdamp-lab: invalid configuration: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "logdamp-lab: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace logdamp
