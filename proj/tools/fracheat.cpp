#include <algorithm>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fracheat/errors.hpp"
#include "fracheat/plot.hpp"
#include "fracheat/scenario.hpp"

using fracheat::ScenarioConfig;

namespace {

struct Experiment {
  std::string name;
  std::string help;
  std::vector<std::string> keys;
};

const std::vector<Experiment> experiments = {
    {"kernel", "Tabulate the free stable kernel against its envelopes", {"alpha", "d", "t_grid", "r_grid"}},
    {"semigroup", "Lower-bound constants and L1->Linf norm of the Dirichlet semigroup",
     {"alpha", "R", "N", "r", "delta", "t_min", "t_max", "t_count"}},
    {"solve", "Integrate the semilinear problem",
     {"alpha", "R", "N", "engine", "f", "f_table", "q", "T", "dt", "blowup_cap", "u0", "method",
      "picard_max", "picard_tol"}},
    {"classify", "Existence / non-existence verdict for a growth function",
     {"f", "f_table", "q", "alpha", "d", "domain", "tau", "s_max", "K"}},
    {"counterexample", "Build stacked-indicator data and run the escalation experiment",
     {"theorem", "f", "f_table", "q", "alpha", "d", "K_list", "R", "N", "T", "dt", "blowup_cap",
      "nu_hat", "c_hat", "eps", "tau", "s_max", "layers"}},
    {"acceptance", "Run the acceptance suite", {}},
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fractional semilinear heat equation toolkit"};
  app.require_subcommand(1);

  // Every subcommand takes its config keys as --key value.
  std::map<std::string, std::map<std::string, std::string>> values;
  std::map<std::string, CLI::App*> subs;
  std::map<std::string, bool> strict, plot;
  std::map<std::string, std::string> config_files;
  for (const auto& e : experiments) {
    auto* sub = app.add_subcommand(e.name, e.help);
    subs[e.name] = sub;
    auto& v = values[e.name];
    for (const auto& key : e.keys) {
      std::string names = "--" + key;
      if (key.find('_') != std::string::npos) {
        std::string dashed = key;
        std::replace(dashed.begin(), dashed.end(), '_', '-');
        names += ",--" + dashed;
      }
      sub->add_option(names, v[key]);
    }
    sub->add_option("--config", config_files[e.name], "Scenario file; flags override its keys");
    sub->add_option("--out", v["out"], "CSV (or report) output path");
    sub->add_option("--report", v["report"], "JSON or CSV report path");
    sub->add_option("--seed", v["seed"], "Seed for randomized suites");
    sub->add_flag("--strict", strict[e.name], "Exit 4 on an inconclusive verdict");
    sub->add_flag("--plot", plot[e.name], "Also write a gnuplot script next to --out");
  }

  std::string config_path;
  auto* run = app.add_subcommand("run", "Run every scenario in a config file");
  run->add_option("--config", config_path, "key=value, JSON object or JSON array")->required();

  std::string csv_path, kind, script_path;
  auto* plot_cmd = app.add_subcommand("plot", "Write a gnuplot script for a CSV");
  plot_cmd->add_option("--csv", csv_path)->required();
  plot_cmd->add_option("--kind", kind, "kernel, semigroup, solve or escalation")->required();
  plot_cmd->add_option("--script", script_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : fracheat::exit_code::precondition;
  }

  if (*run) {
    try {
      return fracheat::run_all(ScenarioConfig::load(config_path), std::cout, std::cerr);
    } catch (const fracheat::PreconditionError& e) {
      std::cerr << "precondition failed: " << e.what() << "\n";
      return fracheat::exit_code::precondition;
    }
  }
  if (*plot_cmd) {
    try {
      std::cout << "wrote " << fracheat::emit_plot_script(csv_path, kind, script_path) << "\n";
      return fracheat::exit_code::ok;
    } catch (const fracheat::PreconditionError& e) {
      std::cerr << "precondition failed: " << e.what() << "\n";
      return fracheat::exit_code::precondition;
    }
  }
  for (const auto& e : experiments) {
    auto* sub = subs[e.name];
    if (!*sub) continue;
    ScenarioConfig config(e.name);
    if (!config_files[e.name].empty()) {
      try {
        const auto loaded = ScenarioConfig::load(config_files[e.name]);
        if (loaded.size() != 1) throw fracheat::PreconditionError("--config must hold a single scenario");
        config = loaded.front();
        if (config.has("experiment") && config.experiment() != e.name) {
          throw fracheat::PreconditionError("--config describes experiment '" + config.experiment() + "'");
        }
        config.set("experiment", e.name);
      } catch (const fracheat::PreconditionError& err) {
        std::cerr << "precondition failed: " << err.what() << "\n";
        return fracheat::exit_code::precondition;
      }
    }
    for (const auto& [key, value] : values[e.name]) {
      if (sub->count("--" + key) > 0) config.set(key, value);
    }
    if (strict[e.name]) config.set("strict", "true");
    if (plot[e.name]) config.set("plot", "true");
    return fracheat::run(config, std::cout, std::cerr);
  }
  return fracheat::exit_code::failure;
}
