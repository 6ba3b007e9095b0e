#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "chainscope/app.hpp"
#include "chainscope/config.hpp"
#include "chainscope/errors.hpp"

namespace {

struct Flag {
  const char* name;  // command-line flag
  const char* key;   // config key
  const char* help;
};

const std::vector<Flag> kFlags{
    {"--system", "system", "catalog label"},
    {"--grid", "grid", "grid counts, e.g. 2048 or 64x32"},
    {"--T", "T", "chain time T"},
    {"--ladder", "ladder", "analyze: comma-separated resolutions"},
    {"--base", "base", "lyapunov: base point, comma-separated coordinates"},
    {"--potential", "potential", "rigidity: potential u as an expression in x1..xn"},
    {"--family", "family", "outer: family config file or inline 'u=...;r=...'"},
    {"--out", "out", "output directory"},
    {"--seed", "seed", "random seed"},
    {"--c-snap", "c_snap", "snap slack constant"},
    {"--ratio-max", "ratio_max", "allowed loop-cost ratio between levels"},
    {"--step", "step", "integration step (at most 1e-3)"},
    {"--samples", "samples", "lyapunov: random verification samples"},
    {"--c", "c", "energy level"},
    {"--threads", "threads", "worker threads (0: CHAINSCOPE_THREADS or hardware)"},
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"chainscope: strong chain recurrence on flat tori"};
  app.require_subcommand(1);
  std::map<std::string, std::string> values;
  std::string config_path;
  std::vector<std::string> sets;

  const std::vector<std::string> commands{"analyze", "lyapunov", "rigidity", "outer", "examples", "selftest"};
  const std::map<std::string, std::string> about{
      {"analyze", "classify grid nodes as SCR-candidate, CR-only or non-recurrent"},
      {"lyapunov", "synthesize and verify a Lyapunov function from the chain cost"},
      {"rigidity", "check H(x, du) - c and probe inner rigidity"},
      {"outer", "leading term of a deformation family of the zero section"},
      {"examples", "list the catalog systems"},
      {"selftest", "fast invariant checks"}};
  for (const auto& c : commands) {
    CLI::App* sub = app.add_subcommand(c, about.at(c));
    sub->add_option("--config", config_path, "key = value file; flags override its entries");
    for (const auto& f : kFlags) sub->add_option(f.name, values[f.key], f.help);
    sub->add_option("--set", sets, "extra key=value (catalog parameters)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? chainscope::kExitOk : chainscope::kExitConfigError;
  }

  std::string command;
  for (const auto* sub : app.get_subcommands()) command = sub->get_name();
  CLI::App* sub = app.get_subcommand(command);

  try {
    chainscope::Config settings;
    if (!config_path.empty()) settings = chainscope::Config::load(config_path);
    for (const auto& s : sets) {
      const auto eq = s.find('=');
      if (eq == std::string::npos) throw chainscope::ConfigError("--set expects key=value, got '" + s + "'");
      settings.set(chainscope::trim(s.substr(0, eq)), chainscope::trim(s.substr(eq + 1)));
    }
    for (const auto& f : kFlags)
      if (sub->count(f.name) > 0) settings.set(f.key, values[f.key]);
    const chainscope::RunConfig cfg = chainscope::make_run_config(command, settings);
    return chainscope::run(cfg, std::cout, std::cerr);
  } catch (const chainscope::Error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return chainscope::kExitConfigError;
  }
}
