// Command-line runner for the ladder experiments.
//
//   zeno <experiment> CONFIG [--jobs N] [--out-dir DIR]
//   zeno run CONFIG            experiment taken from the config
//   zeno rerun CSV             rebuild the config from a CSV header and run it
//
// Exit codes: 0 success, 2 config error, 3 numerical failure, 1 anything else.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "zeno/config.hpp"
#include "zeno/errors.hpp"
#include "zeno/experiments.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hilbert-space-fragmented ladder: quench dynamics and entanglement"};
  app.require_subcommand(1);

  std::string input;
  std::string out_dir;
  int jobs = 1;
  bool quiet = false;
  app.add_flag("-q,--quiet", quiet, "Do not list written files");

  const std::vector<std::string> kinds = {"quench", "spectrum", "sweep", "collapse", "ptcoeff", "fragments"};
  std::vector<CLI::App*> subs;
  for (const auto& k : kinds) subs.push_back(app.add_subcommand(k, "Run the " + k + " experiment from a config file"));
  subs.push_back(app.add_subcommand("run", "Run the experiment named in the config file"));
  auto* rerun = app.add_subcommand("rerun", "Reproduce a CSV from its own header");
  subs.push_back(rerun);
  for (auto* s : subs) {
    s->add_option("input", input, s == rerun ? "CSV written by this tool" : "Config file")->required();
    s->add_option("-j,--jobs", jobs, "Worker threads for sweep points")->check(CLI::PositiveNumber);
    s->add_option("-o,--out-dir", out_dir, "Override out_dir");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  try {
    auto* chosen = app.get_subcommands().front();
    const std::string name = chosen->get_name();
    auto cfg = name == "rerun" ? zeno::config_from_csv_header(input) : zeno::load_config(input);
    if (name != "run" && name != "rerun") cfg.experiment = zeno::parse_experiment(name);
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    try {
      cfg.validate();
    } catch (const std::invalid_argument& e) {
      throw zeno::ConfigError(e.what());
    }
    for (const auto& path : zeno::run_experiment(cfg, jobs)) {
      if (!quiet) std::cout << path.string() << '\n';
    }
  } catch (const zeno::ConfigError& e) {
    std::cerr << "config error: " << input << ": " << e.what() << '\n';
    return kExitConfig;
  } catch (const zeno::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
