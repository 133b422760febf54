// speedlab run <config.json> | validate <config.json> | demo <name>
#include "speedlab/errors.hpp"
#include "speedlab/scenario.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

int run(const speedlab::ScenarioConfig& config, const speedlab::RunSettings& settings, bool quiet) {
  const speedlab::ScenarioOutcome outcome = speedlab::run_scenario(config, settings);
  if (!quiet) {
    std::cerr << "report: " << (config.output / "report.json").string() << " (exit " << outcome.exit_code << ")\n";
    for (const auto& e : outcome.report["status"]["errors"]) {
      std::cerr << "  " << e["task"].get<std::string>() << ": " << e["type"].get<std::string>() << ": "
                << e["message"].get<std::string>() << '\n';
    }
  }
  return outcome.exit_code;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spreading speeds of periodic competition systems"};
  app.require_subcommand(1);

  bool refine = false;
  int jobs = 1;
  bool quiet = false;
  std::string path;
  std::string demo;
  std::string out_dir;
  app.add_flag("--refine", refine, "Richardson study on the doubled lattice");
  app.add_option("--jobs", jobs, "Worker cap for independent tasks")->check(CLI::PositiveNumber);
  app.add_flag("--quiet", quiet, "Suppress progress output");

  CLI::App* run_cmd = app.add_subcommand("run", "Run a scenario config");
  run_cmd->add_option("config", path, "Config JSON")->required();
  CLI::App* validate_cmd = app.add_subcommand("validate", "Validate a scenario config");
  validate_cmd->add_option("config", path, "Config JSON")->required();
  CLI::App* demo_cmd = app.add_subcommand("demo", "Run a shipped scenario");
  demo_cmd->add_option("name", demo, "Demo name")->required()->check(CLI::IsMember(speedlab::demo_names()));
  demo_cmd->add_option("--out", out_dir, "Output directory");

  CLI11_PARSE(app, argc, argv);

  speedlab::RunSettings settings;
  settings.refine = refine;
  settings.jobs = jobs;
  if (!quiet) settings.log = [](const std::string& msg) { std::cerr << msg << '\n'; };

  try {
    if (*validate_cmd) {
      const speedlab::ScenarioConfig config = speedlab::load_config(path);
      if (!quiet) {
        std::cout << "valid; tasks:";
        for (const auto& t : config.tasks) std::cout << ' ' << t;
        std::cout << '\n';
      }
      return 0;
    }
    if (*run_cmd) return run(speedlab::load_config(path), settings, quiet);
    nlohmann::json cfg = speedlab::demo_config(demo);
    if (!out_dir.empty()) cfg["output"] = out_dir;
    return run(speedlab::parse_config(cfg), settings, quiet);
  } catch (const speedlab::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return speedlab::exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
