#pragma once

#include "speedlab/errors.hpp"
#include "speedlab/frontsim.hpp"
#include "speedlab/system.hpp"
#include "speedlab/weinberger.hpp"

#include <json.hpp>

#include <filesystem>
#include <functional>
#include <string>
#include <vector>

namespace speedlab {

struct ScenarioConfig {
  ModelSpec model;
  int nt = 200;
  int nx = 64;
  // Resolved task list in execution order: orbit, eigen, speed, check,
  // weinberger, front.
  std::vector<std::string> tasks;
  std::filesystem::path output = "speedlab-out";
  std::vector<double> mu_grid;
  WeinbergerOptions weinberger;
  FrontOptions front;
  double discard_fraction = 0.3;
};

// Schema: top-level keys model, discretization, tasks, output, plus optional
// eigen, weinberger and front blocks. Unknown keys are rejected. Throws
// ValidationError (or ParseError for bad expressions).
ScenarioConfig parse_config(const nlohmann::json& config);
ScenarioConfig load_config(const std::filesystem::path& path);

struct RunSettings {
  bool refine = false;  // Richardson study on the doubled lattice
  int jobs = 1;         // worker cap for independent tasks
  std::function<void(const std::string&)> log;
};

struct ScenarioOutcome {
  int exit_code = 0;  // 0 done, 2 validation, 3 numerical, 4 guard abort
  nlohmann::json report;
};

// Runs the tasks, writes report.json and per-task CSVs into config.output.
// Errors are caught and reported; the function itself only throws when the
// output directory cannot be written.
ScenarioOutcome run_scenario(const ScenarioConfig& config, const RunSettings& settings = {});

std::vector<std::string> demo_names();

// Shipped configs; throws ValidationError for an unknown name.
nlohmann::json demo_config(const std::string& name);

int exit_code_for(const Error& e);

} // namespace speedlab
