// Copyright 2026 The optosqueeze Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// simulate: command-line front end for scenario files.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "optosqueeze/errors.hpp"
#include "optosqueeze/scenario.hpp"

using namespace optosqueeze;

namespace {

// "squeezed:r=1,n=0" -> StateSpec
StateSpec parse_state_flag(const std::string& text) {
  const auto colon = text.find(':');
  const std::string kind = text.substr(0, colon);
  if (kind != "squeezed") throw ConfigError("--state must look like squeezed:r=<r>,n=<n>");
  double r = 0.0;
  int n = 0;
  if (colon != std::string::npos) {
    std::stringstream fields(text.substr(colon + 1));
    std::string item;
    while (std::getline(fields, item, ',')) {
      const auto eq = item.find('=');
      if (eq == std::string::npos) throw ConfigError("--state field '" + item + "' is not key=value");
      const std::string k = item.substr(0, eq);
      const std::string v = item.substr(eq + 1);
      if (k == "r") r = std::stod(v);
      else if (k == "n") n = std::stoi(v);
      else throw ConfigError("--state: unknown field '" + k + "'");
    }
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "squeezed %.17g %d", r, n);
  return StateSpec::parse(buf);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"optosqueeze scenario runner"};
  app.require_subcommand(1);

  std::string cfg_path;
  std::vector<std::string> overrides;
  std::string output;
  bool quiet = false;
  auto* run = app.add_subcommand("run", "Run a scenario file and write its CSV");
  run->add_option("config", cfg_path, "Scenario file")->required();
  run->add_option("--set", overrides, "Override a key (key=value); repeatable");
  run->add_option("-o,--output", output, "Override the output path");
  run->add_flag("-q,--quiet", quiet, "Do not echo the resolved configuration");

  std::string validate_path;
  std::vector<std::string> validate_overrides;
  auto* validate = app.add_subcommand("validate", "Check a scenario file without running it");
  validate->add_option("config", validate_path, "Scenario file")->required();
  validate->add_option("--set", validate_overrides, "Override a key (key=value); repeatable");

  std::string state_text;
  int n_b = 80;
  auto* info = app.add_subcommand("state-info", "Compare analytic and numeric observables of a squeezed state");
  info->add_option("--state", state_text, "squeezed:r=<r>,n=<n>")->required();
  info->add_option("--N_b", n_b, "Fock truncation")->check(CLI::Range(2, 100000));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  try {
    if (*run) {
      if (!output.empty()) overrides.push_back("output=" + output);
      const ScenarioConfig cfg = load_config(cfg_path, overrides);
      if (!quiet) std::cerr << render_config(cfg);
      const RunOutcome out = run_scenario(cfg, std::cerr);
      if (out.exit_code != kExitOk) {
        std::cerr << "error: " << out.message << "\n";
        return out.exit_code;
      }
      if (cfg.output.empty() && !out.csv.empty()) std::cout << out.csv;
      if (!cfg.output.empty()) std::cerr << "wrote " << cfg.output << "\n";
      if (cfg.mode == RunMode::StateInfo) std::cout << out.message;
      return kExitOk;
    }
    if (*validate) {
      const ScenarioConfig cfg = load_config(validate_path, validate_overrides);
      const ValidationReport rep = validate_scenario(cfg);
      for (const auto& line : rep.lines) std::cout << line << "\n";
      return kExitOk;
    }
    if (*info) {
      std::cout << state_info(parse_state_flag(state_text), n_b);
      return kExitOk;
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitOk;
}
