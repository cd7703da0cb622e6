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


#ifndef OPTOSQUEEZE_SCENARIO_HPP
#define OPTOSQUEEZE_SCENARIO_HPP

// Declarative run descriptions. A config file is a flat list of
//   key = value
// lines; '#' starts a comment. Unknown keys are rejected.

#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "optosqueeze/evolve.hpp"
#include "optosqueeze/meanfield.hpp"
#include "optosqueeze/model.hpp"
#include "optosqueeze/stability.hpp"

namespace optosqueeze {

class ConfigError : public std::invalid_argument {
 public:
  explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

enum class RunMode { Evolve, Steady, Sweep, Stability, StateInfo };
enum class Engine { Full, Effective, FullNonRwa };

std::string to_string(RunMode m);
std::string to_string(Engine e);

// "fock <n_a> <n_b>", "squeezed <r> <n>", "auto" (target only: squeezed at
// the run's r with the parity of the initial phonon number) or "none".
struct StateSpec {
  enum class Kind { Fock, Squeezed, Auto, None };
  Kind kind = Kind::None;
  int n_a = 0;
  int n_b = 0;
  double r = 0.0;
  int n = 0;

  static StateSpec parse(const std::string& text);
  std::string text() const;
};

// sweep.<var> = <from> <to> <points> [linear|log]
// sweep.<var> = values <v1> <v2> ...
struct SweepAxis {
  std::string var;
  std::vector<double> values;
  std::string text;
};

struct StabilitySpec {
  Range omega_R{0.0, 2.5};
  Range eps_tilde{0.0, 1.0};
  int nx = 100;
  int ny = 100;
  double gamma_tilde = 0.0;
};

struct MeanFieldSpec {
  bool present = false;
  DriveConfig drive;
  double gamma = 0.0;
  bool match = false;  // overwrite Delta, Omega, epsilon with the matched values
};

struct ScenarioConfig {
  RunMode mode = RunMode::Evolve;
  Engine engine = Engine::Effective;
  SystemParams params;
  StateSpec initial;
  StateSpec target;
  double t_final = 0.0;
  int n_samples = 101;
  bool log_time = false;
  double t_min = 1.0;
  EvolveOptions evolve;
  bool allow_leakage = false;
  bool allow_degenerate = false;
  std::string output;
  long seed = 0;
  std::vector<SweepAxis> sweeps;
  StabilitySpec stability;
  MeanFieldSpec meanfield;
  StateSpec state;  // state-info

  // Every schema key with its resolved value, in schema order. Rendering
  // these as a config reproduces the run.
  std::vector<std::pair<std::string, std::string>> resolved;
};

// Parses and validates. Throws ConfigError with the offending key.
ScenarioConfig parse_config(const std::string& text, const std::string& origin = "<config>");
ScenarioConfig load_config(const std::string& path, const std::vector<std::string>& overrides = {});

// Config text of the resolved keys (the CSV header without the "# " prefix).
std::string render_config(const ScenarioConfig& cfg);

// Physical model at one sweep point.
SystemParams params_at(const ScenarioConfig& cfg, const std::vector<double>& sweep_point);
// Outer product of sweep axes, first axis slowest.
std::vector<std::vector<double>> sweep_points(const ScenarioConfig& cfg);

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitNumerical = 3;

struct RunOutcome {
  int exit_code = kExitOk;
  std::string message;
  std::vector<std::string> advisories;
  std::string csv;  // rendered output (also written to cfg.output when set)
};

// Executes the scenario. Validation problems give exit 2, numerical
// failures (including flagged leakage or degeneracy without the override)
// give exit 3; neither writes output.
RunOutcome run_scenario(const ScenarioConfig& cfg, std::ostream& log);

// Schema plus physics checks, without running anything.
struct ValidationReport {
  bool ok = true;
  std::vector<std::string> lines;
};
ValidationReport validate_scenario(const ScenarioConfig& cfg);

// Analytic and numeric observables of "squeezed r n" on N_b levels.
std::string state_info(const StateSpec& state, int N_b);

}  // namespace optosqueeze

#endif  // OPTOSQUEEZE_SCENARIO_HPP
