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


#ifndef OPTOSQUEEZE_EVOLVE_HPP
#define OPTOSQUEEZE_EVOLVE_HPP

#include <functional>
#include <string>
#include <vector>

#include "optosqueeze/fock.hpp"
#include "optosqueeze/liouvillian.hpp"
#include "optosqueeze/model.hpp"

namespace optosqueeze {

inline constexpr double kDefaultEvolveRtol = 1e-8;
inline constexpr double kDefaultEvolutionLeakageCap = 1e-4;

enum class Integrator {
  Auto,     // TR-BDF2 for static generators, DOPRI5 otherwise
  Dopri5,   // explicit, adaptive
  TrBdf2,   // L-stable, adaptive; static generators only
  Floquet,  // one-period propagator raised to powers; periodic generators only
};

Integrator parse_integrator(const std::string& name);
std::string to_string(Integrator m);

struct EvolveOptions {
  double rtol = kDefaultEvolveRtol;
  double atol = 1e-10;
  double leakage_cap = kDefaultEvolutionLeakageCap;
  Integrator method = Integrator::Auto;
  double t0 = 0.0;            // time of rho0
  double initial_step = 0.0;  // 0: automatic
  double max_step = 0.0;      // 0: unbounded
  long max_steps = 100000000;
  bool keep_states = true;
};

using SampleCallback = std::function<void(double t, const DensityMatrix& rho)>;

struct EvolutionResult {
  std::vector<double> times;
  std::vector<DensityMatrix> states;  // empty unless keep_states
  // Largest top-level Fock population over all samples and modes.
  double leakage = 0.0;
  bool leakage_flagged = false;
  std::string advisory;
  double max_trace_error = 0.0;
  double max_hermiticity_correction = 0.0;
  long steps = 0;
  long rejected = 0;
  long factorizations = 0;
};

// Samples rho(t) at every t in t_grid (strictly increasing, >= opts.t0).
// Each sample is re-Hermitized and renormalized after the drift is recorded.
// Integrator breakdown raises NumericalError; leakage only flags the result.
EvolutionResult evolve(const TimeDependentLiouvillian& l, const DensityMatrix& rho0, const std::vector<double>& t_grid,
                       const EvolveOptions& opts = {}, const SampleCallback& on_sample = {});
EvolutionResult evolve(const Liouvillian& l, const DensityMatrix& rho0, const std::vector<double>& t_grid,
                       const EvolveOptions& opts = {}, const SampleCallback& on_sample = {});
EvolutionResult evolve(const HamiltonianSpec& h, const std::vector<CollapseOp>& collapse, const DensityMatrix& rho0,
                       const std::vector<double>& t_grid, const EvolveOptions& opts = {},
                       const SampleCallback& on_sample = {});

// n points from t0 to t1 inclusive.
std::vector<double> linear_grid(double t0, double t1, int n);
// 0 followed by n log-spaced points from t_min to t_max.
std::vector<double> log_grid(double t_min, double t_max, int n);

}  // namespace optosqueeze

#endif  // OPTOSQUEEZE_EVOLVE_HPP
