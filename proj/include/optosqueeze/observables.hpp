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


#ifndef OPTOSQUEEZE_OBSERVABLES_HPP
#define OPTOSQUEEZE_OBSERVABLES_HPP

#include "optosqueeze/fock.hpp"
#include "optosqueeze/states.hpp"

namespace optosqueeze {

inline constexpr double kG2MeanFloor = 1e-10;

// sqrt(<psi|rho|psi>), clamped at zero.
double fidelity(const DensityMatrix& rho, const Vector& psi);
double fidelity(const DensityMatrix& rho, const StateVector& psi);

double purity(const DensityMatrix& rho);

// Variances of X1 = (b e^{-i theta/2} + b^dag e^{i theta/2}) / 2 and of X2,
// the same quadrature rotated by pi. Computed from normal-ordered moments, so
// truncation does not bias them. rho must be single-mode.
VariancePair quadrature_variances(const DensityMatrix& rho, double theta = 0.0);

struct QuadratureOptimum {
  double theta = 0.0;
  double var_min = 0.0;
  double var_max = 0.0;
};
// Phase minimizing var X1 (closed form from the second moments).
QuadratureOptimum optimal_quadrature(const DensityMatrix& rho);

// -10 log10(4 var); positive values are below vacuum noise.
double squeezing_db(double var_x1);

// <b^dag^2 b^2> / <b^dag b>^2. Throws "g2 undefined" when <n> < 1e-10.
double g2(const DensityMatrix& rho);
double mean_n(const DensityMatrix& rho);
double parity(const DensityMatrix& rho);

// Observables at one time sample. rho may be single-mode (mechanics) or
// two-mode (optics, mechanics); the mechanical reduced state is used.
struct ObservableRecord {
  double t = 0.0;
  double fidelity = 0.0;
  double purity = 0.0;
  double var_x1 = 0.0;
  double var_x2 = 0.0;
  double squeezing_db = 0.0;
  double opt_theta = 0.0;
  double opt_var = 0.0;
  double opt_squeezing_db = 0.0;
  double g2 = 0.0;  // NaN when undefined
  double mean_n = 0.0;
  double parity = 0.0;
};

// Reduced mechanical state: rho itself for one mode, partial trace over mode 0 for two.
DensityMatrix mechanical_state(const DensityMatrix& rho);

// target may be empty (fidelity left at zero).
ObservableRecord observe(double t, const DensityMatrix& rho, const Vector& target);

}  // namespace optosqueeze

#endif  // OPTOSQUEEZE_OBSERVABLES_HPP
