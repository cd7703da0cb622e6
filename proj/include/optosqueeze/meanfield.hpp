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


#ifndef OPTOSQUEEZE_MEANFIELD_HPP
#define OPTOSQUEEZE_MEANFIELD_HPP

// Classical mean-field layer: the coherent optical amplitude driven by three
// tones and the parametrically modulated mechanical mean displacement sigma.

#include <complex>
#include <vector>

#include "optosqueeze/stability.hpp"

namespace optosqueeze {

inline constexpr double kMatchTolerance = 1e-6;
inline constexpr double kMeanfieldRtol = 1e-10;

struct DriveConfig {
  // Real, nonnegative amplitudes with the phases already absorbed.
  double E_plus = 0.0;
  double E_zero = 0.0;
  double E_minus = 0.0;
  double Delta = 0.0;
  double Omega = 0.0;
  double epsilon = 0.0;  // |epsilon| < 1
  double kappa = 1.0;
  double omega_m = 1.0;
  double g = 0.0;

  void validate() const;
};

struct EffectiveCoeffs {
  double delta = 0.0;
  double lambda = 0.0;
  double mu = 0.0;
  double omega_m_eff = 0.0;  // omega_m sqrt(1 + 2 delta)
};

// Frame rotating at the cavity frequency, amplitudes real:
//   A+ e^{-i Delta t} + A0 + A- e^{i Delta t},
// A+- = E+- / sqrt(kappa^2 + Delta^2), A0 = E0 / kappa.
std::complex<double> alpha0(double t, const DriveConfig& cfg);

// Throws "effective frequency imaginary" when 1 + 2 delta <= 0.
EffectiveCoeffs effective_coeffs(const DriveConfig& cfg);

// Total stiffness bracket 1 + 2 delta + eps cos(Omega t) + 2 lambda cos(Delta t) + 2 mu cos(2 Delta t).
double stiffness(double t, const DriveConfig& cfg, const EffectiveCoeffs& c);

struct MatchingReport {
  double Omega_required = 0.0;    // 2 omega_m_eff
  double Delta_required = 0.0;    // 2 omega_m_eff
  double epsilon_required = 0.0;  // -2 lambda
  // Relative residuals of the supplied configuration.
  double residual_Omega = 0.0;
  double residual_Delta = 0.0;
  double residual_epsilon = 0.0;
  bool matched = false;  // every residual <= 1e-6
};

MatchingReport matching_conditions(const DriveConfig& cfg);

// Sets Delta = Omega = 2 omega_m_eff and epsilon = -2 lambda. omega_m_eff
// itself depends on Delta, so the condition is solved by fixed-point
// iteration.
DriveConfig matched_config(DriveConfig cfg);

struct SigmaTrajectory {
  std::vector<double> t;
  std::vector<double> sigma;
  std::vector<double> sigmadot;
};

// sigma'' = -omega_m^2 [stiffness] sigma - gamma sigma', sampled at
// n_samples uniform points on [0, t_final]. Integrator failure raises
// NumericalError("stiff/unstable trajectory").
SigmaTrajectory sigma_evolve(const DriveConfig& cfg, double sigma0, double sigmadot0, double t_final,
                             double gamma, int n_samples = 1001);

enum class Growth { Decaying, Growing, Undetermined };

struct GrowthResult {
  Growth verdict = Growth::Undetermined;
  // Mean log growth of the amplitude per modulation period.
  double log_rate = 0.0;
  int periods = 0;
};

// Integrates period by period (period 2 pi / Omega, or 2 pi / omega_m_eff
// without modulation) and compares the amplitude envelope at the end with
// the start. Stops early once the amplitude has grown or shrunk by 1e80.
GrowthResult sigma_growth(const DriveConfig& cfg, double gamma, int periods = 20000);

// Mathieu problem left at the operating point once the Delta tones cancel:
// stiffness 1 + 2 delta + 2 mu cos(2 Delta t), i.e. Omega' = 2 Delta and
// eps = 2 mu omega_m^2.
MathieuParams operating_point_mathieu(const DriveConfig& cfg, double gamma);

}  // namespace optosqueeze

#endif  // OPTOSQUEEZE_MEANFIELD_HPP
