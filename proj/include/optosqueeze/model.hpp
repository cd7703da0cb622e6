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


#ifndef OPTOSQUEEZE_MODEL_HPP
#define OPTOSQUEEZE_MODEL_HPP

// Hamiltonians and collapse operators of the driven quadratic optomechanical
// system, in units where the optical decay rate kappa = 1. Mode 0 is the
// optical mode a, mode 1 the mechanical mode b.

#include <limits>
#include <string>
#include <vector>

#include "optosqueeze/fock.hpp"
#include "optosqueeze/states.hpp"

namespace optosqueeze {

inline constexpr double kInfiniteSideband = std::numeric_limits<double>::infinity();

struct SystemParams {
  double r = 0.0;
  double g_minus = 0.01;
  double gamma = 0.0;
  double nbar_m = 0.0;
  // omega_m_eff / kappa; infinity selects the rotating-wave model.
  double omega_m_eff_over_kappa = kInfiniteSideband;
  int N_a = 4;
  int N_b = 40;
  // Extra 4 omega_m mechanical modulation cancelling the mechanical
  // nonresonant term. When false, that term is kept with amplitude
  // nr_mech_amplitude (the prefactor omega_m^2 mu / (2 omega_m_eff), kappa units).
  bool cancel_4wm = true;
  double nr_mech_amplitude = 0.0;

  // Throws std::invalid_argument on the first violated constraint.
  void validate() const;

  double g_zero() const;  // g_- tanh r
  double g_plus() const;  // g_- tanh^2 r
  double coupling() const;  // G = g_- - g_+
  double engineered_rate() const;  // G^2 / kappa
  bool rwa() const { return !(omega_m_eff_over_kappa < kInfiniteSideband); }
  SqueezeParam squeeze() const { return SqueezeParam(r); }

  SpaceSignature full_signature() const;
  SpaceSignature mechanical_signature() const;
};

// H(t) = static_part + sum_k (op_k e^{i nu_k t} + h.c.)
struct TimeTerm {
  FockOperator op;
  double nu = 0.0;
};

struct HamiltonianSpec {
  FockOperator static_part;
  std::vector<TimeTerm> time_terms;

  FockOperator at(double t) const;
  bool time_dependent() const { return !time_terms.empty(); }
  // Smallest T > 0 with every nu_k T a multiple of 2 pi, or 0 if static.
  // Frequencies must be integer multiples of a common base (checked to 1e-9).
  double period() const;
};

// a^dag (g_- b^2 + 2 g_0 b^dag b + g_+ b^dag^2 + g_0) + h.c.
FockOperator resonant_hamiltonian(const SystemParams& p);

// G (a^dag beta^2 + a beta^dag^2), with beta^2 exactly truncated.
FockOperator bogoliubov_hamiltonian(const SystemParams& p);

// Nonresonant terms in the interaction picture, frequencies in kappa units.
// Throws "RWA mode has no NR terms" for an infinite sideband ratio.
HamiltonianSpec nonresonant_terms(const SystemParams& p);

// Resonant part plus, away from the RWA limit, the nonresonant terms.
HamiltonianSpec interaction_hamiltonian(const SystemParams& p);

struct CollapseOp {
  FockOperator op;
  double rate = 0.0;
  std::string name;
};

// (a, 1), (b, (nbar+1) gamma), (b^dag, nbar gamma), zero-rate channels dropped.
std::vector<CollapseOp> collapse_ops(const SystemParams& p);

// Mechanical-only channels after eliminating the optics:
// (b, (nbar+1) gamma), (b^dag, nbar gamma), (beta^2, G^2/kappa).
std::vector<CollapseOp> effective_collapse_ops(const SystemParams& p);

// Coupling ladder from optical drive amplitudes:
// g_0 = g' E_0 / kappa, g_+- = g' E_+- / (kappa +- i Delta).
struct DriveCouplings {
  cplx g_plus;
  cplx g_zero;
  cplx g_minus;
};
DriveCouplings couplings_from_drives(double g_prime, double E_plus, double E_zero, double E_minus,
                                     double kappa, double Delta);

// Drive amplitudes (real, phases absorbed) realizing g_- and r for given
// g', kappa, Delta: the inverse of the magnitudes above.
struct DriveAmplitudes {
  double E_plus;
  double E_zero;
  double E_minus;
};
DriveAmplitudes drives_for_couplings(double g_prime, double g_minus, double r, double kappa, double Delta);

}  // namespace optosqueeze

#endif  // OPTOSQUEEZE_MODEL_HPP
