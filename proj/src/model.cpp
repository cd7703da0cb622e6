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


#include "optosqueeze/model.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace optosqueeze {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

double float_gcd(double a, double b, double tol) {
  while (b > tol) {
    const double t = std::fmod(a, b);
    a = b;
    b = (t > b - tol) ? 0.0 : t;
  }
  return a;
}

void push_term(std::vector<TimeTerm>& out, FockOperator op, double nu) {
  if (op.data().nonZeros() == 0) return;
  out.push_back({std::move(op), nu});
}

}  // namespace

void SystemParams::validate() const {
  require(std::isfinite(r) && r >= 0.0, "r must be finite and >= 0");
  require(std::isfinite(g_minus) && g_minus > 0.0, "g_minus must be > 0");
  require(std::isfinite(gamma) && gamma >= 0.0, "gamma must be >= 0");
  require(std::isfinite(nbar_m) && nbar_m >= 0.0, "nbar_m must be >= 0");
  require(omega_m_eff_over_kappa > 0.0 && !std::isnan(omega_m_eff_over_kappa),
          "omega_m_eff_over_kappa must be > 0 (inf for RWA)");
  require(N_a >= 2, "N_a must be >= 2");
  require(N_b >= 3, "N_b must be >= 3");
  require(std::isfinite(nr_mech_amplitude), "nr_mech_amplitude must be finite");
  require(coupling() > 0.0, "effective coupling G = g_- - g_+ must be positive");
}

double SystemParams::g_zero() const { return g_minus * std::tanh(r); }

double SystemParams::g_plus() const {
  const double t = std::tanh(r);
  return g_minus * t * t;
}

double SystemParams::coupling() const { return g_minus - g_plus(); }

double SystemParams::engineered_rate() const {
  const double g = coupling();
  return g * g;
}

SpaceSignature SystemParams::full_signature() const { return SpaceSignature({N_a, N_b}, {"a", "b"}); }

SpaceSignature SystemParams::mechanical_signature() const { return SpaceSignature::single(N_b, "b"); }

FockOperator HamiltonianSpec::at(double t) const {
  FockOperator h = static_part;
  for (const auto& term : time_terms) {
    const cplx ph = std::polar(1.0, term.nu * t);
    h += ph * term.op + std::conj(ph) * term.op.adjoint();
  }
  return h;
}

double HamiltonianSpec::period() const {
  double base = 0.0;
  double largest = 0.0;
  for (const auto& term : time_terms) largest = std::max(largest, std::abs(term.nu));
  if (largest == 0.0) return 0.0;
  const double tol = 1e-9 * largest;
  for (const auto& term : time_terms) {
    const double w = std::abs(term.nu);
    if (w == 0.0) continue;
    base = base == 0.0 ? w : float_gcd(std::max(base, w), std::min(base, w), tol);
  }
  for (const auto& term : time_terms) {
    const double q = std::abs(term.nu) / base;
    if (std::abs(q - std::round(q)) > 1e-9 * std::max(1.0, q)) {
      throw std::invalid_argument("time-dependent frequencies are not commensurate");
    }
  }
  return 2.0 * std::numbers::pi / base;
}

FockOperator resonant_hamiltonian(const SystemParams& p) {
  p.validate();
  const auto sig = p.full_signature();
  const FockOperator a = annihilation(sig, 0);
  const FockOperator b = annihilation(sig, 1);
  const FockOperator ad = a.adjoint();
  const FockOperator bd = b.adjoint();
  const FockOperator id = FockOperator::identity(sig);
  const FockOperator inner = cplx(p.g_minus) * (b * b) + cplx(2.0 * p.g_zero()) * (bd * b) +
                             cplx(p.g_plus()) * (bd * bd) + cplx(p.g_zero()) * id;
  const FockOperator half = ad * inner;
  return half + half.adjoint();
}

FockOperator bogoliubov_hamiltonian(const SystemParams& p) {
  p.validate();
  const auto sig = p.full_signature();
  const FockOperator ad = creation(sig, 0);
  const FockOperator beta2 = bogoliubov_squared(sig, 1, p.squeeze());
  const FockOperator half = cplx(p.coupling()) * (ad * beta2);
  return half + half.adjoint();
}

HamiltonianSpec nonresonant_terms(const SystemParams& p) {
  p.validate();
  if (p.rwa()) throw std::invalid_argument("RWA mode has no NR terms");
  const double w = p.omega_m_eff_over_kappa;
  const auto sig = p.full_signature();
  const FockOperator ad = creation(sig, 0);
  const FockOperator b = annihilation(sig, 1);
  const FockOperator bd = b.adjoint();
  const FockOperator id = FockOperator::identity(sig);
  const FockOperator sym = cplx(2.0) * (bd * b) + id;  // 2 b^dag b + 1
  const FockOperator b2 = b * b;
  const FockOperator bd2 = bd * bd;

  HamiltonianSpec spec;
  spec.static_part = FockOperator::zero(sig);
  auto& terms = spec.time_terms;
  const double gm = p.g_minus;
  const double g0 = p.g_zero();
  const double gp = p.g_plus();
  push_term(terms, cplx(gp) * (ad * sym), -2.0 * w);
  push_term(terms, cplx(gm) * (ad * sym), 2.0 * w);
  push_term(terms, cplx(gp) * (ad * b2), -4.0 * w);
  push_term(terms, cplx(g0) * (ad * b2), -2.0 * w);
  push_term(terms, cplx(g0) * (ad * bd2), 2.0 * w);
  push_term(terms, cplx(gm) * (ad * bd2), 4.0 * w);
  if (!p.cancel_4wm && p.nr_mech_amplitude != 0.0) {
    // C cos(4wt) (b e^{-iwt} + b^dag e^{iwt})^2
    const cplx half_c = 0.5 * p.nr_mech_amplitude;
    push_term(terms, half_c * b2, 2.0 * w);
    push_term(terms, half_c * b2, -6.0 * w);
    push_term(terms, half_c * sym, 4.0 * w);
  }
  return spec;
}

HamiltonianSpec interaction_hamiltonian(const SystemParams& p) {
  HamiltonianSpec spec;
  if (!p.rwa()) spec = nonresonant_terms(p);
  spec.static_part = resonant_hamiltonian(p);
  return spec;
}

std::vector<CollapseOp> collapse_ops(const SystemParams& p) {
  p.validate();
  const auto sig = p.full_signature();
  std::vector<CollapseOp> out;
  out.push_back({annihilation(sig, 0), 1.0, "a"});
  if (p.gamma > 0.0) {
    out.push_back({annihilation(sig, 1), (p.nbar_m + 1.0) * p.gamma, "b"});
    if (p.nbar_m > 0.0) out.push_back({creation(sig, 1), p.nbar_m * p.gamma, "b_dag"});
  }
  return out;
}

std::vector<CollapseOp> effective_collapse_ops(const SystemParams& p) {
  p.validate();
  const auto sig = p.mechanical_signature();
  std::vector<CollapseOp> out;
  if (p.gamma > 0.0) {
    out.push_back({annihilation(sig, 0), (p.nbar_m + 1.0) * p.gamma, "b"});
    if (p.nbar_m > 0.0) out.push_back({creation(sig, 0), p.nbar_m * p.gamma, "b_dag"});
  }
  out.push_back({bogoliubov_squared(sig, 0, p.squeeze()), p.engineered_rate(), "beta2"});
  return out;
}

DriveCouplings couplings_from_drives(double g_prime, double E_plus, double E_zero, double E_minus,
                                     double kappa, double Delta) {
  require(kappa > 0.0, "kappa must be > 0");
  return {g_prime * E_plus / cplx(kappa, Delta), cplx(g_prime * E_zero / kappa),
          g_prime * E_minus / cplx(kappa, -Delta)};
}

DriveAmplitudes drives_for_couplings(double g_prime, double g_minus, double r, double kappa, double Delta) {
  require(g_prime > 0.0, "g' must be > 0");
  require(kappa > 0.0, "kappa must be > 0");
  const double t = std::tanh(r);
  const double side = std::hypot(kappa, Delta);
  return {g_minus * t * t * side / g_prime, g_minus * t * kappa / g_prime, g_minus * side / g_prime};
}

}  // namespace optosqueeze
