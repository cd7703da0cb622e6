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


#include "optosqueeze/meanfield.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <boost/numeric/odeint.hpp>

#include "optosqueeze/errors.hpp"

namespace optosqueeze {

namespace odeint = boost::numeric::odeint;

namespace {

using State = std::array<double, 2>;

double rel_residual(double value, double required) {
  const double scale = std::abs(required);
  const double diff = std::abs(value - required);
  return scale > 0.0 ? diff / scale : diff;
}

struct SigmaRhs {
  DriveConfig cfg;
  EffectiveCoeffs c;
  double gamma;
  void operator()(const State& y, State& dy, double t) const {
    dy[0] = y[1];
    dy[1] = -cfg.omega_m * cfg.omega_m * stiffness(t, cfg, c) * y[0] - gamma * y[1];
  }
};

}  // namespace

void DriveConfig::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(what);
  };
  require(E_plus >= 0.0 && E_zero >= 0.0 && E_minus >= 0.0, "drive amplitudes must be >= 0");
  require(std::abs(epsilon) < 1.0, "modulation depth must satisfy |epsilon| < 1");
  require(kappa > 0.0, "kappa must be > 0");
  require(omega_m > 0.0, "omega_m must be > 0");
  require(std::isfinite(Delta) && std::isfinite(Omega) && std::isfinite(g), "drive parameters must be finite");
}

std::complex<double> alpha0(double t, const DriveConfig& cfg) {
  const double side = std::hypot(cfg.kappa, cfg.Delta);
  const double ap = cfg.E_plus / side;
  const double a0 = cfg.E_zero / cfg.kappa;
  const double am = cfg.E_minus / side;
  return ap * std::polar(1.0, -cfg.Delta * t) + a0 + am * std::polar(1.0, cfg.Delta * t);
}

EffectiveCoeffs effective_coeffs(const DriveConfig& cfg) {
  cfg.validate();
  const double side2 = cfg.kappa * cfg.kappa + cfg.Delta * cfg.Delta;
  const double k2 = cfg.kappa * cfg.kappa;
  const double ratio = cfg.g / cfg.omega_m;
  EffectiveCoeffs c;
  c.delta = ratio * (cfg.E_plus * cfg.E_plus / side2 + cfg.E_zero * cfg.E_zero / k2 +
                     cfg.E_minus * cfg.E_minus / side2);
  c.lambda = 2.0 * ratio * (cfg.E_zero / cfg.kappa) * ((cfg.E_plus + cfg.E_minus) / std::sqrt(side2));
  c.mu = 2.0 * ratio * cfg.E_plus * cfg.E_minus / side2;
  if (!(1.0 + 2.0 * c.delta > 0.0)) throw std::invalid_argument("effective frequency imaginary");
  c.omega_m_eff = cfg.omega_m * std::sqrt(1.0 + 2.0 * c.delta);
  return c;
}

double stiffness(double t, const DriveConfig& cfg, const EffectiveCoeffs& c) {
  return 1.0 + 2.0 * c.delta + cfg.epsilon * std::cos(cfg.Omega * t) + 2.0 * c.lambda * std::cos(cfg.Delta * t) +
         2.0 * c.mu * std::cos(2.0 * cfg.Delta * t);
}

MatchingReport matching_conditions(const DriveConfig& cfg) {
  const EffectiveCoeffs c = effective_coeffs(cfg);
  MatchingReport rep;
  rep.Omega_required = 2.0 * c.omega_m_eff;
  rep.Delta_required = 2.0 * c.omega_m_eff;
  rep.epsilon_required = -2.0 * c.lambda;
  rep.residual_Omega = rel_residual(cfg.Omega, rep.Omega_required);
  rep.residual_Delta = rel_residual(cfg.Delta, rep.Delta_required);
  rep.residual_epsilon = rel_residual(cfg.epsilon, rep.epsilon_required);
  // a hair of slack so a residual of exactly 1e-6 counts as matched
  const double tol = kMatchTolerance * (1.0 + 1e-9);
  rep.matched = rep.residual_Omega <= tol && rep.residual_Delta <= tol && rep.residual_epsilon <= tol;
  return rep;
}

DriveConfig matched_config(DriveConfig cfg) {
  for (int it = 0; it < 200; ++it) {
    const double next = 2.0 * effective_coeffs(cfg).omega_m_eff;
    const bool done = std::abs(next - cfg.Delta) <= 1e-15 * std::abs(next);
    cfg.Delta = next;
    if (done) break;
  }
  const EffectiveCoeffs c = effective_coeffs(cfg);
  cfg.Omega = cfg.Delta;
  cfg.epsilon = -2.0 * c.lambda;
  cfg.validate();
  return cfg;
}

SigmaTrajectory sigma_evolve(const DriveConfig& cfg, double sigma0, double sigmadot0, double t_final,
                             double gamma, int n_samples) {
  if (!(gamma >= 0.0)) throw std::invalid_argument("gamma must be >= 0");
  if (!(t_final > 0.0)) throw std::invalid_argument("t_final must be > 0");
  if (n_samples < 2) throw std::invalid_argument("need at least two samples");
  const SigmaRhs rhs{cfg, effective_coeffs(cfg), gamma};

  std::vector<double> times(static_cast<std::size_t>(n_samples));
  for (int k = 0; k < n_samples; ++k) times[static_cast<std::size_t>(k)] = t_final * k / (n_samples - 1);
  times.back() = t_final;

  SigmaTrajectory out;
  out.t.reserve(times.size());
  out.sigma.reserve(times.size());
  out.sigmadot.reserve(times.size());
  State y = {sigma0, sigmadot0};
  auto stepper = odeint::make_controlled<odeint::runge_kutta_dopri5<State>>(kMeanfieldRtol * 1e-2, kMeanfieldRtol);
  auto observer = [&](const State& s, double t) {
    if (!std::isfinite(s[0]) || !std::isfinite(s[1])) throw NumericalError("stiff/unstable trajectory");
    out.t.push_back(t);
    out.sigma.push_back(s[0]);
    out.sigmadot.push_back(s[1]);
  };
  try {
    const double dt0 = std::min(1e-2, t_final / (n_samples - 1)) / std::max(1.0, cfg.omega_m);
    odeint::integrate_times(stepper, rhs, y, times.begin(), times.end(), dt0, observer,
                            odeint::max_step_checker(1000000));
  } catch (const NumericalError&) {
    throw;
  } catch (const std::exception&) {
    throw NumericalError("stiff/unstable trajectory");
  }
  return out;
}

GrowthResult sigma_growth(const DriveConfig& cfg, double gamma, int periods) {
  if (!(gamma >= 0.0)) throw std::invalid_argument("gamma must be >= 0");
  if (periods < 10) throw std::invalid_argument("growth test needs at least 10 periods");
  const EffectiveCoeffs c = effective_coeffs(cfg);
  const SigmaRhs rhs{cfg, c, gamma};
  const double base = cfg.Omega > 0.0 ? cfg.Omega : c.omega_m_eff;
  const double period = 2.0 * std::numbers::pi / base;
  const double w = c.omega_m_eff;

  auto amplitude = [w](const State& s) { return std::hypot(s[0], s[1] / w); };
  State y = {1.0, 0.0};
  const double a0 = amplitude(y);
  const int window = std::max(1, periods / 10);
  double first_max = 0.0;
  std::vector<double> late(static_cast<std::size_t>(window), 0.0);

  GrowthResult out;
  auto stepper = odeint::make_controlled<odeint::runge_kutta_dopri5<State>>(kMeanfieldRtol * 1e-2, kMeanfieldRtol);
  double dt = period / 50.0;
  for (int p = 0; p < periods; ++p) {
    try {
      odeint::integrate_adaptive(stepper, rhs, y, p * period, (p + 1) * period, dt);
    } catch (const std::exception&) {
      throw NumericalError("stiff/unstable trajectory");
    }
    const double a = amplitude(y);
    if (!std::isfinite(a)) throw NumericalError("stiff/unstable trajectory");
    out.periods = p + 1;
    out.log_rate = std::log(a / a0) / (p + 1);
    if (a > 1e80 * a0) {
      out.verdict = Growth::Growing;
      return out;
    }
    if (a < 1e-80 * a0) {
      out.verdict = Growth::Decaying;
      return out;
    }
    if (p < window) first_max = std::max(first_max, a);
    late[static_cast<std::size_t>(p % window)] = a;
  }
  const double late_max = *std::max_element(late.begin(), late.end());
  const double ratio = late_max / first_max;
  if (ratio > 10.0) {
    out.verdict = Growth::Growing;
  } else if (ratio < 0.1) {
    out.verdict = Growth::Decaying;
  } else {
    out.verdict = Growth::Undetermined;
  }
  return out;
}

MathieuParams operating_point_mathieu(const DriveConfig& cfg, double gamma) {
  const EffectiveCoeffs c = effective_coeffs(cfg);
  return to_mathieu(c.omega_m_eff, 2.0 * cfg.Delta, 2.0 * c.mu * cfg.omega_m * cfg.omega_m, gamma);
}

}  // namespace optosqueeze
