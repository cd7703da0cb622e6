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


#include <doctest.h>

#include <cmath>
#include <numbers>

#include "optosqueeze/meanfield.hpp"

using namespace optosqueeze;

namespace {

DriveConfig drive() {
  DriveConfig c;
  c.E_plus = 30.0;
  c.E_zero = 4.0;
  c.E_minus = 50.0;
  c.Delta = 2.0;
  c.kappa = 1.0;
  c.omega_m = 1.0;
  c.g = 1e-5;
  c.Omega = 2.0;
  c.epsilon = 0.0;
  return c;
}

}  // namespace

TEST_CASE("Fourier components of the intracavity intensity") {
  const auto cfg = drive();
  const auto c = effective_coeffs(cfg);
  // DFT of (g/omega_m)|alpha0|^2 over one drive period
  const int n = 256;
  const double T = 2 * std::numbers::pi / cfg.Delta;
  double c0 = 0, c1 = 0, c2 = 0;
  for (int k = 0; k < n; ++k) {
    const double t = T * k / n;
    const double v = cfg.g / cfg.omega_m * std::norm(alpha0(t, cfg));
    c0 += v / n;
    c1 += 2 * v * std::cos(cfg.Delta * t) / n;
    c2 += 2 * v * std::cos(2 * cfg.Delta * t) / n;
  }
  CHECK(c.delta == doctest::Approx(c0).epsilon(1e-12));
  CHECK(c.lambda == doctest::Approx(c1).epsilon(1e-12));
  CHECK(c.mu == doctest::Approx(c2).epsilon(1e-12));
  CHECK(c.omega_m_eff == doctest::Approx(std::sqrt(1 + 2 * c0)));
  for (double t : {0.0, 0.4, 2.2}) {
    const double direct = 1.0 + 2.0 * cfg.g / cfg.omega_m * std::norm(alpha0(t, cfg));
    CHECK(stiffness(t, cfg, c) == doctest::Approx(direct).epsilon(1e-12));
  }
}

TEST_CASE("matched configuration satisfies every condition") {
  const auto m = matched_config(drive());
  const auto rep = matching_conditions(m);
  CHECK(rep.matched);
  CHECK(m.Omega == doctest::Approx(2 * effective_coeffs(m).omega_m_eff).epsilon(1e-12));
  CHECK(m.epsilon == doctest::Approx(-2 * effective_coeffs(m).lambda).epsilon(1e-12));
  auto off = m;
  off.epsilon *= 1.01;
  const auto bad = matching_conditions(off);
  CHECK(!bad.matched);
  CHECK(bad.residual_epsilon == doctest::Approx(0.01).epsilon(1e-6));
}

TEST_CASE("single-tone sigma equation agrees with the Floquet verdict") {
  DriveConfig cfg;
  cfg.omega_m = 1.0;
  cfg.Delta = 1.0;
  cfg.g = 0.0;
  // parametric resonance: Omega = 2 omega, inside the first tongue
  cfg.Omega = 2.0;
  cfg.epsilon = 0.2;
  const auto grow = sigma_growth(cfg, 0.0, 400);
  CHECK(grow.verdict == Growth::Growing);
  CHECK(classify(to_mathieu(1.0, 2.0, 0.2, 0.0)).verdict == Verdict::Unstable);
  cfg.Omega = 4.0;
  cfg.epsilon = 0.1;
  cfg.Delta = 2.0;
  const auto calm = sigma_growth(cfg, 0.05, 400);
  CHECK(calm.verdict == Growth::Decaying);
  CHECK(classify(to_mathieu(1.0, 4.0, 0.1, 0.05)).verdict == Verdict::Stable);
}

TEST_CASE("damped free oscillation") {
  DriveConfig cfg;
  cfg.omega_m = 1.0;
  cfg.Delta = 1.0;
  cfg.Omega = 1.0;
  const double gam = 0.1;
  const auto tr = sigma_evolve(cfg, 1.0, 0.0, 10.0, gam, 11);
  const double wd = std::sqrt(1 - gam * gam / 4);
  for (std::size_t k = 0; k < tr.t.size(); ++k) {
    const double t = tr.t[k];
    const double ref = std::exp(-gam * t / 2) * (std::cos(wd * t) + gam / (2 * wd) * std::sin(wd * t));
    CHECK(tr.sigma[k] == doctest::Approx(ref).epsilon(1e-7));
  }
}

TEST_CASE("operating point with no drive is the bare oscillator") {
  DriveConfig cfg;
  cfg.omega_m = 1.0;
  cfg.Delta = 1.0;
  cfg.Omega = 2.0;
  const auto p = operating_point_mathieu(cfg, 0.0);
  CHECK(p.omega_R2 == doctest::Approx(1.0));
  CHECK(p.eps_tilde == doctest::Approx(0.0));
}
