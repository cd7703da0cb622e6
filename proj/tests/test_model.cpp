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

#include "optosqueeze/model.hpp"
#include "optosqueeze/states.hpp"

using namespace optosqueeze;

namespace {

SystemParams params(double r, int na = 3, int nb = 40) {
  SystemParams p;
  p.r = r;
  p.N_a = na;
  p.N_b = nb;
  return p;
}

}  // namespace

TEST_CASE("coupling ladder") {
  const auto p = params(0.7);
  const double t = std::tanh(0.7);
  CHECK(p.g_zero() == doctest::Approx(0.01 * t));
  CHECK(p.g_plus() == doctest::Approx(0.01 * t * t));
  // G = g_- sech^2 r
  CHECK(p.coupling() == doctest::Approx(0.01 / std::pow(std::cosh(0.7), 2)));
  CHECK(p.engineered_rate() == doctest::Approx(1e-4 / std::pow(std::cosh(0.7), 4)));
}

TEST_CASE("resonant Hamiltonian equals the Bogoliubov form") {
  for (double r : {0.0, 0.3, 1.0}) {
    const auto p = params(r);
    const DenseMatrix diff = resonant_hamiltonian(p).dense() - bogoliubov_hamiltonian(p).dense();
    // the two forms differ only where beta^2 reaches past the last level
    const auto sig = p.full_signature();
    double worst = 0.0;
    for (Index i = 0; i < sig.total_dim(); ++i) {
      for (Index j = 0; j < sig.total_dim(); ++j) {
        if (sig.occupation(i)[1] < p.N_b - 2 && sig.occupation(j)[1] < p.N_b - 2) worst = std::max(worst, std::abs(diff(i, j)));
      }
    }
    CHECK(worst < 1e-15);
    CHECK(resonant_hamiltonian(p).is_hermitian());
  }
}

TEST_CASE("dark states of the resonant Hamiltonian") {
  for (int n : {0, 1}) {
    double last = 1.0;
    for (int nb : {30, 40, 50}) {
      const auto p = params(0.5, 2, nb);
      const auto sv = squeezed_number(p.full_signature(), 1, p.squeeze(), n, 1e-4);
      const double res = resonant_hamiltonian(p).apply(sv.amplitudes).norm();
      CHECK(res < last);
      last = res;
    }
    CHECK(last < 1e-7);
  }
}

TEST_CASE("nonresonant terms carry the sideband frequencies") {
  auto p = params(0.5, 2, 10);
  CHECK_THROWS_WITH(nonresonant_terms(p), doctest::Contains("RWA"));
  p.omega_m_eff_over_kappa = 5.0;
  const auto nr = nonresonant_terms(p);
  CHECK(nr.time_dependent());
  for (const auto& term : nr.time_terms) {
    const double k = std::abs(term.nu) / 10.0;
    CHECK(std::abs(k - std::round(k)) < 1e-12);
  }
  CHECK(nr.period() == doctest::Approx(2 * std::numbers::pi / 10.0));
  const auto h = interaction_hamiltonian(p);
  for (double t : {0.0, 0.13, 0.4}) CHECK(h.at(t).is_hermitian());
  // one period later the Hamiltonian repeats
  CHECK((h.at(0.13).dense() - h.at(0.13 + h.period()).dense()).norm() < 1e-12);
}

TEST_CASE("collapse channels") {
  auto p = params(0.2);
  CHECK(collapse_ops(p).size() == 1);
  p.gamma = 1e-5;
  p.nbar_m = 3;
  const auto c = collapse_ops(p);
  REQUIRE(c.size() == 3);
  CHECK(c[1].rate == doctest::Approx(4e-5));
  CHECK(c[2].rate == doctest::Approx(3e-5));
  const auto e = effective_collapse_ops(p);
  REQUIRE(e.size() == 3);
  CHECK(e.back().rate == doctest::Approx(p.engineered_rate()));
}

TEST_CASE("drive amplitudes round-trip through the couplings") {
  const double gp = 1e-3, kappa = 1.0, Delta = 40.0;
  const auto d = drives_for_couplings(gp, 0.01, 0.6, kappa, Delta);
  const auto c = couplings_from_drives(gp, d.E_plus, d.E_zero, d.E_minus, kappa, Delta);
  CHECK(std::abs(c.g_minus) == doctest::Approx(0.01));
  CHECK(std::abs(c.g_zero) == doctest::Approx(0.01 * std::tanh(0.6)));
  CHECK(std::abs(c.g_plus) == doctest::Approx(0.01 * std::pow(std::tanh(0.6), 2)));
}

TEST_CASE("parameter validation") {
  auto p = params(0.1);
  p.N_b = -3;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = params(0.1);
  p.gamma = -1;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}
