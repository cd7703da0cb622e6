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
#include <vector>

#include <unsupported/Eigen/MatrixFunctions>

#include "optosqueeze/observables.hpp"
#include "optosqueeze/states.hpp"

using namespace optosqueeze;

namespace {

// S(xi) = exp((xi* b^2 - xi b^dag^2) / 2) on a large space, applied to |n>.
Vector squeeze_by_expm(double r, double theta, int n, int big, int keep) {
  DenseMatrix b = DenseMatrix::Zero(big, big);
  for (int k = 1; k < big; ++k) b(k - 1, k) = std::sqrt(double(k));
  const cplx xi = std::polar(r, theta);
  const DenseMatrix bd = b.adjoint();
  const DenseMatrix gen = 0.5 * (std::conj(xi) * b * b - xi * bd * bd);
  const DenseMatrix s = gen.exp();
  Vector v = s.col(n).head(keep);
  return v;
}

double overlap(const Vector& a, const Vector& b) { return std::abs(a.dot(b)); }

}  // namespace

TEST_CASE("squeezed vacuum equals the squeeze operator on |0>") {
  for (double r : {0.1, 0.5, 1.0}) {
    for (double th : {0.0, 0.7}) {
      const auto sig = SpaceSignature::single(60);
      const auto sv = squeezed_vacuum(sig, 0, SqueezeParam(r, th), 1e-6);
      const Vector ref = squeeze_by_expm(r, th, 0, 160, 60);
      CHECK(overlap(sv.amplitudes, ref) == doctest::Approx(1.0).epsilon(1e-7));
      CHECK(sv.norm() == doctest::Approx(1.0).epsilon(1e-14));
    }
  }
}

TEST_CASE("squeezed one-phonon state equals S(xi)|1>") {
  for (double r : {0.1, 0.5, 1.0}) {
    const auto sig = SpaceSignature::single(60);
    const auto sv = squeezed_one(sig, 0, SqueezeParam(r, 0.3), 1e-5);
    const Vector ref = squeeze_by_expm(r, 0.3, 1, 160, 60);
    CHECK(overlap(sv.amplitudes, ref) == doctest::Approx(1.0).epsilon(1e-6));
  }
}

TEST_CASE("squeezed states are annihilated by beta^2") {
  const auto sig = SpaceSignature::single(50);
  const SqueezeParam xi(0.4);
  const auto b2 = bogoliubov_squared(sig, 0, xi);
  for (int n : {0, 1}) {
    const auto sv = squeezed_number(sig, 0, xi, n);
    const Vector out = b2.apply(sv.amplitudes);
    // only the truncation edge contributes
    CHECK(out.head(46).norm() < 1e-12);
  }
}

TEST_CASE("leakage cap and required truncation") {
  const SqueezeParam xi(1.0);
  const int need = required_truncation(xi, 0, 1e-8);
  CHECK(need > 10);
  const auto ok = squeezed_vacuum(SpaceSignature::single(need), 0, xi, 1e-8);
  CHECK(ok.leakage <= 1e-8);
  CHECK_THROWS_WITH_AS(squeezed_vacuum(SpaceSignature::single(need - 2), 0, xi, 1e-8),
                       doctest::Contains("N_b >= "), std::invalid_argument);
  CHECK_THROWS_AS(SqueezeParam(-0.1), std::invalid_argument);
}

TEST_CASE("closed-form variances against brute-force moments") {
  for (double r : {0.1, 0.5, 1.0}) {
    for (int n : {0, 1}) {
      const auto sig = SpaceSignature::single(140);
      const auto sv = squeezed_number(sig, 0, SqueezeParam(r), n, 1e-12);
      // X1 = (b + b^dag)/2 by direct matrix products
      DenseMatrix b = annihilation(sig, 0).dense();
      const DenseMatrix x1 = 0.5 * (b + b.adjoint());
      const DenseMatrix x2 = cplx(0, -0.5) * (b - b.adjoint());
      const Vector& psi = sv.amplitudes;
      auto var = [&](const DenseMatrix& x) {
        const double m = psi.dot(x * psi).real();
        return psi.dot(x * (x * psi)).real() - m * m;
      };
      const auto ana = analytic_variances(SqueezeParam(r), n);
      CHECK(var(x1) == doctest::Approx(ana.var_x1).epsilon(1e-9));
      CHECK(var(x2) == doctest::Approx(ana.var_x2).epsilon(1e-9));
      CHECK(psi.dot(b.adjoint() * b * psi).real() == doctest::Approx(analytic_mean_n(SqueezeParam(r), n)).epsilon(1e-9));
    }
  }
}

TEST_CASE("moment-ratio g2 matches the built state") {
  for (double r : {0.05, 0.1, 0.5, 1.0}) {
    for (int n : {0, 1}) {
      const auto sv = squeezed_number(SpaceSignature::single(140), 0, SqueezeParam(r), n, 1e-12);
      CHECK(g2(sv.density()) == doctest::Approx(exact_g2(SqueezeParam(r), n)).epsilon(1e-8));
    }
  }
  // vacuum branch of the closed form equals the moment ratio
  CHECK(analytic_g2(SqueezeParam(0.3), 0) == doctest::Approx(exact_g2(SqueezeParam(0.3), 0)).epsilon(1e-12));
  CHECK(analytic_g2(SqueezeParam(0.1), 1) == doctest::Approx(0.0575873).epsilon(1e-5));
  CHECK_THROWS_AS(analytic_g2(SqueezeParam(0.0), 0), std::invalid_argument);
}

TEST_CASE("two-mode states keep the other mode in vacuum") {
  SpaceSignature sig({3, 30}, {"a", "b"});
  const auto sv = squeezed_number(sig, 1, SqueezeParam(0.3), 1);
  const auto reduced = partial_trace(sv.density(), 0);
  std::vector<int> vac{0};
  CHECK(reduced.data()(0, 0).real() == doctest::Approx(1.0).epsilon(1e-14));
  const auto mech = partial_trace(sv.density(), 1);
  CHECK(purity(mech) == doctest::Approx(1.0).epsilon(1e-12));
}
