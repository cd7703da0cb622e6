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


#ifndef OPTOSQUEEZE_STATES_HPP
#define OPTOSQUEEZE_STATES_HPP

#include <span>

#include "optosqueeze/fock.hpp"

namespace optosqueeze {

inline constexpr double kDefaultStateLeakageCap = 1e-8;

struct SqueezeParam {
  double magnitude = 0.0;
  double phase = 0.0;

  SqueezeParam() = default;
  // Throws for a negative magnitude. The phase is wrapped into [0, 2pi).
  SqueezeParam(double r, double theta = 0.0);

  double mu() const;   // cosh|xi|
  cplx nu() const;     // e^{i theta} sinh|xi|
};

struct StateVector {
  SpaceSignature sig;
  Vector amplitudes;
  // Weight of the untruncated state that falls outside the kept levels.
  double leakage = 0.0;

  DensityMatrix density() const { return DensityMatrix::pure(sig, amplitudes); }
  double norm() const { return amplitudes.norm(); }
};

// mu b + nu b^dag on `mode`.
FockOperator bogoliubov_op(const SpaceSignature& sig, int mode, const SqueezeParam& xi);

// beta^2 with exact matrix elements on the kept levels. Squaring the
// truncated beta would corrupt the top-left block through the missing
// level; here beta is built with two extra levels before squaring.
SparseMatrix bogoliubov_squared_local(int dim, const SqueezeParam& xi);
FockOperator bogoliubov_squared(const SpaceSignature& sig, int mode, const SqueezeParam& xi);

// |xi, 0> on `mode`, other modes in vacuum. Built from the two-term
// recurrence of the Bogoliubov vacuum, renormalized after truncation.
// Throws std::invalid_argument naming the needed truncation when the
// leakage exceeds `leakage_cap`.
StateVector squeezed_vacuum(const SpaceSignature& sig, int mode, const SqueezeParam& xi,
                            double leakage_cap = kDefaultStateLeakageCap);
// |xi, 1>: odd vacuum of beta^2.
StateVector squeezed_one(const SpaceSignature& sig, int mode, const SqueezeParam& xi,
                         double leakage_cap = kDefaultStateLeakageCap);
// n in {0, 1}.
StateVector squeezed_number(const SpaceSignature& sig, int mode, const SqueezeParam& xi, int n,
                            double leakage_cap = kDefaultStateLeakageCap);

// Smallest truncation whose leakage for |xi, n> is at most `cap`.
int required_truncation(const SqueezeParam& xi, int n, double cap);

StateVector number_state(const SpaceSignature& sig, std::span<const int> occupation);
// Tensor product, lhs modes first. Leakages combine as 1 - (1-a)(1-b).
StateVector product(const StateVector& lhs, const StateVector& rhs);

struct VariancePair {
  double var_x1 = 0.0;
  double var_x2 = 0.0;
};

// Closed forms for |xi, n>: (2n+1) e^{-+2|xi|} / 4.
VariancePair analytic_variances(const SqueezeParam& xi, int n);
// <b^dag b> of |xi, n>.
double analytic_mean_n(const SqueezeParam& xi, int n);

// Closed form g2 of |xi, n> as published for theta = 0:
//   1 - cosh(2r) n / <n> + sinh^2 r / <n>^2 (2 n^2 cosh^2 r + 2 n cosh^2 r + cosh 2r).
// Exact for n = 0 (gives 3 + 1/sinh^2 r). For n >= 1 it disagrees with the
// moment ratio of S(xi)|n>; see exact_g2 for that.
// Throws for theta != 0 and for the vacuum (r = 0, n = 0).
double analytic_g2(const SqueezeParam& xi, int n);

// <a^dag^2 a^2> / <n>^2 of S(xi)|n> from the Bogoliubov moments.
double exact_g2(const SqueezeParam& xi, int n);

}  // namespace optosqueeze

#endif  // OPTOSQUEEZE_STATES_HPP
