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


#ifndef OPTOSQUEEZE_LIOUVILLIAN_HPP
#define OPTOSQUEEZE_LIOUVILLIAN_HPP

// Superoperators in the column-stacking convention (see fock.hpp). The
// dissipator keeps the factor 2 of
//   L[c] rho = 2 c rho c^dag - c^dag c rho - rho c^dag c.

#include <vector>

#include "optosqueeze/fock.hpp"
#include "optosqueeze/model.hpp"

namespace optosqueeze {

struct Liouvillian {
  SpaceSignature sig;
  SparseMatrix matrix;  // D^2 x D^2

  Index dim() const { return sig.total_dim(); }
  Vector apply(const Vector& v) const { return matrix * v; }
};

// -i (I kron H - H^T kron I): the superoperator of -i[H, .].
SparseMatrix commutator_superop(const SparseMatrix& h);
// -i (I kron O - O^T kron I) for a non-Hermitian O; used for the
// time-dependent pieces O e^{i nu t}.
SparseMatrix left_right_superop(const SparseMatrix& left, const SparseMatrix& right);
// rate (2 conj(c) kron c - I kron c^dag c - (c^dag c)^T kron I)
SparseMatrix dissipator_superop(const SparseMatrix& c, double rate);

Liouvillian build_liouvillian(const FockOperator& h, const std::vector<CollapseOp>& collapse);

// Rotating-wave model on [N_a, N_b].
Liouvillian full_liouvillian(const SystemParams& p);
// Mechanics only, optics adiabatically eliminated.
Liouvillian effective_liouvillian(const SystemParams& p);

// max_j |sum_i L(ii, j)|: zero for a trace-preserving generator.
double trace_preservation_error(const Liouvillian& l);

// Linear generator with periodic pieces:
//   L(t) = L0 + sum_k (e^{i nu_k t} A_k + e^{-i nu_k t} B_k)
// where A_k, B_k are the commutator superoperators of O_k and O_k^dag.
struct TimeDependentLiouvillian {
  SpaceSignature sig;
  SparseMatrix static_part;
  struct Piece {
    SparseMatrix plus;   // multiplies e^{i nu t}
    SparseMatrix minus;  // multiplies e^{-i nu t}
    double nu = 0.0;
  };
  std::vector<Piece> pieces;
  double period = 0.0;  // 0 when static

  Index dim() const { return sig.total_dim(); }
  bool time_dependent() const { return !pieces.empty(); }
  // out = L(t) v
  void apply(double t, Eigen::Ref<const Vector> v, Eigen::Ref<Vector> out) const;
  SparseMatrix at(double t) const;
};

TimeDependentLiouvillian build_liouvillian(const HamiltonianSpec& h, const std::vector<CollapseOp>& collapse);
TimeDependentLiouvillian as_time_dependent(const Liouvillian& l);

}  // namespace optosqueeze

#endif  // OPTOSQUEEZE_LIOUVILLIAN_HPP
