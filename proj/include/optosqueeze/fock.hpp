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

#ifndef OPTOSQUEEZE_FOCK_HPP
#define OPTOSQUEEZE_FOCK_HPP

// Truncated Fock-space linear algebra.
//
// Conventions used throughout the library:
//  * Multi-mode spaces are ordered with mode 0 as the slowest index, so for
//    dims = [N_a, N_b] the basis state |n_a, n_b> has flat index
//    n_a * N_b + n_b.
//  * Operators are the truncation of the exact infinite-dimensional matrix
//    elements. Normal-ordered products (a^dag a, a^2, ...) are therefore exact
//    on the kept levels, while anti-normal products are not: [a, a^dag]
//    equals the identity except at the top level, where it is -(N - 1).
//  * Density matrices are vectorized by stacking columns:
//    vec(rho)[i + j * D] = rho(i, j), hence vec(A rho B) = (B^T kron A) vec(rho).

#include <complex>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace optosqueeze {

using cplx = std::complex<double>;
using SparseMatrix = Eigen::SparseMatrix<cplx>;
using DenseMatrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Index = Eigen::Index;

inline constexpr double kHermiticityTolerance = 1e-10;
inline constexpr double kTraceTolerance = 1e-8;
inline constexpr double kEigenvalueFloor = -1e-8;

class SpaceSignature {
 public:
  SpaceSignature() = default;
  explicit SpaceSignature(std::vector<int> dims, std::vector<std::string> labels = {});

  static SpaceSignature single(int dim, std::string label = "b");

  const std::vector<int>& dims() const { return dims_; }
  const std::vector<std::string>& labels() const { return labels_; }
  int modes() const { return static_cast<int>(dims_.size()); }
  int dim(int mode) const;
  Index total_dim() const { return total_; }

  // Flat index of an occupation pattern, mode 0 slowest.
  Index flat_index(std::span<const int> occupation) const;
  std::vector<int> occupation(Index flat) const;
  int occupation_of(Index flat, int mode) const;

  // Signature of a single mode of this space.
  SpaceSignature mode_signature(int mode) const;

  bool operator==(const SpaceSignature& other) const { return dims_ == other.dims_; }
  bool operator!=(const SpaceSignature& other) const { return !(*this == other); }

  std::string describe() const;

 private:
  void check_mode(int mode) const;

  std::vector<int> dims_;
  std::vector<std::string> labels_;
  Index total_ = 0;
};

class FockOperator {
 public:
  FockOperator() = default;
  // Stored zeros are pruned; dimensions must match the signature.
  FockOperator(SpaceSignature sig, SparseMatrix data);

  static FockOperator identity(const SpaceSignature& sig);
  static FockOperator zero(const SpaceSignature& sig);
  static FockOperator from_dense(const SpaceSignature& sig, const DenseMatrix& m);

  const SpaceSignature& sig() const { return sig_; }
  const SparseMatrix& data() const { return data_; }
  Index dim() const { return sig_.total_dim(); }

  FockOperator adjoint() const;
  DenseMatrix dense() const { return DenseMatrix(data_); }
  Vector apply(const Vector& v) const;

  // max |A - A^dag| elementwise
  double hermiticity_error() const;
  bool is_hermitian(double tol = 1e-12) const { return hermiticity_error() <= tol; }

  FockOperator& operator+=(const FockOperator& rhs);
  FockOperator& operator-=(const FockOperator& rhs);
  FockOperator& operator*=(cplx s);

 private:
  SpaceSignature sig_;
  SparseMatrix data_;
};

FockOperator operator+(FockOperator lhs, const FockOperator& rhs);
FockOperator operator-(FockOperator lhs, const FockOperator& rhs);
FockOperator operator*(const FockOperator& lhs, const FockOperator& rhs);
FockOperator operator*(cplx s, FockOperator op);
FockOperator operator*(FockOperator op, cplx s);

FockOperator add(const FockOperator& a, const FockOperator& b);
FockOperator compose(const FockOperator& a, const FockOperator& b);
FockOperator scale(const FockOperator& a, cplx s);
FockOperator adjoint(const FockOperator& a);
FockOperator commutator(const FockOperator& a, const FockOperator& b);

// Lowering operator of `mode`, tensored with identities on the other modes.
// Throws std::invalid_argument("unknown mode") for a bad index.
FockOperator annihilation(const SpaceSignature& sig, int mode);
FockOperator creation(const SpaceSignature& sig, int mode);
FockOperator number_op(const SpaceSignature& sig, int mode);
// Mode parity (-1)^n on `mode`.
FockOperator parity_op(const SpaceSignature& sig, int mode);

// Embeds a single-mode matrix acting on `mode` into the full space.
FockOperator embed(const SpaceSignature& sig, int mode, const SparseMatrix& local);

// Kronecker product of operators on two spaces; the result lives on the
// concatenated signature (lhs modes first).
FockOperator tensor(const FockOperator& lhs, const FockOperator& rhs);
SpaceSignature concat(const SpaceSignature& lhs, const SpaceSignature& rhs);

// Sparse identity of the given dimension.
SparseMatrix sparse_identity(Index n);
SparseMatrix kron(const SparseMatrix& a, const SparseMatrix& b);

class DensityMatrix {
 public:
  DensityMatrix() = default;
  // Validates shape, Hermiticity (1e-10) and unit trace (1e-8).
  DensityMatrix(SpaceSignature sig, DenseMatrix data);

  // Hermitizes and rescales to unit trace before validating.
  static DensityMatrix normalized(SpaceSignature sig, DenseMatrix data);
  static DensityMatrix pure(SpaceSignature sig, const Vector& psi);
  static DensityMatrix fock(const SpaceSignature& sig, std::span<const int> occupation);
  static DensityMatrix maximally_mixed(const SpaceSignature& sig);
  // Single-mode thermal state with mean occupation nbar, truncated and renormalized.
  static DensityMatrix thermal(const SpaceSignature& sig, double nbar);

  const SpaceSignature& sig() const { return sig_; }
  const DenseMatrix& data() const { return data_; }
  Index dim() const { return sig_.total_dim(); }

  cplx trace() const { return data_.trace(); }
  double hermiticity_error() const;
  double min_eigenvalue() const;
  // Population of the top Fock level of `mode`.
  // Largest single-level population among the top `levels` Fock levels.
  double top_level_population(int mode, int levels = 1) const;
  // Per mode with edge_levels(); the figure used for leakage checks.
  double max_top_level_population() const;

 private:
  SpaceSignature sig_;
  DenseMatrix data_;
};

// Reduced state on `keep_mode` of a two-mode density matrix.
// Levels watched for truncation leakage: two for the mechanical mode "b",
// whose pair processes conserve parity and can leave the very top level
// empty, one otherwise.
int edge_levels(const SpaceSignature& sig, int mode);

DensityMatrix partial_trace(const DensityMatrix& rho, int keep_mode);

Index vec_index(Index row, Index col, Index dim);
Vector vectorize(const DenseMatrix& m);
Vector vectorize(const DensityMatrix& rho);
DenseMatrix unvectorize(const Vector& v, Index dim);
DensityMatrix devectorize(const Vector& v, const SpaceSignature& sig);

// 1/2 * sum |eigenvalues(a - b)|
double trace_distance(const DensityMatrix& a, const DensityMatrix& b);

}  // namespace optosqueeze

#endif  // OPTOSQUEEZE_FOCK_HPP
