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

#include <unsupported/Eigen/KroneckerProduct>

#include "optosqueeze/errors.hpp"
#include "optosqueeze/fock.hpp"

using namespace optosqueeze;

TEST_CASE("signature indexing is row-major with mode 0 slowest") {
  SpaceSignature sig({3, 4}, {"a", "b"});
  CHECK(sig.total_dim() == 12);
  std::vector<int> occ{2, 1};
  CHECK(sig.flat_index(occ) == 9);
  CHECK(sig.occupation(9) == occ);
  CHECK_THROWS_AS(SpaceSignature({1, 4}), std::invalid_argument);
}

TEST_CASE("canonical commutator holds below the truncation edge") {
  const auto sig = SpaceSignature::single(8);
  const auto a = annihilation(sig, 0);
  const DenseMatrix c = commutator(a, adjoint(a)).dense();
  for (int k = 0; k < 7; ++k) CHECK(std::abs(c(k, k) - 1.0) < 1e-14);
  // the last level sees -(N-1)
  CHECK(std::abs(c(7, 7) + 7.0) < 1e-13);
  CHECK((creation(sig, 0).dense() - a.dense().adjoint()).norm() < 1e-15);
}

TEST_CASE("embedded operators act on their own mode") {
  SpaceSignature sig({2, 5}, {"a", "b"});
  const auto nb = number_op(sig, 1);
  const auto na = number_op(sig, 0);
  for (Index i = 0; i < sig.total_dim(); ++i) {
    const auto occ = sig.occupation(i);
    CHECK(std::abs(nb.dense()(i, i) - double(occ[1])) < 1e-15);
    CHECK(std::abs(na.dense()(i, i) - double(occ[0])) < 1e-15);
  }
  CHECK(commutator(na, nb).data().nonZeros() == 0);
  CHECK_THROWS_AS(number_op(sig, 2), std::invalid_argument);
}

TEST_CASE("operator algebra and Hermiticity") {
  const auto sig = SpaceSignature::single(6);
  const auto a = annihilation(sig, 0);
  const auto x = a + adjoint(a);
  CHECK(x.is_hermitian());
  const auto y = cplx(0, 1) * (a - adjoint(a));
  CHECK(y.is_hermitian());
  CHECK(!a.is_hermitian());
  const DenseMatrix p = parity_op(sig, 0).dense();
  for (int k = 0; k < 6; ++k) CHECK(std::abs(p(k, k) - (k % 2 ? -1.0 : 1.0)) < 1e-15);
}

TEST_CASE("vectorization follows vec(A rho B) = (B^T kron A) vec(rho)") {
  const Index d = 4;
  DenseMatrix a = DenseMatrix::Random(d, d), b = DenseMatrix::Random(d, d), rho = DenseMatrix::Random(d, d);
  const Vector lhs = vectorize(DenseMatrix(a * rho * b));
  const SparseMatrix k = kron(SparseMatrix(b.transpose().sparseView()), SparseMatrix(a.sparseView()));
  const Vector rhs = k * vectorize(rho);
  CHECK((lhs - rhs).norm() < 1e-12);
  CHECK((unvectorize(lhs, d) - a * rho * b).norm() < 1e-12);
  CHECK(vec_index(1, 2, d) == 9);
}

TEST_CASE("density matrix constructors validate") {
  const auto sig = SpaceSignature::single(4);
  DenseMatrix bad = DenseMatrix::Identity(4, 4);
  CHECK_THROWS_AS(DensityMatrix(sig, bad), std::invalid_argument);
  const auto th = DensityMatrix::thermal(sig, 0.5);
  CHECK(std::abs(th.trace() - 1.0) < 1e-14);
  // truncated geometric distribution
  const double q = 0.5 / 1.5;
  const double z = 1 + q + q * q + q * q * q;
  CHECK(std::abs(th.data()(2, 2).real() - q * q / z) < 1e-14);
  const auto mm = DensityMatrix::maximally_mixed(sig);
  CHECK(std::abs(mm.data()(3, 3).real() - 0.25) < 1e-15);
}

TEST_CASE("partial trace of a product state returns the factor") {
  SpaceSignature sig({3, 4}, {"a", "b"});
  const auto sa = SpaceSignature::single(3, "a");
  const auto sb = SpaceSignature::single(4, "b");
  const auto ra = DensityMatrix::thermal(sa, 0.7);
  Vector psi = Vector::Random(4);
  psi.normalize();
  const auto rb = DensityMatrix::pure(sb, psi);
  const DenseMatrix joint = Eigen::kroneckerProduct(ra.data(), rb.data()).eval();
  const DensityMatrix rho(sig, joint);
  CHECK((partial_trace(rho, 1).data() - rb.data()).norm() < 1e-13);
  CHECK((partial_trace(rho, 0).data() - ra.data()).norm() < 1e-13);
}

TEST_CASE("trace distance of orthogonal and equal states") {
  const auto sig = SpaceSignature::single(3);
  std::vector<int> o0{0}, o1{1};
  const auto f0 = DensityMatrix::fock(sig, o0);
  const auto f1 = DensityMatrix::fock(sig, o1);
  CHECK(std::abs(trace_distance(f0, f1) - 1.0) < 1e-14);
  CHECK(trace_distance(f0, f0) < 1e-15);
}
