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


#include "optosqueeze/steady_state.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include <Eigen/SparseLU>

#include "optosqueeze/errors.hpp"

namespace optosqueeze {

namespace {

using LU = Eigen::SparseLU<SparseMatrix, Eigen::COLAMDOrdering<int>>;

constexpr Index kDenseFallbackLimit = 4096;

SparseMatrix trace_pinned(const SparseMatrix& l, Index dim) {
  std::vector<Eigen::Triplet<cplx>> entries;
  entries.reserve(static_cast<std::size_t>(l.nonZeros() + dim));
  for (Index j = 0; j < l.outerSize(); ++j) {
    for (SparseMatrix::InnerIterator it(l, j); it; ++it) {
      if (it.row() != 0) entries.emplace_back(it.row(), it.col(), it.value());
    }
  }
  for (Index i = 0; i < dim; ++i) entries.emplace_back(0, i * (dim + 1), 1.0);
  SparseMatrix out(l.rows(), l.cols());
  out.setFromTriplets(entries.begin(), entries.end());
  out.makeCompressed();
  return out;
}

double scale_of(const SparseMatrix& l) {
  double worst = 0.0;
  for (Index j = 0; j < l.outerSize(); ++j) {
    double s = 0.0;
    for (SparseMatrix::InnerIterator it(l, j); it; ++it) s += std::abs(it.value());
    worst = std::max(worst, s);
  }
  return worst;
}

}  // namespace

std::vector<double> smallest_singular_values(const SparseMatrix& l, int count, int iterations) {
  const Index n = l.rows();
  if (count < 1 || count > n) throw std::invalid_argument("singular value probe size out of range");
  const double norm = std::max(scale_of(l), 1e-300);

  LU lu;
  bool ok = false;
  for (double rel : {1e-13, 1e-11, 1e-9}) {
    SparseMatrix shifted = l - cplx(rel * norm) * sparse_identity(n);
    shifted.makeCompressed();
    lu.compute(shifted);
    if (lu.info() == Eigen::Success) {
      ok = true;
      break;
    }
  }
  if (!ok) throw NumericalError("could not factor the shifted Liouvillian");

  std::mt19937_64 rng(0x5eedULL);
  std::normal_distribution<double> gauss;
  DenseMatrix x(n, count);
  for (Index j = 0; j < count; ++j) {
    for (Index i = 0; i < n; ++i) x(i, j) = cplx(gauss(rng), gauss(rng));
  }
  for (int it = 0; it < iterations; ++it) {
    DenseMatrix y = lu.adjoint().solve(x);
    DenseMatrix z = lu.solve(y);
    Eigen::HouseholderQR<DenseMatrix> qr(z);
    x = qr.householderQ() * DenseMatrix::Identity(n, count);
  }
  const DenseMatrix b = l * x;
  Eigen::JacobiSVD<DenseMatrix> svd(b);
  std::vector<double> out(svd.singularValues().data(), svd.singularValues().data() + count);
  std::sort(out.begin(), out.end());
  return out;
}

SteadyStateResult steady_state(const Liouvillian& l, const SteadyStateOptions& opts) {
  const Index dim = l.dim();
  const Index n = l.matrix.rows();
  SteadyStateResult res;

  const int probe = static_cast<int>(std::min<Index>(opts.probe_size, n));
  res.smallest_singular_values = smallest_singular_values(l.matrix, probe, opts.probe_iterations);
  res.null_dimension = static_cast<int>(std::count_if(res.smallest_singular_values.begin(),
                                                      res.smallest_singular_values.end(),
                                                      [](double s) { return s < kDegenerateSingularValue; }));
  res.null_dimension = std::max(res.null_dimension, 1);
  res.degenerate = res.null_dimension >= 2;
  if (res.degenerate && !opts.allow_degenerate) throw NumericalError("non-unique steady state");

  const SparseMatrix pinned = trace_pinned(l.matrix, dim);
  Vector rhs = Vector::Zero(n);
  rhs(0) = 1.0;
  Vector v;
  LU lu;
  lu.compute(pinned);
  if (lu.info() == Eigen::Success) {
    v = lu.solve(rhs);
  }
  if ((v.size() == 0 || !v.allFinite()) && n <= kDenseFallbackLimit) {
    const DenseMatrix dense(pinned);
    v = dense.colPivHouseholderQr().solve(rhs);
  }
  if (v.size() == 0 || !v.allFinite()) {
    if (res.degenerate) return res;
    throw NumericalError("steady-state solve failed");
  }

  DensityMatrix rho = DensityMatrix::normalized(l.sig, unvectorize(v, dim));
  if (!res.degenerate && rho.min_eigenvalue() < kEigenvalueFloor) {
    throw NumericalError("steady state is not positive semidefinite");
  }
  res.state = std::move(rho);
  return res;
}

}  // namespace optosqueeze
