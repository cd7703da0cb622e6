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

#include "optosqueeze/fock.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/KroneckerProduct>

namespace optosqueeze {

namespace {

using Triplet = Eigen::Triplet<cplx>;

SparseMatrix lowering(int n) {
  std::vector<Triplet> entries;
  entries.reserve(static_cast<std::size_t>(n));
  for (int k = 1; k < n; ++k) {
    entries.emplace_back(k - 1, k, std::sqrt(static_cast<double>(k)));
  }
  SparseMatrix m(n, n);
  m.setFromTriplets(entries.begin(), entries.end());
  return m;
}

void require_same(const SpaceSignature& a, const SpaceSignature& b) {
  if (a != b) {
    throw std::invalid_argument("signature mismatch: " + a.describe() + " vs " + b.describe());
  }
}

SparseMatrix pruned(SparseMatrix m) {
  m.prune(cplx(0.0, 0.0));
  m.makeCompressed();
  return m;
}

}  // namespace

// ---------------------------------------------------------------------------
// SpaceSignature

SpaceSignature::SpaceSignature(std::vector<int> dims, std::vector<std::string> labels)
    : dims_(std::move(dims)), labels_(std::move(labels)) {
  if (dims_.empty()) {
    throw std::invalid_argument("space signature needs at least one mode");
  }
  total_ = 1;
  for (int d : dims_) {
    if (d < 2) {
      throw std::invalid_argument("mode truncation must be at least 2, got " + std::to_string(d));
    }
    total_ *= d;
  }
  if (labels_.empty()) {
    for (std::size_t k = 0; k < dims_.size(); ++k) labels_.push_back("m" + std::to_string(k));
  } else if (labels_.size() != dims_.size()) {
    throw std::invalid_argument("label count does not match mode count");
  }
}

SpaceSignature SpaceSignature::single(int dim, std::string label) {
  return SpaceSignature({dim}, {std::move(label)});
}

void SpaceSignature::check_mode(int mode) const {
  if (mode < 0 || mode >= modes()) {
    throw std::invalid_argument("unknown mode " + std::to_string(mode) + " for " + describe());
  }
}

int SpaceSignature::dim(int mode) const {
  check_mode(mode);
  return dims_[static_cast<std::size_t>(mode)];
}

Index SpaceSignature::flat_index(std::span<const int> occupation) const {
  if (occupation.size() != dims_.size()) {
    throw std::invalid_argument("occupation pattern has wrong number of modes");
  }
  Index flat = 0;
  for (std::size_t k = 0; k < dims_.size(); ++k) {
    if (occupation[k] < 0 || occupation[k] >= dims_[k]) {
      throw std::invalid_argument("occupation exceeds truncation of mode " + std::to_string(k));
    }
    flat = flat * dims_[k] + occupation[k];
  }
  return flat;
}

std::vector<int> SpaceSignature::occupation(Index flat) const {
  std::vector<int> occ(dims_.size());
  for (std::size_t k = dims_.size(); k-- > 0;) {
    occ[k] = static_cast<int>(flat % dims_[k]);
    flat /= dims_[k];
  }
  return occ;
}

int SpaceSignature::occupation_of(Index flat, int mode) const {
  check_mode(mode);
  Index stride = 1;
  for (int k = modes() - 1; k > mode; --k) stride *= dims_[static_cast<std::size_t>(k)];
  return static_cast<int>((flat / stride) % dims_[static_cast<std::size_t>(mode)]);
}

SpaceSignature SpaceSignature::mode_signature(int mode) const {
  check_mode(mode);
  return SpaceSignature({dims_[static_cast<std::size_t>(mode)]},
                        {labels_[static_cast<std::size_t>(mode)]});
}

std::string SpaceSignature::describe() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t k = 0; k < dims_.size(); ++k) {
    if (k) os << ',';
    os << labels_[k] << ':' << dims_[k];
  }
  os << ']';
  return os.str();
}

SpaceSignature concat(const SpaceSignature& lhs, const SpaceSignature& rhs) {
  auto dims = lhs.dims();
  auto labels = lhs.labels();
  dims.insert(dims.end(), rhs.dims().begin(), rhs.dims().end());
  labels.insert(labels.end(), rhs.labels().begin(), rhs.labels().end());
  return SpaceSignature(std::move(dims), std::move(labels));
}

// ---------------------------------------------------------------------------
// Sparse helpers

SparseMatrix sparse_identity(Index n) {
  SparseMatrix id(n, n);
  id.setIdentity();
  return id;
}

SparseMatrix kron(const SparseMatrix& a, const SparseMatrix& b) {
  SparseMatrix out = Eigen::kroneckerProduct(a, b);
  return pruned(std::move(out));
}

// ---------------------------------------------------------------------------
// FockOperator

FockOperator::FockOperator(SpaceSignature sig, SparseMatrix data)
    : sig_(std::move(sig)), data_(pruned(std::move(data))) {
  if (data_.rows() != sig_.total_dim() || data_.cols() != sig_.total_dim()) {
    throw std::invalid_argument("operator shape does not match signature " + sig_.describe());
  }
}

FockOperator FockOperator::identity(const SpaceSignature& sig) {
  return FockOperator(sig, sparse_identity(sig.total_dim()));
}

FockOperator FockOperator::zero(const SpaceSignature& sig) {
  return FockOperator(sig, SparseMatrix(sig.total_dim(), sig.total_dim()));
}

FockOperator FockOperator::from_dense(const SpaceSignature& sig, const DenseMatrix& m) {
  return FockOperator(sig, m.sparseView(0.0, 0.0));
}

FockOperator FockOperator::adjoint() const {
  return FockOperator(sig_, SparseMatrix(data_.adjoint()));
}

Vector FockOperator::apply(const Vector& v) const {
  if (v.size() != dim()) throw std::invalid_argument("vector length does not match operator");
  return data_ * v;
}

double FockOperator::hermiticity_error() const {
  SparseMatrix diff = data_ - SparseMatrix(data_.adjoint());
  double worst = 0.0;
  for (Index k = 0; k < diff.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(diff, k); it; ++it) worst = std::max(worst, std::abs(it.value()));
  }
  return worst;
}

FockOperator& FockOperator::operator+=(const FockOperator& rhs) {
  require_same(sig_, rhs.sig_);
  data_ = pruned(data_ + rhs.data_);
  return *this;
}

FockOperator& FockOperator::operator-=(const FockOperator& rhs) {
  require_same(sig_, rhs.sig_);
  data_ = pruned(data_ - rhs.data_);
  return *this;
}

FockOperator& FockOperator::operator*=(cplx s) {
  data_ = pruned(data_ * s);
  return *this;
}

FockOperator operator+(FockOperator lhs, const FockOperator& rhs) { return lhs += rhs; }
FockOperator operator-(FockOperator lhs, const FockOperator& rhs) { return lhs -= rhs; }

FockOperator operator*(const FockOperator& lhs, const FockOperator& rhs) {
  require_same(lhs.sig(), rhs.sig());
  return FockOperator(lhs.sig(), SparseMatrix(lhs.data() * rhs.data()));
}

FockOperator operator*(cplx s, FockOperator op) { return op *= s; }
FockOperator operator*(FockOperator op, cplx s) { return op *= s; }

FockOperator add(const FockOperator& a, const FockOperator& b) { return a + b; }
FockOperator compose(const FockOperator& a, const FockOperator& b) { return a * b; }
FockOperator scale(const FockOperator& a, cplx s) { return a * s; }
FockOperator adjoint(const FockOperator& a) { return a.adjoint(); }
FockOperator commutator(const FockOperator& a, const FockOperator& b) { return a * b - b * a; }

FockOperator embed(const SpaceSignature& sig, int mode, const SparseMatrix& local) {
  const int n = sig.dim(mode);
  if (local.rows() != n || local.cols() != n) {
    throw std::invalid_argument("local operator does not match mode truncation");
  }
  SparseMatrix out = sparse_identity(1);
  for (int k = 0; k < sig.modes(); ++k) {
    const SparseMatrix factor = (k == mode) ? local : sparse_identity(sig.dim(k));
    out = kron(out, factor);
  }
  return FockOperator(sig, std::move(out));
}

FockOperator annihilation(const SpaceSignature& sig, int mode) {
  if (mode < 0 || mode >= sig.modes()) throw std::invalid_argument("unknown mode");
  return embed(sig, mode, lowering(sig.dim(mode)));
}

FockOperator creation(const SpaceSignature& sig, int mode) { return annihilation(sig, mode).adjoint(); }

FockOperator number_op(const SpaceSignature& sig, int mode) {
  if (mode < 0 || mode >= sig.modes()) throw std::invalid_argument("unknown mode");
  const int n = sig.dim(mode);
  SparseMatrix diag(n, n);
  for (int k = 1; k < n; ++k) diag.insert(k, k) = static_cast<double>(k);
  return embed(sig, mode, diag);
}

FockOperator parity_op(const SpaceSignature& sig, int mode) {
  if (mode < 0 || mode >= sig.modes()) throw std::invalid_argument("unknown mode");
  const int n = sig.dim(mode);
  SparseMatrix diag(n, n);
  for (int k = 0; k < n; ++k) diag.insert(k, k) = (k % 2 == 0) ? 1.0 : -1.0;
  return embed(sig, mode, diag);
}

FockOperator tensor(const FockOperator& lhs, const FockOperator& rhs) {
  return FockOperator(concat(lhs.sig(), rhs.sig()), kron(lhs.data(), rhs.data()));
}

// ---------------------------------------------------------------------------
// DensityMatrix

DensityMatrix::DensityMatrix(SpaceSignature sig, DenseMatrix data)
    : sig_(std::move(sig)), data_(std::move(data)) {
  if (data_.rows() != sig_.total_dim() || data_.cols() != sig_.total_dim()) {
    throw std::invalid_argument("density matrix shape does not match signature " + sig_.describe());
  }
  const double herm = hermiticity_error();
  if (!(herm <= kHermiticityTolerance)) {
    throw std::invalid_argument("density matrix is not Hermitian (error " + std::to_string(herm) + ")");
  }
  const cplx tr = data_.trace();
  if (!(std::abs(tr - 1.0) <= kTraceTolerance)) {
    throw std::invalid_argument("density matrix trace " + std::to_string(tr.real()) + " differs from 1");
  }
}

DensityMatrix DensityMatrix::normalized(SpaceSignature sig, DenseMatrix data) {
  DenseMatrix herm = 0.5 * (data + data.adjoint());
  const double tr = herm.trace().real();
  if (!(std::abs(tr) > 0.0) || !std::isfinite(tr)) {
    throw std::invalid_argument("cannot normalize a density matrix with zero trace");
  }
  herm /= tr;
  return DensityMatrix(std::move(sig), std::move(herm));
}

DensityMatrix DensityMatrix::pure(SpaceSignature sig, const Vector& psi) {
  if (psi.size() != sig.total_dim()) throw std::invalid_argument("state length does not match signature");
  const double norm = psi.norm();
  if (!(norm > 0.0)) throw std::invalid_argument("cannot build a density matrix from a zero vector");
  const Vector unit = psi / norm;
  return DensityMatrix(std::move(sig), unit * unit.adjoint());
}

DensityMatrix DensityMatrix::fock(const SpaceSignature& sig, std::span<const int> occupation) {
  DenseMatrix m = DenseMatrix::Zero(sig.total_dim(), sig.total_dim());
  const Index k = sig.flat_index(occupation);
  m(k, k) = 1.0;
  return DensityMatrix(sig, std::move(m));
}

DensityMatrix DensityMatrix::maximally_mixed(const SpaceSignature& sig) {
  const Index d = sig.total_dim();
  return DensityMatrix(sig, DenseMatrix::Identity(d, d) / static_cast<double>(d));
}

DensityMatrix DensityMatrix::thermal(const SpaceSignature& sig, double nbar) {
  if (sig.modes() != 1) throw std::invalid_argument("thermal state needs a single-mode signature");
  if (!(nbar >= 0.0)) throw std::invalid_argument("mean occupation must be non-negative");
  const Index d = sig.total_dim();
  DenseMatrix m = DenseMatrix::Zero(d, d);
  if (nbar == 0.0) {
    m(0, 0) = 1.0;
  } else {
    const double q = nbar / (nbar + 1.0);
    double w = 1.0;
    double total = 0.0;
    for (Index k = 0; k < d; ++k) {
      m(k, k) = w;
      total += w;
      w *= q;
    }
    m /= total;
  }
  return DensityMatrix(sig, std::move(m));
}

double DensityMatrix::hermiticity_error() const {
  return (data_ - data_.adjoint()).cwiseAbs().maxCoeff();
}

double DensityMatrix::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<DenseMatrix> solver(data_, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

double DensityMatrix::top_level_population(int mode, int levels) const {
  const int top = sig_.dim(mode) - 1;
  const int lowest = std::max(0, top - levels + 1);
  std::vector<double> pop(static_cast<std::size_t>(top - lowest + 1), 0.0);
  for (Index k = 0; k < dim(); ++k) {
    const int n = sig_.occupation_of(k, mode);
    if (n >= lowest) pop[static_cast<std::size_t>(n - lowest)] += data_(k, k).real();
  }
  return *std::max_element(pop.begin(), pop.end());
}

double DensityMatrix::max_top_level_population() const {
  double worst = 0.0;
  for (int m = 0; m < sig_.modes(); ++m) worst = std::max(worst, top_level_population(m, edge_levels(sig_, m)));
  return worst;
}

int edge_levels(const SpaceSignature& sig, int mode) {
  return sig.labels().at(static_cast<std::size_t>(mode)) == "b" && sig.dim(mode) >= 3 ? 2 : 1;
}

DensityMatrix partial_trace(const DensityMatrix& rho, int keep_mode) {
  const auto& sig = rho.sig();
  if (sig.modes() != 2) throw std::invalid_argument("partial trace needs a two-mode density matrix");
  if (keep_mode != 0 && keep_mode != 1) throw std::invalid_argument("unknown mode");
  const int na = sig.dim(0);
  const int nb = sig.dim(1);
  const auto& m = rho.data();
  const int keep = keep_mode == 0 ? na : nb;
  DenseMatrix out = DenseMatrix::Zero(keep, keep);
  if (keep_mode == 1) {
    for (int a = 0; a < na; ++a) out += m.block(a * nb, a * nb, nb, nb);
  } else {
    for (int i = 0; i < na; ++i) {
      for (int j = 0; j < na; ++j) {
        cplx acc = 0.0;
        for (int b = 0; b < nb; ++b) acc += m(i * nb + b, j * nb + b);
        out(i, j) = acc;
      }
    }
  }
  return DensityMatrix::normalized(sig.mode_signature(keep_mode), std::move(out));
}

// ---------------------------------------------------------------------------
// Vectorization

Index vec_index(Index row, Index col, Index dim) { return row + col * dim; }

Vector vectorize(const DenseMatrix& m) {
  return Eigen::Map<const Vector>(m.data(), m.size());
}

Vector vectorize(const DensityMatrix& rho) { return vectorize(rho.data()); }

DenseMatrix unvectorize(const Vector& v, Index dim) {
  if (v.size() != dim * dim) {
    throw std::invalid_argument("vector length " + std::to_string(v.size()) + " is not " +
                                std::to_string(dim) + "^2");
  }
  return Eigen::Map<const DenseMatrix>(v.data(), dim, dim);
}

DensityMatrix devectorize(const Vector& v, const SpaceSignature& sig) {
  return DensityMatrix(sig, unvectorize(v, sig.total_dim()));
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.sig() != b.sig()) throw std::invalid_argument("signature mismatch in trace distance");
  DenseMatrix diff = a.data() - b.data();
  diff = 0.5 * (diff + diff.adjoint());
  Eigen::SelfAdjointEigenSolver<DenseMatrix> solver(diff, Eigen::EigenvaluesOnly);
  return 0.5 * solver.eigenvalues().cwiseAbs().sum();
}

}  // namespace optosqueeze
