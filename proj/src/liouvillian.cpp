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


#include "optosqueeze/liouvillian.hpp"

#include <cmath>
#include <stdexcept>

namespace optosqueeze {

namespace {

const cplx kMinusI(0.0, -1.0);

SparseMatrix transpose_of(const SparseMatrix& m) { return SparseMatrix(m.transpose()); }

SparseMatrix conj_of(const SparseMatrix& m) { return SparseMatrix(m.conjugate()); }

void require_sig(const SpaceSignature& expect, const SpaceSignature& got) {
  if (expect != got) {
    throw std::invalid_argument("signature mismatch: " + expect.describe() + " vs " + got.describe());
  }
}

}  // namespace

SparseMatrix left_right_superop(const SparseMatrix& left, const SparseMatrix& right) {
  const Index d = left.rows();
  const SparseMatrix id = sparse_identity(d);
  SparseMatrix out = kron(id, left) - kron(transpose_of(right), id);
  out *= kMinusI;
  out.prune(cplx(0.0));
  return out;
}

SparseMatrix commutator_superop(const SparseMatrix& h) { return left_right_superop(h, h); }

SparseMatrix dissipator_superop(const SparseMatrix& c, double rate) {
  const Index d = c.rows();
  const SparseMatrix id = sparse_identity(d);
  const SparseMatrix cdc = SparseMatrix(c.adjoint()) * c;
  SparseMatrix out = 2.0 * kron(conj_of(c), c) - kron(id, cdc) - kron(transpose_of(cdc), id);
  out *= cplx(rate);
  out.prune(cplx(0.0));
  return out;
}

Liouvillian build_liouvillian(const FockOperator& h, const std::vector<CollapseOp>& collapse) {
  Liouvillian l;
  l.sig = h.sig();
  l.matrix = commutator_superop(h.data());
  for (const auto& c : collapse) {
    require_sig(l.sig, c.op.sig());
    if (!(c.rate >= 0.0)) throw std::invalid_argument("collapse rate must be >= 0");
    if (c.rate == 0.0) continue;
    l.matrix += dissipator_superop(c.op.data(), c.rate);
  }
  l.matrix.prune(cplx(0.0));
  l.matrix.makeCompressed();
  return l;
}

Liouvillian full_liouvillian(const SystemParams& p) {
  return build_liouvillian(resonant_hamiltonian(p), collapse_ops(p));
}

Liouvillian effective_liouvillian(const SystemParams& p) {
  const auto sig = p.mechanical_signature();
  return build_liouvillian(FockOperator::zero(sig), effective_collapse_ops(p));
}

double trace_preservation_error(const Liouvillian& l) {
  const Index d = l.dim();
  double worst = 0.0;
  for (Index j = 0; j < l.matrix.outerSize(); ++j) {
    cplx sum = 0.0;
    for (SparseMatrix::InnerIterator it(l.matrix, j); it; ++it) {
      if (it.row() % (d + 1) == 0) sum += it.value();
    }
    worst = std::max(worst, std::abs(sum));
  }
  return worst;
}

void TimeDependentLiouvillian::apply(double t, Eigen::Ref<const Vector> v, Eigen::Ref<Vector> out) const {
  out.noalias() = static_part * v;
  for (const auto& p : pieces) {
    const cplx ph = std::polar(1.0, p.nu * t);
    out.noalias() += ph * (p.plus * v);
    out.noalias() += std::conj(ph) * (p.minus * v);
  }
}

SparseMatrix TimeDependentLiouvillian::at(double t) const {
  SparseMatrix out = static_part;
  for (const auto& p : pieces) {
    const cplx ph = std::polar(1.0, p.nu * t);
    out += ph * p.plus + std::conj(ph) * p.minus;
  }
  return out;
}

TimeDependentLiouvillian build_liouvillian(const HamiltonianSpec& h, const std::vector<CollapseOp>& collapse) {
  TimeDependentLiouvillian out;
  const Liouvillian base = build_liouvillian(h.static_part, collapse);
  out.sig = base.sig;
  out.static_part = base.matrix;
  // Terms sharing a frequency are summed first so each frequency costs two products.
  std::vector<TimeTerm> merged;
  for (const auto& term : h.time_terms) {
    require_sig(out.sig, term.op.sig());
    bool found = false;
    for (auto& m : merged) {
      if (m.nu == term.nu) {
        m.op += term.op;
        found = true;
        break;
      }
    }
    if (!found) merged.push_back(term);
  }
  for (const auto& term : merged) {
    const SparseMatrix o = term.op.data();
    const SparseMatrix od = SparseMatrix(o.adjoint());
    TimeDependentLiouvillian::Piece piece;
    piece.plus = left_right_superop(o, o);
    piece.minus = left_right_superop(od, od);
    piece.plus.makeCompressed();
    piece.minus.makeCompressed();
    piece.nu = term.nu;
    out.pieces.push_back(std::move(piece));
  }
  out.period = h.period();
  return out;
}

TimeDependentLiouvillian as_time_dependent(const Liouvillian& l) {
  TimeDependentLiouvillian out;
  out.sig = l.sig;
  out.static_part = l.matrix;
  return out;
}

}  // namespace optosqueeze
