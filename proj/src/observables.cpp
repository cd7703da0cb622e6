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


#include "optosqueeze/observables.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace optosqueeze {

namespace {

void require_single(const DensityMatrix& rho) {
  if (rho.sig().modes() != 1) throw std::invalid_argument("single-mode density matrix required");
}

struct Moments {
  cplx a;     // <b>
  cplx a2;    // <b^2>
  double n;   // <b^dag b>
};

Moments moments(const DensityMatrix& rho) {
  const auto& m = rho.data();
  const Index d = m.rows();
  Moments out{0.0, 0.0, 0.0};
  // tr(rho b) = sum_k sqrt(k) rho(k, k-1)
  for (Index k = 1; k < d; ++k) {
    out.a += std::sqrt(static_cast<double>(k)) * m(k, k - 1);
    out.n += static_cast<double>(k) * m(k, k).real();
  }
  for (Index k = 2; k < d; ++k) {
    out.a2 += std::sqrt(static_cast<double>(k) * (k - 1)) * m(k, k - 2);
  }
  return out;
}

}  // namespace

double fidelity(const DensityMatrix& rho, const Vector& psi) {
  if (psi.size() != rho.dim()) throw std::invalid_argument("signature mismatch in fidelity");
  const double overlap = psi.dot(rho.data() * psi).real();
  return std::sqrt(std::max(0.0, overlap));
}

double fidelity(const DensityMatrix& rho, const StateVector& psi) {
  if (psi.sig != rho.sig()) throw std::invalid_argument("signature mismatch in fidelity");
  return fidelity(rho, psi.amplitudes);
}

double purity(const DensityMatrix& rho) {
  // tr(rho^2) = sum |rho_ij|^2 for Hermitian rho
  return rho.data().squaredNorm();
}

VariancePair quadrature_variances(const DensityMatrix& rho, double theta) {
  require_single(rho);
  const Moments mo = moments(rho);
  const cplx c = mo.a2 - mo.a * mo.a;
  const double nn = mo.n - std::norm(mo.a);
  const cplx ph = std::polar(1.0, -theta);
  const double x1 = 0.25 * (2.0 * (ph * c).real() + 2.0 * nn + 1.0);
  const double x2 = 0.25 * (-2.0 * (ph * c).real() + 2.0 * nn + 1.0);
  return {x1, x2};
}

QuadratureOptimum optimal_quadrature(const DensityMatrix& rho) {
  require_single(rho);
  const Moments mo = moments(rho);
  const cplx c = mo.a2 - mo.a * mo.a;
  const double nn = mo.n - std::norm(mo.a);
  QuadratureOptimum out;
  double theta = std::abs(c) > 0.0 ? std::arg(c) + std::numbers::pi : 0.0;
  theta = std::fmod(theta, 2.0 * std::numbers::pi);
  if (theta < 0.0) theta += 2.0 * std::numbers::pi;
  out.theta = theta;
  out.var_min = 0.25 * (2.0 * nn + 1.0 - 2.0 * std::abs(c));
  out.var_max = 0.25 * (2.0 * nn + 1.0 + 2.0 * std::abs(c));
  return out;
}

double squeezing_db(double var_x1) {
  if (!(var_x1 > 0.0)) throw std::invalid_argument("quadrature variance must be positive");
  return -10.0 * std::log10(4.0 * var_x1);
}

double mean_n(const DensityMatrix& rho) {
  require_single(rho);
  return moments(rho).n;
}

double g2(const DensityMatrix& rho) {
  require_single(rho);
  const auto& m = rho.data();
  double n = 0.0;
  double nn1 = 0.0;
  for (Index k = 1; k < m.rows(); ++k) {
    const double p = m(k, k).real();
    n += static_cast<double>(k) * p;
    nn1 += static_cast<double>(k) * (k - 1) * p;
  }
  if (!(n >= kG2MeanFloor)) throw std::invalid_argument("g2 undefined: mean occupation below 1e-10");
  return nn1 / (n * n);
}

double parity(const DensityMatrix& rho) {
  require_single(rho);
  double p = 0.0;
  for (Index k = 0; k < rho.dim(); ++k) p += (k % 2 == 0 ? 1.0 : -1.0) * rho.data()(k, k).real();
  return p;
}

DensityMatrix mechanical_state(const DensityMatrix& rho) {
  if (rho.sig().modes() == 1) return rho;
  if (rho.sig().modes() == 2) return partial_trace(rho, 1);
  throw std::invalid_argument("observables expect one or two modes");
}

ObservableRecord observe(double t, const DensityMatrix& rho, const Vector& target) {
  ObservableRecord rec;
  rec.t = t;
  if (target.size() > 0) rec.fidelity = fidelity(rho, target);
  rec.purity = purity(rho);
  const DensityMatrix mech = mechanical_state(rho);
  const auto v = quadrature_variances(mech, 0.0);
  rec.var_x1 = v.var_x1;
  rec.var_x2 = v.var_x2;
  rec.squeezing_db = v.var_x1 > 0.0 ? squeezing_db(v.var_x1) : std::numeric_limits<double>::quiet_NaN();
  const auto opt = optimal_quadrature(mech);
  rec.opt_theta = opt.theta;
  rec.opt_var = opt.var_min;
  rec.opt_squeezing_db = opt.var_min > 0.0 ? squeezing_db(opt.var_min) : std::numeric_limits<double>::quiet_NaN();
  rec.mean_n = mean_n(mech);
  rec.parity = parity(mech);
  try {
    rec.g2 = g2(mech);
  } catch (const std::invalid_argument&) {
    rec.g2 = std::numeric_limits<double>::quiet_NaN();
  }
  return rec;
}

}  // namespace optosqueeze
