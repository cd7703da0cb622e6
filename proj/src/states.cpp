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


#include "optosqueeze/states.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>
#include <string>

namespace optosqueeze {

namespace {

constexpr int kMaxTruncationSearch = 1 << 20;

// Coefficient generator for the unnormalized |xi, n>, n in {0,1}, with
// c_n = 1. Only the magnitude path matters for leakage, so the sums below
// use |c_k|^2.
class SqueezedSeries {
 public:
  SqueezedSeries(const SqueezeParam& xi, int n) : n_(n), mu_(xi.mu()), nu_(xi.nu()) {
    if (n != 0 && n != 1) throw std::invalid_argument("squeezed number state needs n in {0, 1}");
    prev2_ = 0.0;
    prev_ = 1.0;
    index_ = n;
  }

  int index() const { return index_; }
  cplx value() const { return prev_; }

  // Advances to the next nonzero coefficient (index + 2).
  void step() {
    const double k = index_;
    cplx next;
    if (n_ == 0) {
      // c_{k+2} = -(nu/mu) sqrt((k+1)/(k+2)) c_k
      next = -(nu_ / mu_) * std::sqrt((k + 1.0) / (k + 2.0)) * prev_;
    } else {
      // mu^2 sqrt((k+1)(k+2)) c_{k+2} + mu nu (2k+1) c_k + nu^2 sqrt(k(k-1)) c_{k-2} = 0
      next = -(mu_ * nu_ * (2.0 * k + 1.0) * prev_ + nu_ * nu_ * std::sqrt(k * (k - 1.0)) * prev2_) /
             (mu_ * mu_ * std::sqrt((k + 1.0) * (k + 2.0)));
    }
    prev2_ = prev_;
    prev_ = next;
    index_ += 2;
  }

  // Squared norm of the untruncated series.
  double total_weight() const {
    const double c = mu_;
    return n_ == 0 ? c : c * c * c;
  }

 private:
  int n_;
  double mu_;
  cplx nu_;
  cplx prev2_;
  cplx prev_;
  int index_;
};

StateVector build_squeezed(const SpaceSignature& sig, int mode, const SqueezeParam& xi, int n,
                           double leakage_cap) {
  const int dim = sig.dim(mode);
  if (!(leakage_cap >= 0.0)) throw std::invalid_argument("leakage cap must be non-negative");
  if (n >= dim) throw std::invalid_argument("truncation too small for |xi, n>");

  SqueezedSeries series(xi, n);
  Vector local = Vector::Zero(dim);
  double captured = 0.0;
  while (series.index() < dim) {
    local(series.index()) = series.value();
    captured += std::norm(series.value());
    series.step();
  }
  const double leakage = std::max(0.0, 1.0 - captured / series.total_weight());
  if (leakage > leakage_cap) {
    const int need = required_truncation(xi, n, leakage_cap);
    char buf[160];
    std::snprintf(buf, sizeof buf, "truncation leakage %.3g exceeds cap %.3g; N_b >= %d required", leakage,
                  leakage_cap, need);
    throw std::invalid_argument(buf);
  }
  local /= std::sqrt(captured);

  // Place on `mode` with every other mode in vacuum.
  StateVector out;
  out.sig = sig;
  out.amplitudes = Vector::Zero(sig.total_dim());
  std::vector<int> occ(static_cast<std::size_t>(sig.modes()), 0);
  for (int k = 0; k < dim; ++k) {
    if (local(k) == cplx(0.0)) continue;
    occ[static_cast<std::size_t>(mode)] = k;
    out.amplitudes(sig.flat_index(occ)) = local(k);
  }
  out.leakage = leakage;
  return out;
}

}  // namespace

SqueezeParam::SqueezeParam(double r, double theta) : magnitude(r), phase(theta) {
  if (!(r >= 0.0) || !std::isfinite(r)) throw std::invalid_argument("squeeze magnitude must be >= 0");
  if (!std::isfinite(theta)) throw std::invalid_argument("squeeze phase must be finite");
  constexpr double two_pi = 2.0 * std::numbers::pi;
  phase = std::fmod(theta, two_pi);
  if (phase < 0.0) phase += two_pi;
}

double SqueezeParam::mu() const { return std::cosh(magnitude); }

cplx SqueezeParam::nu() const { return std::polar(std::sinh(magnitude), phase); }

FockOperator bogoliubov_op(const SpaceSignature& sig, int mode, const SqueezeParam& xi) {
  const FockOperator b = annihilation(sig, mode);
  return cplx(xi.mu()) * b + xi.nu() * b.adjoint();
}

SparseMatrix bogoliubov_squared_local(int dim, const SqueezeParam& xi) {
  const auto big = SpaceSignature::single(dim + 2);
  const FockOperator beta = bogoliubov_op(big, 0, xi);
  const SparseMatrix sq = beta.data() * beta.data();
  SparseMatrix out = sq.topLeftCorner(dim, dim);
  out.prune(cplx(0.0));
  out.makeCompressed();
  return out;
}

FockOperator bogoliubov_squared(const SpaceSignature& sig, int mode, const SqueezeParam& xi) {
  return embed(sig, mode, bogoliubov_squared_local(sig.dim(mode), xi));
}

int required_truncation(const SqueezeParam& xi, int n, double cap) {
  SqueezedSeries series(xi, n);
  double captured = 0.0;
  while (series.index() < kMaxTruncationSearch) {
    captured += std::norm(series.value());
    if (1.0 - captured / series.total_weight() <= cap) return series.index() + 1;
    series.step();
  }
  throw std::invalid_argument("no practical truncation reaches the requested leakage cap");
}

StateVector squeezed_vacuum(const SpaceSignature& sig, int mode, const SqueezeParam& xi, double leakage_cap) {
  return build_squeezed(sig, mode, xi, 0, leakage_cap);
}

StateVector squeezed_one(const SpaceSignature& sig, int mode, const SqueezeParam& xi, double leakage_cap) {
  return build_squeezed(sig, mode, xi, 1, leakage_cap);
}

StateVector squeezed_number(const SpaceSignature& sig, int mode, const SqueezeParam& xi, int n,
                            double leakage_cap) {
  return build_squeezed(sig, mode, xi, n, leakage_cap);
}

StateVector number_state(const SpaceSignature& sig, std::span<const int> occupation) {
  StateVector out;
  out.sig = sig;
  out.amplitudes = Vector::Zero(sig.total_dim());
  out.amplitudes(sig.flat_index(occupation)) = 1.0;
  return out;
}

StateVector product(const StateVector& lhs, const StateVector& rhs) {
  StateVector out;
  out.sig = concat(lhs.sig, rhs.sig);
  out.amplitudes = Vector(out.sig.total_dim());
  const Index nr = rhs.amplitudes.size();
  for (Index i = 0; i < lhs.amplitudes.size(); ++i) {
    out.amplitudes.segment(i * nr, nr) = lhs.amplitudes(i) * rhs.amplitudes;
  }
  out.leakage = 1.0 - (1.0 - lhs.leakage) * (1.0 - rhs.leakage);
  return out;
}

VariancePair analytic_variances(const SqueezeParam& xi, int n) {
  if (n < 0) throw std::invalid_argument("number state index must be >= 0");
  const double f = (2.0 * n + 1.0) / 4.0;
  return {f * std::exp(-2.0 * xi.magnitude), f * std::exp(2.0 * xi.magnitude)};
}

double analytic_mean_n(const SqueezeParam& xi, int n) {
  if (n < 0) throw std::invalid_argument("number state index must be >= 0");
  const double s = std::sinh(xi.magnitude);
  return n * std::cosh(2.0 * xi.magnitude) + s * s;
}

double analytic_g2(const SqueezeParam& xi, int n) {
  if (n < 0) throw std::invalid_argument("number state index must be >= 0");
  if (xi.phase != 0.0) throw std::invalid_argument("closed-form g2 is only available for theta = 0");
  const double r = xi.magnitude;
  const double mean = analytic_mean_n(xi, n);
  if (!(mean > 0.0)) throw std::invalid_argument("g2 undefined for vacuum");
  const double ch = std::cosh(r);
  const double sh = std::sinh(r);
  const double c2 = std::cosh(2.0 * r);
  const double nn = n;
  return 1.0 - c2 * nn / mean +
         sh * sh / (mean * mean) * (2.0 * nn * nn * ch * ch + 2.0 * nn * ch * ch + c2);
}

double exact_g2(const SqueezeParam& xi, int n) {
  if (n < 0) throw std::invalid_argument("number state index must be >= 0");
  const double mean = analytic_mean_n(xi, n);
  if (!(mean > 0.0)) throw std::invalid_argument("g2 undefined for vacuum");
  const double c = std::pow(std::cosh(xi.magnitude), 2);
  const double s = std::pow(std::sinh(xi.magnitude), 2);
  const double nn = n;
  const double second = c * c * nn * (nn - 1.0) + c * s * (2.0 * nn + 1.0) * (2.0 * nn + 1.0) +
                        s * s * (nn + 1.0) * (nn + 2.0);
  return second / (mean * mean);
}

}  // namespace optosqueeze
