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


#include "optosqueeze/evolve.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include <Eigen/SparseLU>
#include <boost/numeric/odeint.hpp>

#include "optosqueeze/errors.hpp"

namespace optosqueeze {

namespace odeint = boost::numeric::odeint;

namespace {

using OdeState = std::vector<cplx>;

// Turns raw vectors into validated samples and keeps the run statistics.
class Sampler {
 public:
  Sampler(const SpaceSignature& sig, const EvolveOptions& opts, const SampleCallback& cb, EvolutionResult& res)
      : sig_(sig), opts_(opts), cb_(cb), res_(res), per_mode_(static_cast<std::size_t>(sig.modes()), 0.0) {}

  void record(double t, const Vector& v) {
    const Index d = sig_.total_dim();
    DenseMatrix m = unvectorize(v, d);
    if (!m.allFinite()) throw NumericalError("non-finite density matrix during evolution");
    res_.max_trace_error = std::max(res_.max_trace_error, std::abs(m.trace() - 1.0));
    res_.max_hermiticity_correction =
        std::max(res_.max_hermiticity_correction, 0.5 * (m - m.adjoint()).cwiseAbs().maxCoeff());
    DensityMatrix rho = DensityMatrix::normalized(sig_, std::move(m));
    for (int k = 0; k < sig_.modes(); ++k) {
      const double pop = rho.top_level_population(k, edge_levels(sig_, k));
      per_mode_[static_cast<std::size_t>(k)] = std::max(per_mode_[static_cast<std::size_t>(k)], pop);
      res_.leakage = std::max(res_.leakage, pop);
    }
    res_.times.push_back(t);
    if (cb_) cb_(t, rho);
    if (opts_.keep_states) res_.states.push_back(std::move(rho));
  }

  void finish() {
    if (res_.leakage <= opts_.leakage_cap) return;
    res_.leakage_flagged = true;
    std::size_t worst = 0;
    for (std::size_t k = 1; k < per_mode_.size(); ++k) {
      if (per_mode_[k] > per_mode_[worst]) worst = k;
    }
    char buf[160];
    std::snprintf(buf, sizeof buf, "top-level population %.3g exceeds cap %.3g; increase N_%s", res_.leakage,
                  opts_.leakage_cap, sig_.labels()[worst].c_str());
    res_.advisory = buf;
  }

 private:
  const SpaceSignature& sig_;
  const EvolveOptions& opts_;
  const SampleCallback& cb_;
  EvolutionResult& res_;
  std::vector<double> per_mode_;
};

void check_grid(const std::vector<double>& grid, double t0) {
  if (grid.empty()) throw std::invalid_argument("time grid is empty");
  for (std::size_t k = 0; k < grid.size(); ++k) {
    if (!std::isfinite(grid[k])) throw std::invalid_argument("time grid contains a non-finite value");
    if (grid[k] < t0) throw std::invalid_argument("time grid starts before the initial time");
    if (k > 0 && !(grid[k] > grid[k - 1])) throw std::invalid_argument("time grid must be strictly increasing");
  }
}

double column_norm(const SparseMatrix& m) {
  double worst = 0.0;
  for (Index j = 0; j < m.outerSize(); ++j) {
    double s = 0.0;
    for (SparseMatrix::InnerIterator it(m, j); it; ++it) s += std::abs(it.value());
    worst = std::max(worst, s);
  }
  return worst;
}

// Adaptive DOPRI5 between ta and tb; samples in `grid[next..]` that fall in
// (ta, tb] are recorded.
void run_dopri(const TimeDependentLiouvillian& l, Vector& y, double ta, double tb, const std::vector<double>& grid,
               std::size_t& next, const EvolveOptions& opts, Sampler& sampler, EvolutionResult& res) {
  const Index n = y.size();
  Vector work(n);
  long evals = 0;
  auto rhs = [&](const OdeState& x, OdeState& dx, double t) {
    Eigen::Map<const Vector> xv(x.data(), n);
    Eigen::Map<Vector> dv(dx.data(), n);
    l.apply(t, xv, work);
    dv = work;
    ++evals;
  };
  std::vector<double> times{ta};
  std::vector<bool> is_sample{false};
  while (next < grid.size() && grid[next] <= tb) {
    if (grid[next] > ta) {
      times.push_back(grid[next]);
      is_sample.push_back(true);
    }
    ++next;
  }
  if (times.back() < tb) {
    times.push_back(tb);
    is_sample.push_back(false);
  }

  OdeState x(y.data(), y.data() + n);
  std::size_t seen = 0;
  auto observer = [&](const OdeState& s, double t) {
    if (is_sample[seen++]) sampler.record(t, Eigen::Map<const Vector>(s.data(), n));
  };
  const double span = tb - ta;
  const double norm = std::max(column_norm(l.static_part), 1e-300);
  const double dt0 = opts.initial_step > 0.0 ? opts.initial_step : std::min(span, 0.01 / norm);
  try {
    if (opts.max_step > 0.0) {
      auto stepper = odeint::make_dense_output(opts.atol, opts.rtol, opts.max_step, odeint::runge_kutta_dopri5<OdeState>());
      odeint::integrate_times(stepper, rhs, x, times.begin(), times.end(), dt0, observer,
                              odeint::max_step_checker(static_cast<int>(std::min<long>(opts.max_steps, 2000000000L))));
    } else {
      auto stepper = odeint::make_dense_output(opts.atol, opts.rtol, odeint::runge_kutta_dopri5<OdeState>());
      odeint::integrate_times(stepper, rhs, x, times.begin(), times.end(), dt0, observer,
                              odeint::max_step_checker(static_cast<int>(std::min<long>(opts.max_steps, 2000000000L))));
    }
  } catch (const NumericalError&) {
    throw;
  } catch (const std::exception& e) {
    throw NumericalError(std::string("DOPRI5 integration failed: ") + e.what());
  }
  y = Eigen::Map<const Vector>(x.data(), n);
  res.steps += evals / 6;
}

// TR-BDF2 written as a three-stage ESDIRK with an embedded third-order
// estimate; the estimate is filtered through (I - d h L)^{-1}.
void run_trbdf2(const SparseMatrix& L, Vector y, double t0, const std::vector<double>& grid, std::size_t next,
                const EvolveOptions& opts, Sampler& sampler, EvolutionResult& res) {
  const double gam = 2.0 - std::sqrt(2.0);
  const double d = gam / 2.0;
  const double w = std::sqrt(2.0) / 4.0;
  const double e0 = w - (1.0 - w) / 3.0;
  const double e2 = w - (3.0 * w + 1.0) / 3.0;
  const double e3 = d - d / 3.0;

  const Index n = L.rows();
  const SparseMatrix id = sparse_identity(n);
  Eigen::SparseLU<SparseMatrix, Eigen::COLAMDOrdering<int>> lu;
  double h_fact = -1.0;
  auto factor = [&](double hh) {
    SparseMatrix m = id - cplx(d * hh) * L;
    m.makeCompressed();
    lu.compute(m);
    if (lu.info() != Eigen::Success) throw NumericalError("TR-BDF2 factorization failed");
    h_fact = hh;
    ++res.factorizations;
  };

  const double t_end = grid.back();
  const double lnorm = std::max(column_norm(L), 1e-300);
  double h = opts.initial_step > 0.0 ? opts.initial_step : 0.1 * std::cbrt(opts.rtol) / lnorm;
  if (opts.max_step > 0.0) h = std::min(h, opts.max_step);
  h = std::min(h, t_end - t0);

  double t = t0;
  Vector f0 = L * y;
  Vector rhs(n), z2(n), f2(n), z3(n), f3(n), est(n);
  while (next < grid.size()) {
    double h_try = std::min(h, t_end - t);
    if (t + h_try >= t_end - 1e-12 * std::max(1.0, std::abs(t_end))) h_try = t_end - t;
    if (h_try != h_fact) factor(h_try);

    rhs = y + cplx(d * h_try) * f0;
    z2 = lu.solve(rhs);
    f2 = L * z2;
    rhs = y + cplx(w * h_try) * (f0 + f2);
    z3 = lu.solve(rhs);
    f3 = L * z3;
    rhs = cplx(h_try) * (e0 * f0 + e2 * f2 + e3 * f3);
    est = lu.solve(rhs);

    const double scale = opts.atol + opts.rtol * std::max(y.norm(), z3.norm());
    const double errn = est.norm() / scale;
    if (!std::isfinite(errn)) throw NumericalError("TR-BDF2 produced a non-finite state");

    if (errn <= 1.0) {
      const double t_new = (h_try == t_end - t) ? t_end : t + h_try;
      while (next < grid.size() && grid[next] <= t_new) {
        const double s = grid[next];
        if (s == t_new) {
          sampler.record(s, z3);
        } else {
          const double th = (s - t) / h_try;
          const double th2 = th * th;
          const double th3 = th2 * th;
          const Vector ys = (2 * th3 - 3 * th2 + 1) * y + cplx((th3 - 2 * th2 + th) * h_try) * f0 +
                            (-2 * th3 + 3 * th2) * z3 + cplx((th3 - th2) * h_try) * f3;
          sampler.record(s, ys);
        }
        ++next;
      }
      y.swap(z3);
      f0.swap(f3);
      t = t_new;
      ++res.steps;
      const double fac = errn > 0.0 ? std::min(5.0, 0.9 * std::pow(errn, -1.0 / 3.0)) : 5.0;
      // refactoring is the dominant cost, so small changes are ignored
      if (fac < 1.0 || fac >= 1.5) h = std::max(h_try, h) * std::min(fac, 4.0);
      if (fac < 1.0) h = h_try * fac;
      if (opts.max_step > 0.0) h = std::min(h, opts.max_step);
    } else {
      ++res.rejected;
      h = h_try * std::max(0.2, 0.9 * std::pow(errn, -1.0 / 3.0));
      if (h < 1e-14 * std::max(1.0, std::abs(t))) throw NumericalError("step size underflow");
    }
    if (res.steps + res.rejected > opts.max_steps) throw NumericalError("step limit exceeded");
  }
}

// Dense one-period propagator of a periodic generator, built column block
// by column block.
DenseMatrix period_propagator(const TimeDependentLiouvillian& l, const EvolveOptions& opts, EvolutionResult& res) {
  const Index n = l.static_part.rows();
  const double period = l.period;
  DenseMatrix p(n, n);
  const Index block = 128;
  for (Index c0 = 0; c0 < n; c0 += block) {
    const Index bs = std::min(block, n - c0);
    OdeState x(static_cast<std::size_t>(n * bs), cplx(0.0));
    for (Index j = 0; j < bs; ++j) x[static_cast<std::size_t>(j * n + c0 + j)] = 1.0;
    long evals = 0;
    auto rhs = [&](const OdeState& xs, OdeState& dxs, double t) {
      Eigen::Map<const DenseMatrix> X(xs.data(), n, bs);
      Eigen::Map<DenseMatrix> dX(dxs.data(), n, bs);
      dX = l.static_part * X;
      for (const auto& piece : l.pieces) {
        const cplx ph = std::polar(1.0, piece.nu * t);
        dX += ph * (piece.plus * X);
        dX += std::conj(ph) * (piece.minus * X);
      }
      ++evals;
    };
    auto stepper = odeint::make_controlled(opts.atol, opts.rtol, odeint::runge_kutta_dopri5<OdeState>());
    try {
      odeint::integrate_adaptive(stepper, rhs, x, 0.0, period, period / 100.0);
    } catch (const std::exception& e) {
      throw NumericalError(std::string("period propagator integration failed: ") + e.what());
    }
    p.middleCols(c0, bs) = Eigen::Map<const DenseMatrix>(x.data(), n, bs);
    res.steps += evals / 6;
  }
  return p;
}

DenseMatrix matrix_power(const DenseMatrix& p, long m) {
  DenseMatrix result = DenseMatrix::Identity(p.rows(), p.cols());
  DenseMatrix base = p;
  bool first = true;
  while (m > 0) {
    if (m & 1) {
      if (first) {
        result = base;
        first = false;
      } else {
        result = (result * base).eval();
      }
    }
    m >>= 1;
    if (m > 0) base = (base * base).eval();
  }
  return result;
}

// Liouville-space indices reachable from the support of y through the
// sparsity pattern of every generator piece. The dynamics never leaves this
// set (parity sectors, for instance), so the propagator can be built on it.
std::vector<Index> reachable_support(const TimeDependentLiouvillian& l, const Vector& y) {
  const Index n = y.size();
  std::vector<const SparseMatrix*> mats{&l.static_part};
  for (const auto& piece : l.pieces) {
    mats.push_back(&piece.plus);
    mats.push_back(&piece.minus);
  }
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::vector<Index> stack;
  for (Index i = 0; i < n; ++i) {
    if (y(i) != cplx(0.0)) {
      seen[static_cast<std::size_t>(i)] = 1;
      stack.push_back(i);
    }
  }
  while (!stack.empty()) {
    const Index j = stack.back();
    stack.pop_back();
    for (const SparseMatrix* m : mats) {
      for (SparseMatrix::InnerIterator it(*m, j); it; ++it) {
        if (!seen[static_cast<std::size_t>(it.row())]) {
          seen[static_cast<std::size_t>(it.row())] = 1;
          stack.push_back(it.row());
        }
      }
    }
  }
  std::vector<Index> keep;
  for (Index i = 0; i < n; ++i) {
    if (seen[static_cast<std::size_t>(i)]) keep.push_back(i);
  }
  return keep;
}

SparseMatrix restrict_to(const SparseMatrix& m, const std::vector<Index>& keep, const std::vector<Index>& where) {
  std::vector<Eigen::Triplet<cplx>> trip;
  for (std::size_t c = 0; c < keep.size(); ++c) {
    for (SparseMatrix::InnerIterator it(m, keep[c]); it; ++it) {
      const Index r = where[static_cast<std::size_t>(it.row())];
      if (r >= 0) trip.emplace_back(r, static_cast<Index>(c), it.value());
    }
  }
  SparseMatrix out(static_cast<Index>(keep.size()), static_cast<Index>(keep.size()));
  out.setFromTriplets(trip.begin(), trip.end());
  return out;
}

void run_floquet(const TimeDependentLiouvillian& full, Vector y_full, double t0, const std::vector<double>& grid,
                 std::size_t next, const EvolveOptions& opts, Sampler& sampler, EvolutionResult& res) {
  const double period = full.period;
  if (!(period > 0.0)) throw std::invalid_argument("Floquet integrator needs a periodic generator");

  auto period_index = [period](double t) {
    long k = static_cast<long>(std::floor(t / period + 1e-9));
    return std::max(0L, k);
  };

  // Bring the state onto the stroboscopic lattice first.
  long n_cur = period_index(t0);
  if (std::abs(t0 - n_cur * period) > 1e-12 * std::max(1.0, period)) {
    ++n_cur;
    run_dopri(full, y_full, t0, n_cur * period, grid, next, opts, sampler, res);
  }

  const std::vector<Index> keep = reachable_support(full, y_full);
  std::vector<Index> where(static_cast<std::size_t>(y_full.size()), -1);
  for (std::size_t k = 0; k < keep.size(); ++k) where[static_cast<std::size_t>(keep[k])] = static_cast<Index>(k);
  TimeDependentLiouvillian l;
  l.sig = full.sig;
  l.period = full.period;
  l.static_part = restrict_to(full.static_part, keep, where);
  for (const auto& piece : full.pieces) {
    l.pieces.push_back({restrict_to(piece.plus, keep, where), restrict_to(piece.minus, keep, where), piece.nu});
  }
  Vector y(static_cast<Index>(keep.size()));
  for (std::size_t k = 0; k < keep.size(); ++k) y(static_cast<Index>(k)) = y_full(keep[k]);
  auto emit = [&](double s, const Vector& v) {
    Vector out = Vector::Zero(y_full.size());
    for (std::size_t k = 0; k < keep.size(); ++k) out(keep[k]) = v(static_cast<Index>(k));
    sampler.record(s, out);
  };

  const DenseMatrix p = period_propagator(l, opts, res);
  long cached_m = -1;
  DenseMatrix q;
  while (next < grid.size()) {
    const double s = grid[next];
    const long k = period_index(s);
    const long m = k - n_cur;
    if (m > 0) {
      if (m <= 4) {
        for (long j = 0; j < m; ++j) y = (p * y).eval();
      } else {
        if (m != cached_m) {
          q = matrix_power(p, m);
          cached_m = m;
        }
        y = (q * y).eval();
      }
      n_cur = k;
    }
    const double tau = s - n_cur * period;
    if (tau > 1e-12 * period) {
      Vector tail = y;
      std::size_t dummy = grid.size();
      run_dopri(l, tail, n_cur * period, s, grid, dummy, opts, sampler, res);
      emit(s, tail);
    } else {
      emit(s, y);
    }
    ++next;
  }
}

}  // namespace

Integrator parse_integrator(const std::string& name) {
  if (name == "auto") return Integrator::Auto;
  if (name == "dopri5") return Integrator::Dopri5;
  if (name == "trbdf2") return Integrator::TrBdf2;
  if (name == "floquet") return Integrator::Floquet;
  throw std::invalid_argument("unknown integrator '" + name + "' (auto, dopri5, trbdf2, floquet)");
}

std::string to_string(Integrator m) {
  switch (m) {
    case Integrator::Auto:
      return "auto";
    case Integrator::Dopri5:
      return "dopri5";
    case Integrator::TrBdf2:
      return "trbdf2";
    case Integrator::Floquet:
      return "floquet";
  }
  return "auto";
}

EvolutionResult evolve(const TimeDependentLiouvillian& l, const DensityMatrix& rho0, const std::vector<double>& t_grid,
                       const EvolveOptions& opts, const SampleCallback& on_sample) {
  if (rho0.sig() != l.sig) throw std::invalid_argument("initial state signature does not match the generator");
  if (!(opts.rtol > 0.0) || !(opts.atol >= 0.0)) throw std::invalid_argument("tolerances must be positive");
  check_grid(t_grid, opts.t0);

  EvolutionResult res;
  Sampler sampler(l.sig, opts, on_sample, res);
  Vector y = vectorize(rho0);
  std::size_t next = 0;
  while (next < t_grid.size() && t_grid[next] == opts.t0) {
    sampler.record(opts.t0, y);
    ++next;
  }
  if (next < t_grid.size()) {
    Integrator method = opts.method;
    if (method == Integrator::Auto) method = l.time_dependent() ? Integrator::Dopri5 : Integrator::TrBdf2;
    // a static generator is trivially periodic; sweeps reaching omega = inf land here
    if (method == Integrator::Floquet && !l.time_dependent()) method = Integrator::TrBdf2;
    switch (method) {
      case Integrator::TrBdf2:
        if (l.time_dependent()) throw std::invalid_argument("TR-BDF2 is only available for static generators");
        run_trbdf2(l.static_part, y, opts.t0, t_grid, next, opts, sampler, res);
        break;
      case Integrator::Floquet:
        run_floquet(l, y, opts.t0, t_grid, next, opts, sampler, res);
        break;
      default:
        run_dopri(l, y, opts.t0, t_grid.back(), t_grid, next, opts, sampler, res);
        break;
    }
  }
  sampler.finish();
  return res;
}

EvolutionResult evolve(const Liouvillian& l, const DensityMatrix& rho0, const std::vector<double>& t_grid,
                       const EvolveOptions& opts, const SampleCallback& on_sample) {
  return evolve(as_time_dependent(l), rho0, t_grid, opts, on_sample);
}

EvolutionResult evolve(const HamiltonianSpec& h, const std::vector<CollapseOp>& collapse, const DensityMatrix& rho0,
                       const std::vector<double>& t_grid, const EvolveOptions& opts, const SampleCallback& on_sample) {
  return evolve(build_liouvillian(h, collapse), rho0, t_grid, opts, on_sample);
}

std::vector<double> linear_grid(double t0, double t1, int n) {
  if (n < 1) throw std::invalid_argument("grid needs at least one point");
  if (n == 1) return {t1};
  if (!(t1 > t0)) throw std::invalid_argument("grid end must exceed its start");
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) out[static_cast<std::size_t>(k)] = t0 + (t1 - t0) * k / (n - 1);
  out.back() = t1;
  return out;
}

std::vector<double> log_grid(double t_min, double t_max, int n) {
  if (n < 2) throw std::invalid_argument("log grid needs at least two points");
  if (!(t_min > 0.0) || !(t_max > t_min)) throw std::invalid_argument("log grid needs 0 < t_min < t_max");
  std::vector<double> out{0.0};
  const double a = std::log(t_min);
  const double b = std::log(t_max);
  for (int k = 0; k < n; ++k) out.push_back(std::exp(a + (b - a) * k / (n - 1)));
  out.back() = t_max;
  return out;
}

}  // namespace optosqueeze
