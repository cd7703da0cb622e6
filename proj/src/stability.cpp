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


#include "optosqueeze/stability.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include <boost/numeric/odeint.hpp>

#include "optosqueeze/errors.hpp"
#include "optosqueeze/parallel.hpp"

namespace optosqueeze {

namespace odeint = boost::numeric::odeint;

double MathieuParams::omega_R() const {
  return omega_R2 >= 0.0 ? std::sqrt(omega_R2) : std::numeric_limits<double>::quiet_NaN();
}

MathieuParams MathieuParams::from_axes(double omega_R, double eps_tilde, double gamma_tilde) {
  MathieuParams p;
  p.omega_R2 = omega_R * omega_R;
  p.eps_tilde = eps_tilde;
  p.gamma_tilde = gamma_tilde;
  p.omega_tilde = std::sqrt(p.omega_R2 + gamma_tilde * gamma_tilde / 4.0);
  return p;
}

MathieuParams to_mathieu(double omega, double Omega, double eps, double gamma) {
  if (!(Omega > 0.0)) throw std::invalid_argument("modulation frequency Omega must be > 0");
  MathieuParams p;
  p.omega_tilde = 2.0 * omega / Omega;
  p.eps_tilde = 2.0 * eps / (Omega * Omega);
  p.gamma_tilde = 2.0 * gamma / Omega;
  p.omega_R2 = p.omega_tilde * p.omega_tilde - p.gamma_tilde * p.gamma_tilde / 4.0;
  return p;
}

Eigen::Matrix2d monodromy(const MathieuParams& p, double rtol) {
  using State = std::array<double, 2>;
  const double w2 = p.omega_R2;
  const double e2 = 2.0 * p.eps_tilde;
  auto rhs = [w2, e2](const State& y, State& dy, double t) {
    dy[0] = y[1];
    dy[1] = -(w2 + e2 * std::cos(2.0 * t)) * y[0];
  };
  Eigen::Matrix2d m;
  for (int col = 0; col < 2; ++col) {
    State y = {col == 0 ? 1.0 : 0.0, col == 1 ? 1.0 : 0.0};
    auto stepper = odeint::make_controlled<odeint::runge_kutta_dopri5<State>>(rtol * 1e-2, rtol);
    try {
      odeint::integrate_adaptive(stepper, rhs, y, 0.0, std::numbers::pi, 1e-3);
    } catch (const std::exception& e) {
      throw NumericalError(std::string("monodromy integration failed: ") + e.what());
    }
    m(0, col) = y[0];
    m(1, col) = y[1];
  }
  return m;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Stable:
      return "stable";
    case Verdict::Marginal:
      return "marginal";
    case Verdict::Unstable:
      return "unstable";
  }
  return "unknown";
}

StabilityPoint classify(const MathieuParams& p) {
  const Eigen::Matrix2d m = monodromy(p);
  StabilityPoint out;
  out.params = p;
  const double tr = m.trace();
  out.determinant = m.determinant();
  const std::complex<double> disc = std::sqrt(std::complex<double>(tr * tr - 4.0 * out.determinant));
  out.multipliers = {0.5 * (tr + disc), 0.5 * (tr - disc)};
  out.max_multiplier = std::max(std::abs(out.multipliers[0]), std::abs(out.multipliers[1]));

  out.y_verdict = out.max_multiplier > 1.0 + kMultiplierTolerance ? Verdict::Unstable : Verdict::Stable;
  const double threshold = std::exp(p.gamma_tilde * std::numbers::pi / 2.0) + kMultiplierTolerance;
  if (out.max_multiplier <= threshold) {
    out.verdict = Verdict::Stable;
  } else if (out.max_multiplier <= threshold + kMarginalBand) {
    out.verdict = Verdict::Marginal;
  } else {
    out.verdict = Verdict::Unstable;
  }
  return out;
}

StabilityMap stability_map(Range omega_R, Range eps_tilde, int nx, int ny, double gamma_tilde, int workers) {
  if (nx <= 0 || ny <= 0) throw std::invalid_argument("stability map resolution must be positive");
  if (!(omega_R.hi > omega_R.lo) || !(eps_tilde.hi >= eps_tilde.lo)) {
    throw std::invalid_argument("stability map range is empty");
  }
  StabilityMap map;
  map.omega_R = omega_R;
  map.eps_tilde = eps_tilde;
  map.nx = nx;
  map.ny = ny;
  map.gamma_tilde = gamma_tilde;
  map.points.resize(static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny));

  const double dx = (omega_R.hi - omega_R.lo) / nx;
  const double dy = (eps_tilde.hi - eps_tilde.lo) / ny;
  std::vector<double> xs(static_cast<std::size_t>(nx));
  for (int i = 0; i < nx; ++i) {
    double x = omega_R.lo + (i + 0.5) * dx;
    if (std::abs(x - std::round(x)) < 1e-12 * std::max(1.0, std::abs(x))) x += 0.5 * dx;
    xs[static_cast<std::size_t>(i)] = x;
  }
  parallel_for(map.points.size(), [&](std::size_t k) {
    const int i = static_cast<int>(k % static_cast<std::size_t>(nx));
    const int j = static_cast<int>(k / static_cast<std::size_t>(nx));
    const double e = eps_tilde.lo + (j + 0.5) * dy;
    map.points[k] = classify(MathieuParams::from_axes(xs[static_cast<std::size_t>(i)], e, gamma_tilde));
  }, workers);
  return map;
}

void write_stability_csv(std::ostream& os, const StabilityMap& map) {
  os << "omega_R,eps_tilde,max_multiplier,verdict\n";
  char buf[128];
  for (const auto& pt : map.points) {
    std::snprintf(buf, sizeof buf, "%.10g,%.10g,%.12g,", pt.params.omega_R(), pt.params.eps_tilde,
                  pt.max_multiplier);
    os << buf << to_string(pt.verdict) << '\n';
  }
}

}  // namespace optosqueeze
