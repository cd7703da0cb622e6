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


#ifndef OPTOSQUEEZE_STABILITY_HPP
#define OPTOSQUEEZE_STABILITY_HPP

// Damped parametric oscillator
//   x'' + gamma x' + (omega^2 + eps cos(Omega t)) x = 0
// mapped to the Mathieu form y'' + (omega_R^2 + 2 eps~ cos 2t~) y = 0 with
// t~ = Omega t / 2, x = y exp(-gamma~ t~ / 2), and classified through the
// one-period monodromy of y.

#include <array>
#include <complex>
#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace optosqueeze {

inline constexpr double kMultiplierTolerance = 1e-8;
inline constexpr double kMarginalBand = 1e-3;
inline constexpr double kMonodromyRtol = 1e-10;

struct MathieuParams {
  // omega_R^2 is stored since it goes negative for strong damping.
  double omega_R2 = 0.0;
  double eps_tilde = 0.0;
  double gamma_tilde = 0.0;
  double omega_tilde = 0.0;  // 2 omega / Omega; equals omega_R when gamma = 0

  // sqrt(omega_R^2), or NaN when omega_R^2 < 0.
  double omega_R() const;

  // Direct construction on the Mathieu axes.
  static MathieuParams from_axes(double omega_R, double eps_tilde, double gamma_tilde = 0.0);
};

// Throws std::invalid_argument when Omega <= 0.
MathieuParams to_mathieu(double omega, double Omega, double eps, double gamma);

// Fundamental matrix of the y equation over t~ in [0, pi]; columns are the
// solutions started from (1, 0) and (0, 1).
Eigen::Matrix2d monodromy(const MathieuParams& p, double rtol = kMonodromyRtol);

enum class Verdict { Stable, Marginal, Unstable };
std::string to_string(Verdict v);

struct StabilityPoint {
  MathieuParams params;
  std::array<std::complex<double>, 2> multipliers;
  double max_multiplier = 0.0;
  double determinant = 0.0;
  // Undamped y equation: unstable when max |lambda| > 1 + 1e-8.
  Verdict y_verdict = Verdict::Stable;
  // Physical x: threshold exp(gamma~ pi / 2) + 1e-8. Marginal when within
  // 1e-3 above the threshold.
  Verdict verdict = Verdict::Stable;
};

StabilityPoint classify(const MathieuParams& p);

struct Range {
  double lo = 0.0;
  double hi = 1.0;
};

struct StabilityMap {
  Range omega_R;
  Range eps_tilde;
  int nx = 0;  // omega_R cells
  int ny = 0;  // eps_tilde cells
  double gamma_tilde = 0.0;
  // Row-major: index = j * nx + i, j over eps_tilde, i over omega_R.
  std::vector<StabilityPoint> points;

  const StabilityPoint& at(int i, int j) const { return points[static_cast<std::size_t>(j * nx + i)]; }
};

// Samples cell centers; a center landing on an integer omega_R is moved by
// half a cell. Cells are computed in parallel, output order is fixed.
StabilityMap stability_map(Range omega_R, Range eps_tilde, int nx, int ny, double gamma_tilde = 0.0,
                           int workers = 0);

// omega_R,eps_tilde,max_multiplier,verdict
void write_stability_csv(std::ostream& os, const StabilityMap& map);

}  // namespace optosqueeze

#endif  // OPTOSQUEEZE_STABILITY_HPP
