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


#ifndef OPTOSQUEEZE_STEADY_STATE_HPP
#define OPTOSQUEEZE_STEADY_STATE_HPP

#include <optional>
#include <vector>

#include "optosqueeze/fock.hpp"
#include "optosqueeze/liouvillian.hpp"

namespace optosqueeze {

inline constexpr double kDegenerateSingularValue = 1e-10;

struct SteadyStateOptions {
  // Without this flag a degenerate null space raises "non-unique steady state".
  bool allow_degenerate = false;
  // Number of smallest singular values probed.
  int probe_size = 4;
  int probe_iterations = 40;
};

struct SteadyStateResult {
  std::optional<DensityMatrix> state;
  // Singular values of L below 1e-10, among the probed ones.
  int null_dimension = 0;
  std::vector<double> smallest_singular_values;  // ascending
  bool degenerate = false;
};

// Trace-pinned solve: row 0 of L is replaced by the trace functional and the
// system L' v = e_0 is solved by sparse LU (dense QR for small systems if LU
// fails). The result is Hermitized, normalized and checked for positivity.
SteadyStateResult steady_state(const Liouvillian& l, const SteadyStateOptions& opts = {});

// Smallest singular values of L by inverse subspace iteration on L^dag L.
std::vector<double> smallest_singular_values(const SparseMatrix& l, int count, int iterations = 40);

}  // namespace optosqueeze

#endif  // OPTOSQUEEZE_STEADY_STATE_HPP
