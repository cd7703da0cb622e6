# Copyright 2026 The optosqueeze Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.


"""Reservoir-engineered squeezing of a quadratically coupled mechanical mode."""

from ._core import (
    DriveConfig,
    NumericalError,
    SystemParams,
    analytic_g2,
    analytic_mean_n,
    analytic_variances,
    classify,
    evolve,
    exact_g2,
    linear_grid,
    log_grid,
    matched_config,
    matching_conditions,
    observables,
    required_truncation,
    run_config,
    squeezed_state,
    squeezing_db,
    stability_map,
    steady_state,
)

__all__ = [
    "DriveConfig",
    "NumericalError",
    "SystemParams",
    "analytic_g2",
    "analytic_mean_n",
    "analytic_variances",
    "classify",
    "evolve",
    "exact_g2",
    "linear_grid",
    "log_grid",
    "matched_config",
    "matching_conditions",
    "observables",
    "required_truncation",
    "run_config",
    "squeezed_state",
    "squeezing_db",
    "stability_map",
    "steady_state",
]
