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

#ifndef OPTOSQUEEZE_ERRORS_HPP
#define OPTOSQUEEZE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace optosqueeze {

// Contract violations (bad mode index, mismatched signatures, invalid
// parameters) are reported with std::invalid_argument. Failures of a
// numerical procedure on valid input use NumericalError.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace optosqueeze

#endif  // OPTOSQUEEZE_ERRORS_HPP
