/*
   Copyright 2026 the secop authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <stdexcept>
#include <string>

namespace secop {

struct DomainError : std::invalid_argument {
    explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

struct NonConvergence : std::runtime_error {
    explicit NonConvergence(const std::string& what) : std::runtime_error(what) {}
};

// Fully correlated branches need their dedicated formula paths; the generic
// ones divide by (1 - eta^2).
struct DegenerateCorrelation : std::invalid_argument {
    explicit DegenerateCorrelation(const std::string& what) : std::invalid_argument(what) {}
};

struct SecrecyInfeasible : std::runtime_error {
    explicit SecrecyInfeasible(const std::string& what) : std::runtime_error(what) {}
};

struct ConfigError : std::invalid_argument {
    explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

struct IoError : std::runtime_error {
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace secop
