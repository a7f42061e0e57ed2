// SPDX-License-Identifier: Apache-2.0
//
// coopnet: analytical model and simulator for cooperative small-cell
// vehicular networks
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef COOPNET_VALIDATE_HPP
#define COOPNET_VALIDATE_HPP

#include "core/config.hpp"

#include <functional>
#include <string>
#include <vector>

namespace coopnet {

struct Check {
    std::string name;
    bool passed = false;
    std::string detail; // measured deviation and the bound it was held to
};

struct ValidationReport {
    std::vector<Check> checks;
    double runtime_s = 0.0;

    bool passed() const;
    std::string text() const; // one "PASS name: detail" / "FAIL ..." line per check
};

/// Runs the oracle and invariant suite. Quadrature tolerances, the recurrence
/// scale, the seed and the simulation trial count come from the config, so a
/// perturbed config must make some checks fail.
ValidationReport run_validation(const ExperimentConfig& config);

/// n-th derivative of f at x by central differences with step h, refined by
/// two Richardson extrapolation levels.
double richardson_derivative(const std::function<double(double)>& f, double x, int n, double h);

} // namespace coopnet

#endif
