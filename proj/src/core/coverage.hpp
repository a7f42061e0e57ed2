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

#ifndef COOPNET_COVERAGE_HPP
#define COOPNET_COVERAGE_HPP

#include "core/geometry.hpp"
#include "core/numerics.hpp"

#include <vector>

namespace coopnet {

// Distribution of the common distance D between the vehicle and its k
// cooperating BSs.
struct DistanceLaw {
    enum class Kind { fixed_distance, nearest_order };

    Kind kind = Kind::nearest_order;
    double distance = 0.0; // metres, fixed_distance only
    int order = 1;         // m, nearest_order only: D ~ f_{R_m}

    static DistanceLaw fixed(double d) { return {Kind::fixed_distance, d, 0}; }
    static DistanceLaw nearest(int m) { return {Kind::nearest_order, 0.0, m}; }
    // m = max(1, k - 1): the second-nearest law for k = 3, nearest for k = 1.
    static DistanceLaw default_for(int k) { return nearest(k > 2 ? k - 1 : 1); }

    void validate() const;
};

struct CoverageOptions {
    QuadratureSpec quad{};
    // Multiplies every recurrence coefficient. 1 in normal use; the validation
    // command perturbs it to prove that its checks detect a broken recurrence.
    double recurrence_scale = 1.0;
};

// Terms of the coverage series for one distance D.
struct RecurrenceState {
    std::vector<double> x;     // x_0 .. x_{k n_t n_r - 1}
    std::vector<double> kcoef; // k_0 .. k_{k n_t n_r - 1}
    double a = 0.0;            // pi lambda_s D^2
};

/// Laplace transform of the aggregate interference from BSs beyond r_guard,
/// each with Gamma(n_t n_r, 1) gain and power P_s / n_t:
/// exp(-2 pi lambda_s int_{r_guard}^inf (1 - (1 + s P_s/n_t r^-eta)^-(n_t n_r)) r dr).
double laplace_interference(double s, double r_guard, const NetworkParams& net,
                            const QuadratureSpec& quad = {});

// Argument s at which laplace_interference(s, D, net) equals x_0 for distance D.
double laplace_evaluation_point(double distance, const NetworkParams& net);

/// Interference coefficient k_i for SIR threshold epsilon.
///   k_0 = eps^{2/eta} int_{eps^{-2/eta}}^inf (1 - (1 + v^{-eta/2})^{-N}) dv
///   k_i = eps^{2/eta} int_{eps^{-2/eta}}^inf (1 + v^{eta/2})^{-i} (1 + v^{-eta/2})^{-N} dv
/// with N = n_t n_r. Only eta, n_t and n_r are read from `net`.
double interference_coefficient(int i, double epsilon, const NetworkParams& net,
                                const QuadratureSpec& quad = {});

RecurrenceState recurrence_state(double distance, int k, const NetworkParams& net,
                                 const CoverageOptions& options = {});

/// P(SIR > epsilon) for k cooperating BSs at common distance D, interferers
/// beyond D. Throws NumericalInstabilityError if the series leaves [0, 1].
double coverage_given_distance(double distance, int k, const NetworkParams& net,
                               const CoverageOptions& options = {});

/// Coverage averaged over the distance law.
double coverage_probability(int k, const NetworkParams& net, const DistanceLaw& law,
                            const CoverageOptions& options = {});

// Drops every cached coefficient table.
void clear_coefficient_cache();

} // namespace coopnet

#endif
