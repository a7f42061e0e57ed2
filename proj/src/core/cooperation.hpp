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

#ifndef COOPNET_COOPERATION_HPP
#define COOPNET_COOPERATION_HPP

#include "core/geometry.hpp"
#include "core/numerics.hpp"

#include <vector>

namespace coopnet {

// Distance-ratio cooperation rule: BS_i joins iff R_i <= rho * R_1.
struct CoopPolicy {
    double rho = 1.0;
    int k_max = 32;              // truncation order of sums over the set size
    double tail_tolerance = 1e-9;

    void validate() const;

    // Upper bound (1 - rho^-2)^k_max on the probability mass beyond k_max.
    double tail_bound() const;

    // Smallest k_max whose tail bound is below `tolerance`.
    static int required_k_max(double rho, double tolerance);
};

/// P(R_i / R_1 <= rho): probability that the i-th nearest BS is in the
/// cooperative set. Evaluated by quadrature over the serving distance; i = 1
/// returns exactly 1.
double coop_prob_member(int i, double rho, double lambda_s, const QuadratureSpec& quad = {});

/// Probability that the cooperative set has exactly k members.
double coop_prob_exactly(int k, double rho, double lambda_s, const QuadratureSpec& quad = {});

/// Mean cooperative-set size, summed until the remaining tail is below
/// `tolerance`.
double expected_coop_count(double rho, double tolerance = 1e-12, const QuadratureSpec& quad = {});

/// Identities of every BS with distance <= rho times the nearest distance,
/// ascending. Throws DomainError on an empty deployment or rho < 1.
std::vector<BsId> select_coop_set(const Deployment& deployment, Point vehicle, double rho);
std::vector<BsId> select_coop_set(const NeighborIndex& index, Point vehicle, double rho);

} // namespace coopnet

#endif
