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

#include "core/cooperation.hpp"

#include "core/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace coopnet {

namespace {

void check_rho(double rho) {
    if (!(rho >= 1.0) || !std::isfinite(rho)) {
        throw DomainError("cooperative threshold rho must be >= 1");
    }
}

void check_lambda(double lambda_s) {
    if (!(lambda_s > 0.0)) {
        throw DomainError("lambda_s must be > 0");
    }
}

} // namespace

void CoopPolicy::validate() const {
    check_rho(rho);
    if (k_max < 1) {
        throw DomainError("k_max must be >= 1");
    }
    if (!(tail_tolerance > 0.0)) {
        throw DomainError("tail_tolerance must be > 0");
    }
}

double CoopPolicy::tail_bound() const {
    return std::pow(1.0 - 1.0 / (rho * rho), k_max);
}

int CoopPolicy::required_k_max(double rho, double tolerance) {
    check_rho(rho);
    const double q = 1.0 - 1.0 / (rho * rho);
    if (q <= 0.0) {
        return 1;
    }
    return std::max(1, static_cast<int>(std::ceil(std::log(tolerance) / std::log(q))));
}

double coop_prob_member(int i, double rho, double lambda_s, const QuadratureSpec& quad) {
    if (i < 1) {
        throw DomainError("coop_prob_member: order must be >= 1");
    }
    check_rho(rho);
    check_lambda(lambda_s);
    if (i == 1) {
        return 1.0;
    }
    // Integrate over the serving distance y = scale * u so the node placement
    // does not depend on the intensity.
    const double scale = radius_for_intensity(lambda_s);
    const double annulus_factor = lambda_s * std::numbers::pi * (rho * rho - 1.0);
    auto integrand = [&](double u) {
        const double y = scale * u;
        // At least i-1 further BSs inside the annulus between y and rho*y.
        const double joined = regularized_gamma_lower(i - 1, annulus_factor * y * y);
        return joined * nth_distance_pdf(y, 1, lambda_s) * scale;
    };
    return std::clamp(integrate(integrand, 0.0, kInfinity, quad), 0.0, 1.0);
}

double coop_prob_exactly(int k, double rho, double lambda_s, const QuadratureSpec& quad) {
    if (k < 1) {
        throw DomainError("coop_prob_exactly: k must be >= 1");
    }
    check_rho(rho);
    check_lambda(lambda_s);
    const double scale = radius_for_intensity(lambda_s);
    const double rho2 = rho * rho;
    const double log_norm = log_gamma(k);
    auto integrand = [&](double u) {
        const double y = scale * u;
        const double t = lambda_s * std::numbers::pi * y * y;
        double log_term = -rho2 * t;
        if (k > 1) {
            const double annulus = (rho2 - 1.0) * t;
            if (annulus <= 0.0) {
                return 0.0;
            }
            log_term += (k - 1) * std::log(annulus) - log_norm;
        }
        return 2.0 * lambda_s * std::numbers::pi * y * std::exp(log_term) * scale;
    };
    return std::clamp(integrate(integrand, 0.0, kInfinity, quad), 0.0, 1.0);
}

double expected_coop_count(double rho, double tolerance, const QuadratureSpec& quad) {
    check_rho(rho);
    if (!(tolerance > 0.0)) {
        throw DomainError("expected_coop_count: tolerance must be > 0");
    }
    // The probabilities are intensity-free; evaluate at unit intensity.
    const double lambda = 1.0;
    const double p = 1.0 / (rho * rho);
    const double q = 1.0 - p;
    constexpr int kHardLimit = 200000;
    double sum = 0.0;
    for (int k = 1; k <= kHardLimit; ++k) {
        sum += k * coop_prob_exactly(k, rho, lambda, quad);
        // Bound on sum_{j>k} j P_j under the geometric tail.
        const double tail = std::pow(q, k) * (k + 1.0 / p);
        if (tail < tolerance) {
            return sum;
        }
    }
    throw DomainError("expected_coop_count: rho too large for the summation limit");
}

std::vector<BsId> select_coop_set(const Deployment& deployment, Point vehicle, double rho) {
    check_rho(rho);
    if (deployment.empty()) {
        throw DomainError("select_coop_set: empty deployment");
    }
    const auto& pos = deployment.positions();
    double nearest = std::numeric_limits<double>::infinity();
    for (const Point& p : pos) {
        nearest = std::min(nearest, distance(p, vehicle));
    }
    std::vector<BsId> members;
    const double limit = rho * nearest;
    for (BsId id = 0; id < pos.size(); ++id) {
        if (distance(pos[id], vehicle) <= limit) {
            members.push_back(id);
        }
    }
    return members;
}

std::vector<BsId> select_coop_set(const NeighborIndex& index, Point vehicle, double rho) {
    check_rho(rho);
    const auto [id, nearest] = index.nearest(vehicle);
    (void)id;
    return index.within(vehicle, rho * nearest);
}

} // namespace coopnet
