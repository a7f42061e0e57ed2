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

#ifndef COOPNET_GEOMETRY_HPP
#define COOPNET_GEOMETRY_HPP

#include "core/rng.hpp"

#include <cmath>
#include <cstddef>
#include <iosfwd>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace coopnet {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

inline double distance(Point a, Point b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return std::sqrt(dx * dx + dy * dy);
}

// BS intensity for cells of the given radius: 1 / (pi R^2).
inline double intensity_for_radius(double radius) {
    return 1.0 / (std::numbers::pi * radius * radius);
}

inline double radius_for_intensity(double lambda) {
    return 1.0 / std::sqrt(std::numbers::pi * lambda);
}

struct NetworkParams {
    double lambda_s = intensity_for_radius(50.0); // BS per m^2
    double eta = 4.0;                             // path-loss exponent
    int n_t = 4;
    int n_r = 2;
    double epsilon = 1.0;                         // SIR threshold, linear
    double p_s = 1.0;
    double sigma2 = 0.0;
    std::optional<double> cell_radius = 50.0;     // metres

    void validate() const;

    int antenna_product() const { return n_t * n_r; }

    // Explicit cell radius, or the one implied by lambda_s.
    double nominal_cell_radius() const { return cell_radius.value_or(radius_for_intensity(lambda_s)); }

    static NetworkParams for_cell_radius(double radius);
};

using BsId = std::size_t;

// A sampled BS layout. Identity of a BS is its index in `positions`.
class Deployment {
public:
    Deployment() = default;
    Deployment(std::vector<Point> positions, double window_radius, double guard_radius);

    const std::vector<Point>& positions() const { return positions_; }
    std::size_t size() const { return positions_.size(); }
    bool empty() const { return positions_.empty(); }
    Point position(BsId id) const { return positions_.at(id); }
    double window_radius() const { return window_radius_; }
    double guard_radius() const { return guard_radius_; }
    double outer_radius() const { return window_radius_ + guard_radius_; }

    // True when p is at least guard_radius away from the edge of the sampled disc.
    bool in_trusted_region(Point p) const;

    // CSV with header "id,x_m,y_m".
    void write_csv(std::ostream& out) const;
    void write_csv(const std::string& path) const;

private:
    std::vector<Point> positions_;
    double window_radius_ = 0.0;
    double guard_radius_ = 0.0;
};

/// Density of the distance to the n-th nearest point of a planar PPP:
/// 2 exp(-lambda pi r^2) (lambda pi r^2)^n / (r Gamma(n)).
double nth_distance_pdf(double r, int n, double lambda);

/// CDF of the n-th nearest distance, 1 - Q(n, lambda pi r^2).
double nth_distance_cdf(double r, int n, double lambda);

// Homogeneous PPP on the disc of radius window_radius + guard_radius.
Deployment sample_ppp(double lambda, double window_radius, double guard_radius, Engine& rng);

// Sorted distances from `from` to every BS in the deployment.
std::vector<double> ordered_distances(const Deployment& deployment, Point from);

// Uniform-grid bucket index over a deployment for nearest/range queries.
class NeighborIndex {
public:
    NeighborIndex(const Deployment& deployment, double cell_size);

    // Identity of the nearest BS and its distance. Requires a non-empty deployment.
    std::pair<BsId, double> nearest(Point p) const;

    // Every BS within `radius` of p (inclusive), ascending by identity.
    std::vector<BsId> within(Point p, double radius) const;

private:
    std::pair<long, long> cell_of(Point p) const;
    std::span<const BsId> bucket(long cx, long cy) const;

    const Deployment* deployment_;
    double cell_size_;
    double origin_;
    long cells_per_side_;
    std::vector<std::size_t> offsets_;
    std::vector<BsId> ids_;
};

} // namespace coopnet

#endif
