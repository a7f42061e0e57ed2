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

#include "core/geometry.hpp"

#include "core/errors.hpp"
#include "core/numerics.hpp"
#include "core/output.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <ostream>

namespace coopnet {

void NetworkParams::validate() const {
    if (!(lambda_s > 0.0)) {
        throw DomainError("lambda_s must be > 0");
    }
    if (!(eta > 2.0)) {
        throw DomainError("eta must be > 2 for finite aggregate interference");
    }
    if (n_t < 1 || n_r < 1) {
        throw DomainError("antenna counts must be >= 1");
    }
    if (!(epsilon > 0.0)) {
        throw DomainError("epsilon must be > 0");
    }
    if (!(p_s > 0.0)) {
        throw DomainError("p_s must be > 0");
    }
    if (!(sigma2 >= 0.0)) {
        throw DomainError("sigma2 must be >= 0");
    }
    if (cell_radius) {
        if (!(*cell_radius > 0.0)) {
            throw DomainError("cell_radius must be > 0");
        }
        const double product = lambda_s * std::numbers::pi * *cell_radius * *cell_radius;
        if (std::abs(product - 1.0) >= 1e-9) {
            throw DomainError("cell_radius and lambda_s are inconsistent (lambda_s != 1/(pi R^2))");
        }
    }
}

NetworkParams NetworkParams::for_cell_radius(double radius) {
    NetworkParams net;
    net.lambda_s = intensity_for_radius(radius);
    net.cell_radius = radius;
    return net;
}

Deployment::Deployment(std::vector<Point> positions, double window_radius, double guard_radius)
    : positions_(std::move(positions)), window_radius_(window_radius), guard_radius_(guard_radius) {
    const double outer = outer_radius() * (1.0 + 1e-12);
    for (const Point& p : positions_) {
        if (std::hypot(p.x, p.y) > outer) {
            throw DomainError("deployment position outside the guarded disc");
        }
    }
}

bool Deployment::in_trusted_region(Point p) const {
    return std::hypot(p.x, p.y) <= window_radius_;
}

void Deployment::write_csv(std::ostream& out) const {
    out << "id,x_m,y_m\n";
    for (std::size_t i = 0; i < positions_.size(); ++i) {
        out << i << ',' << format_double(positions_[i].x) << ',' << format_double(positions_[i].y)
            << '\n';
    }
}

void Deployment::write_csv(const std::string& path) const {
    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot open " + path + " for writing");
    }
    write_csv(out);
    if (!out) {
        throw IoError("failed writing " + path);
    }
}

double nth_distance_pdf(double r, int n, double lambda) {
    if (!(r > 0.0)) {
        throw DomainError("nth_distance_pdf: r must be > 0");
    }
    if (n < 1) {
        throw DomainError("nth_distance_pdf: order must be >= 1");
    }
    if (!(lambda > 0.0)) {
        throw DomainError("nth_distance_pdf: lambda must be > 0");
    }
    const double t = lambda * std::numbers::pi * r * r;
    const double log_density = std::log(2.0) - t + n * std::log(t) - std::log(r) - log_gamma(n);
    return std::exp(log_density);
}

double nth_distance_cdf(double r, int n, double lambda) {
    if (!(r >= 0.0)) {
        throw DomainError("nth_distance_cdf: r must be >= 0");
    }
    if (n < 1) {
        throw DomainError("nth_distance_cdf: order must be >= 1");
    }
    if (!(lambda > 0.0)) {
        throw DomainError("nth_distance_cdf: lambda must be > 0");
    }
    return regularized_gamma_lower(n, lambda * std::numbers::pi * r * r);
}

Deployment sample_ppp(double lambda, double window_radius, double guard_radius, Engine& rng) {
    if (!(window_radius > 0.0) || !(guard_radius >= 0.0)) {
        throw DomainError("sample_ppp: radii must be positive");
    }
    if (!(lambda >= 0.0)) {
        throw DomainError("sample_ppp: lambda must be >= 0");
    }
    const double outer = window_radius + guard_radius;
    std::vector<Point> points;
    if (lambda > 0.0) {
        std::poisson_distribution<long> count_dist(lambda * std::numbers::pi * outer * outer);
        const long count = count_dist(rng);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        points.reserve(static_cast<std::size_t>(count));
        for (long i = 0; i < count; ++i) {
            const double radius = outer * std::sqrt(unit(rng));
            const double angle = 2.0 * std::numbers::pi * unit(rng);
            points.push_back({radius * std::cos(angle), radius * std::sin(angle)});
        }
    }
    return Deployment(std::move(points), window_radius, guard_radius);
}

std::vector<double> ordered_distances(const Deployment& deployment, Point from) {
    std::vector<double> d;
    d.reserve(deployment.size());
    for (const Point& p : deployment.positions()) {
        d.push_back(distance(p, from));
    }
    std::sort(d.begin(), d.end());
    return d;
}

NeighborIndex::NeighborIndex(const Deployment& deployment, double cell_size)
    : deployment_(&deployment), cell_size_(cell_size) {
    if (!(cell_size > 0.0)) {
        throw DomainError("NeighborIndex: cell size must be > 0");
    }
    const double outer = std::max(deployment.outer_radius(), cell_size);
    origin_ = -outer;
    cells_per_side_ = static_cast<long>(std::ceil(2.0 * outer / cell_size_)) + 1;
    const std::size_t n_cells = static_cast<std::size_t>(cells_per_side_ * cells_per_side_);
    std::vector<std::size_t> counts(n_cells + 1, 0);
    std::vector<std::size_t> cell_ids(deployment.size());
    for (BsId id = 0; id < deployment.size(); ++id) {
        auto [cx, cy] = cell_of(deployment.position(id));
        cx = std::clamp(cx, 0L, cells_per_side_ - 1);
        cy = std::clamp(cy, 0L, cells_per_side_ - 1);
        cell_ids[id] = static_cast<std::size_t>(cy * cells_per_side_ + cx);
        ++counts[cell_ids[id] + 1];
    }
    for (std::size_t c = 0; c < n_cells; ++c) {
        counts[c + 1] += counts[c];
    }
    offsets_ = counts;
    ids_.resize(deployment.size());
    std::vector<std::size_t> fill(counts.begin(), counts.end() - 1);
    for (BsId id = 0; id < deployment.size(); ++id) {
        ids_[fill[cell_ids[id]]++] = id;
    }
}

std::pair<long, long> NeighborIndex::cell_of(Point p) const {
    return {static_cast<long>(std::floor((p.x - origin_) / cell_size_)),
            static_cast<long>(std::floor((p.y - origin_) / cell_size_))};
}

std::span<const BsId> NeighborIndex::bucket(long cx, long cy) const {
    if (cx < 0 || cy < 0 || cx >= cells_per_side_ || cy >= cells_per_side_) {
        return {};
    }
    const std::size_t c = static_cast<std::size_t>(cy * cells_per_side_ + cx);
    return {ids_.data() + offsets_[c], offsets_[c + 1] - offsets_[c]};
}

std::pair<BsId, double> NeighborIndex::nearest(Point p) const {
    if (deployment_->empty()) {
        throw DomainError("nearest: empty deployment");
    }
    const auto [cx, cy] = cell_of(p);
    BsId best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    const auto& pos = deployment_->positions();
    const long max_ring = 2 * cells_per_side_ + std::abs(cx) + std::abs(cy);
    for (long ring = 0; ring <= max_ring; ++ring) {
        for (long dy = -ring; dy <= ring; ++dy) {
            const bool edge_row = (dy == -ring || dy == ring);
            const long step = edge_row ? 1 : 2 * ring;
            for (long dx = -ring; dx <= ring; dx += (step == 0 ? 1 : step)) {
                for (BsId id : bucket(cx + dx, cy + dy)) {
                    const double d = distance(pos[id], p);
                    if (d < best_d || (d == best_d && id < best)) {
                        best_d = d;
                        best = id;
                    }
                }
            }
        }
        // Everything outside rings 0..ring is at least ring * cell_size away.
        if (best_d <= static_cast<double>(ring) * cell_size_) {
            break;
        }
    }
    return {best, best_d};
}

std::vector<BsId> NeighborIndex::within(Point p, double radius) const {
    std::vector<BsId> out;
    const auto [x0, y0] = cell_of({p.x - radius, p.y - radius});
    const auto [x1, y1] = cell_of({p.x + radius, p.y + radius});
    const auto& pos = deployment_->positions();
    for (long cy = std::max(0L, y0); cy <= std::min(cells_per_side_ - 1, y1); ++cy) {
        for (long cx = std::max(0L, x0); cx <= std::min(cells_per_side_ - 1, x1); ++cx) {
            for (BsId id : bucket(cx, cy)) {
                if (distance(pos[id], p) <= radius) {
                    out.push_back(id);
                }
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace coopnet
