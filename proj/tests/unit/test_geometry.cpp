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

#include <doctest.h>

#include "core/errors.hpp"
#include "core/geometry.hpp"
#include "core/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

using namespace coopnet;

TEST_CASE("nth distance pdf is a density with E[R_n^2] = n/(lambda pi)") {
    const double lambda = intensity_for_radius(50.0);
    for (int n = 1; n <= 6; ++n) {
        const double mass = integrate([&](double r) { return nth_distance_pdf(r, n, lambda); }, 0.0, kInfinity);
        const double m2 =
            integrate([&](double r) { return r * r * nth_distance_pdf(r, n, lambda); }, 0.0, kInfinity);
        CHECK(mass == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(m2 == doctest::Approx(n / (lambda * std::numbers::pi)).epsilon(1e-8));
    }
}

TEST_CASE("cdf agrees with the integrated pdf") {
    const double lambda = 1e-3;
    for (int n : {1, 2, 5}) {
        for (double r : {5.0, 20.0, 60.0}) {
            const double integral = integrate([&](double u) { return nth_distance_pdf(u, n, lambda); }, 0.0, r);
            CHECK(nth_distance_cdf(r, n, lambda) == doctest::Approx(integral).epsilon(1e-10));
        }
    }
    // Nearest: 1 - exp(-lambda pi r^2).
    CHECK(nth_distance_cdf(10.0, 1, lambda) == doctest::Approx(1.0 - std::exp(-lambda * std::numbers::pi * 100.0)));
}

TEST_CASE("distance law domain") {
    CHECK_THROWS_AS(nth_distance_pdf(1.0, 0, 1e-3), DomainError);
    CHECK_THROWS_AS(nth_distance_pdf(1.0, 1, 0.0), DomainError);
    CHECK_THROWS_AS(nth_distance_pdf(-1.0, 1, 1e-3), DomainError);
    CHECK(nth_distance_cdf(0.0, 3, 1e-3) == 0.0);
}

TEST_CASE("radius and intensity are inverse") {
    CHECK(radius_for_intensity(intensity_for_radius(37.0)) == doctest::Approx(37.0));
    auto net = NetworkParams::for_cell_radius(80.0);
    CHECK(net.lambda_s == doctest::Approx(intensity_for_radius(80.0)));
    CHECK(net.nominal_cell_radius() == doctest::Approx(80.0));
}

TEST_CASE("PPP sample count has Poisson mean and variance") {
    const double lambda = 1e-3;
    const double window = 200.0;
    const double guard = 50.0;
    const double mean = lambda * std::numbers::pi * (window + guard) * (window + guard);
    double sum = 0.0;
    double sum2 = 0.0;
    const int reps = 400;
    for (int r = 0; r < reps; ++r) {
        auto rng = make_engine(11, streams::kDeployment, static_cast<std::uint64_t>(r));
        const auto dep = sample_ppp(lambda, window, guard, rng);
        for (const Point& p : dep.positions()) {
            REQUIRE(std::hypot(p.x, p.y) <= window + guard);
        }
        sum += static_cast<double>(dep.size());
        sum2 += static_cast<double>(dep.size() * dep.size());
    }
    const double m = sum / reps;
    const double var = sum2 / reps - m * m;
    CHECK(std::abs(m - mean) < 4.0 * std::sqrt(mean / reps));
    CHECK(var == doctest::Approx(mean).epsilon(0.2));
}

TEST_CASE("same seed gives the same deployment") {
    auto a = make_engine(5, streams::kDeployment);
    auto b = make_engine(5, streams::kDeployment);
    const auto d1 = sample_ppp(1e-3, 100.0, 20.0, a);
    const auto d2 = sample_ppp(1e-3, 100.0, 20.0, b);
    REQUIRE(d1.size() == d2.size());
    for (std::size_t i = 0; i < d1.size(); ++i) {
        CHECK(d1.position(i).x == d2.position(i).x);
        CHECK(d1.position(i).y == d2.position(i).y);
    }
}

TEST_CASE("neighbor index agrees with brute force") {
    auto rng = make_engine(3, streams::kDeployment);
    const auto dep = sample_ppp(intensity_for_radius(30.0), 400.0, 100.0, rng);
    const NeighborIndex index(dep, 25.0);
    auto probe = make_engine(4, streams::kMobility);
    std::uniform_real_distribution<double> u(-380.0, 380.0);
    for (int t = 0; t < 200; ++t) {
        const Point p{u(probe), u(probe)};
        const auto d = ordered_distances(dep, p);
        const auto [id, dist] = index.nearest(p);
        CHECK(dist == doctest::Approx(d.front()));
        CHECK(distance(dep.position(id), p) == doctest::Approx(d.front()));

        const double radius = 1.7 * d.front();
        const auto inside = index.within(p, radius);
        const auto expected = static_cast<std::size_t>(
            std::count_if(d.begin(), d.end(), [&](double x) { return x <= radius; }));
        CHECK(inside.size() == expected);
        CHECK(std::is_sorted(inside.begin(), inside.end()));
    }
}

TEST_CASE("deployment CSV and trusted region") {
    Deployment dep({{0.0, 0.0}, {3.0, 4.0}}, 10.0, 2.0);
    std::ostringstream out;
    dep.write_csv(out);
    CHECK(out.str().rfind("id,x_m,y_m\n", 0) == 0);
    CHECK(out.str().find("1,3,4") != std::string::npos);
    CHECK(dep.in_trusted_region({9.0, 0.0}));
    CHECK_FALSE(dep.in_trusted_region({11.0, 0.0}));
    CHECK(distance({0, 0}, {3, 4}) == doctest::Approx(5.0));
}
