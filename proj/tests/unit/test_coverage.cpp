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

#include "core/coverage.hpp"
#include "core/errors.hpp"
#include "core/validate.hpp"

#include <cmath>
#include <numbers>

using namespace coopnet;

namespace {

NetworkParams siso() {
    NetworkParams net;
    net.n_t = 1;
    net.n_r = 1;
    net.eta = 4.0;
    net.epsilon = 1.0;
    return net;
}

// Rayleigh interferers beyond r_g, eta = 4, unit power.
double siso_laplace(double s, double r_g, double lambda) {
    const double q = std::sqrt(s);
    return std::exp(-std::numbers::pi * lambda * q * (std::numbers::pi / 2.0 - std::atan(r_g * r_g / q)));
}

} // namespace

TEST_CASE("SISO interference coefficients in closed form") {
    const auto net = siso();
    CHECK(interference_coefficient(0, 1.0, net) == doctest::Approx(std::numbers::pi / 4.0).epsilon(1e-10));
    CHECK(interference_coefficient(1, 1.0, net) ==
          doctest::Approx(std::numbers::pi / 8.0 + 0.25).epsilon(1e-10));
}

TEST_CASE("SISO Laplace transform matches the arctan form") {
    const auto net = siso();
    for (double s : {10.0, 1e4, 6.25e6}) {
        for (double rg : {0.0, 5.0, 50.0}) {
            CHECK(laplace_interference(s, rg, net) == doctest::Approx(siso_laplace(s, rg, net.lambda_s)).epsilon(1e-9));
        }
    }
    CHECK(laplace_interference(0.0, 10.0, net) == 1.0);
}

TEST_CASE("SISO coverage at a fixed distance is exp(-a pi/4) at 0 dB") {
    const auto net = siso();
    for (double d : {10.0, 50.0, 120.0}) {
        const double a = std::numbers::pi * net.lambda_s * d * d;
        CHECK(coverage_given_distance(d, 1, net) == doctest::Approx(std::exp(-a * std::numbers::pi / 4.0)).epsilon(1e-9));
    }
}

TEST_CASE("SISO coverage with a nearest serving BS is 1/(1 + pi/4)") {
    const double v = coverage_probability(1, siso(), DistanceLaw::nearest(1));
    CHECK(v == doctest::Approx(1.0 / (1.0 + std::numbers::pi / 4.0)).epsilon(1e-9));
    // Independent of the intensity.
    auto dense = siso();
    dense.lambda_s *= 100.0;
    dense.cell_radius.reset();
    CHECK(coverage_probability(1, dense, DistanceLaw::nearest(1)) == doctest::Approx(v).epsilon(1e-9));
}

TEST_CASE("x_0 equals the Laplace transform at the evaluation point") {
    NetworkParams net;
    const double d = 40.0;
    const auto st = recurrence_state(d, 3, net);
    CHECK(st.x.size() == 24);
    CHECK(st.x.front() == doctest::Approx(laplace_interference(laplace_evaluation_point(d, net), d, net)).epsilon(1e-9));
}

TEST_CASE("recurrence terms match finite-difference derivatives") {
    NetworkParams net;
    net.n_t = 2;
    net.n_r = 2;
    const double d = 50.0;
    const auto st = recurrence_state(d, 1, net);
    QuadratureSpec fine;
    fine.relative_tolerance = 1e-12;
    fine.absolute_tolerance = 1e-15;
    const double s0 = laplace_evaluation_point(d, net);
    auto laplace = [&](double s) { return laplace_interference(s, d, net, fine); };
    double factorial = 1.0;
    for (int n = 1; n < 4; ++n) {
        factorial *= n;
        const double expected = std::pow(-s0, n) / factorial * richardson_derivative(laplace, s0, n, 0.2 * s0);
        CHECK(std::abs(st.x[static_cast<std::size_t>(n)] - expected) < 1e-4);
    }
}

TEST_CASE("coverage is monotone in threshold and path-loss exponent") {
    NetworkParams net;
    double prev = 1.0;
    for (int db = -10; db <= 10; db += 2) {
        net.epsilon = std::pow(10.0, db / 10.0);
        const double v = coverage_probability(3, net, DistanceLaw::default_for(3));
        CHECK(v <= prev + 1e-12);
        CHECK(v >= 0.0);
        prev = v;
    }
    net.epsilon = 1.0;
    prev = 0.0;
    for (double eta : {3.0, 3.5, 4.0, 4.5, 5.0}) {
        net.eta = eta;
        const double v = coverage_probability(3, net, DistanceLaw::default_for(3));
        CHECK(v >= prev - 1e-12);
        prev = v;
    }
}

TEST_CASE("defaults regression: four transmit and two receive antennas") {
    // Frozen from this implementation; guards against silent drift.
    NetworkParams net;
    CHECK(coverage_probability(1, net, DistanceLaw::default_for(1)) == doctest::Approx(0.6265410811813701).epsilon(1e-8));
    CHECK(coverage_probability(3, net, DistanceLaw::default_for(3)) == doctest::Approx(0.7658526483504352).epsilon(1e-8));
}

TEST_CASE("near-certain coverage stays inside [0, 1] for large antenna products") {
    NetworkParams net;
    net.n_t = 8;
    net.epsilon = 0.1;
    const double v = coverage_probability(9, net, DistanceLaw::nearest(8));
    CHECK(v <= 1.0);
    CHECK(v > 0.99);
}

TEST_CASE("a corrupted recurrence is detected") {
    NetworkParams net;
    CoverageOptions broken;
    broken.recurrence_scale = 1.1;
    CHECK_THROWS_AS(coverage_probability(3, net, DistanceLaw::default_for(3), broken), NumericalInstabilityError);
}

TEST_CASE("coverage domain errors") {
    NetworkParams net;
    net.eta = 2.0;
    CHECK_THROWS_AS(coverage_given_distance(10.0, 1, net), DomainError);
    CHECK_THROWS_AS(coverage_given_distance(0.0, 1, NetworkParams{}), DomainError);
    CHECK_THROWS_AS(coverage_given_distance(10.0, 0, NetworkParams{}), DomainError);
    CHECK_THROWS_AS(DistanceLaw::nearest(0).validate(), DomainError);
}
