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
#include "core/mobility.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

using namespace coopnet;

TEST_CASE("Gauss-Markov step with full memory keeps the velocity") {
    MobilityParams mob;
    auto rng = make_engine(1, streams::kMobility);
    const MotionState s{12.0, 0.4};
    const auto next = gauss_markov_step(s, mob, rng);
    CHECK(next.speed == doctest::Approx(12.0));
    CHECK(next.direction == doctest::Approx(0.4));
}

TEST_CASE("memoryless step draws around the means") {
    MobilityParams mob;
    mob.alpha = 0.0;
    mob.mean_speed = 20.0;
    mob.speed_sigma = 2.0;
    auto rng = make_engine(1, streams::kMobility);
    double sum = 0.0;
    const int n = 20000;
    for (int i = 0; i < n; ++i) sum += gauss_markov_step({0.0, 0.0}, mob, rng).speed;
    CHECK(std::abs(sum / n - 20.0) < 4.0 * 2.0 / std::sqrt(n));
}

TEST_CASE("negative speeds are clamped and counted") {
    MobilityParams mob;
    mob.alpha = 0.0;
    mob.mean_speed = 0.0;
    mob.speed_sigma = 1.0;
    auto rng = make_engine(2, streams::kMobility);
    int clamped_total = 0;
    for (int i = 0; i < 1000; ++i) {
        bool clamped = false;
        const auto s = gauss_markov_step({0.0, 0.0}, mob, rng, &clamped);
        CHECK(s.speed >= 0.0);
        clamped_total += clamped ? 1 : 0;
    }
    CHECK(clamped_total > 400);
    CHECK(clamped_total < 600);
}

TEST_CASE("distance update is the law of cosines") {
    CHECK(update_distance(3.0, 4.0, std::numbers::pi / 2.0) == doctest::Approx(5.0));
    CHECK(update_distance(5.0, 2.0, std::numbers::pi) == doctest::Approx(3.0));
    CHECK(update_distance(5.0, 2.0, 0.0) == doctest::Approx(7.0));
}

TEST_CASE("stationary vehicle never hands off") {
    auto rng = make_engine(7, streams::kDeployment);
    const auto dep = sample_ppp(intensity_for_radius(50.0), 500.0, 250.0, rng);
    MobilityParams mob;
    mob.mean_speed = 0.0;
    mob.speed_sigma = 0.0;
    mob.total_time = 5.0;
    const auto trace = simulate_mobility(dep, mob, 1.5);
    CHECK(trace.handoff_count == 0);
    CHECK(trace.serving_handoff_count == 0);
    CHECK(trace.slot_count == mob.slot_count());
    CHECK(trace.duration == doctest::Approx(mob.slot_count() * mob.tau));
}

TEST_CASE("straight line across a two-BS layout hands off once") {
    Deployment dep({{-50.0, 0.0}, {50.0, 0.0}}, 1000.0, 100.0);
    MobilityParams mob;
    mob.mean_speed = 10.0;
    mob.speed_sigma = 0.0;
    mob.direction_sigma = 0.0;
    mob.tau = 0.1;
    mob.total_time = 20.0;
    // Off the 1 m grid so no slot lands on the bisector, where both BSs tie.
    const auto trace = simulate_mobility(dep, mob, 1.0, true, {-80.5, 1.0});
    CHECK(trace.handoff_count == 1);
    CHECK(trace.serving_handoff_count == 1);
    CHECK(trace.slots.size() == static_cast<std::size_t>(mob.slot_count() + 1));
    std::ostringstream out;
    trace.write_csv(out);
    CHECK(out.str().rfind("slot,t_s,x_m,y_m,speed_mps,dir_rad,coop_set_size,coop_set_ids,handoff\n", 0) == 0);
}

TEST_CASE("leaving the trusted region truncates the trace") {
    Deployment dep({{0.0, 0.0}}, 30.0, 10.0);
    MobilityParams mob;
    mob.speed_sigma = 0.0;
    mob.direction_sigma = 0.0;
    mob.total_time = 10.0;
    const auto trace = simulate_mobility(dep, mob, 1.0);
    CHECK(trace.truncated);
    CHECK(trace.duration < 3.1);
}

TEST_CASE("with rho = 1 set changes are serving-cell changes") {
    MobilityRunSpec run;
    run.replications = 8;
    MobilityParams mob;
    mob.total_time = 40.0;
    const auto traces = run_mobility_replications(run, mob);
    for (const auto& t : traces) {
        CHECK(t.handoff_count == t.serving_handoff_count);
        CHECK_FALSE(t.truncated);
    }
    const auto a = handoff_rate(traces);
    const auto b = handoff_rate(traces, 0.99, true);
    CHECK(a.rate == b.rate);
}

TEST_CASE("larger threshold means more handoffs") {
    MobilityRunSpec run;
    run.replications = 10;
    MobilityParams mob;
    mob.total_time = 60.0;
    const double base = handoff_rate(run_mobility_replications(run, mob)).rate;
    run.rho = 1.5;
    const double wide = handoff_rate(run_mobility_replications(run, mob)).rate;
    CHECK(wide > base);
}

TEST_CASE("replications are reproducible and worker independent") {
    MobilityRunSpec run;
    run.replications = 6;
    run.rho = 1.2;
    MobilityParams mob;
    mob.total_time = 20.0;
    run.workers = 1;
    const auto a = run_mobility_replications(run, mob);
    run.workers = 3;
    const auto b = run_mobility_replications(run, mob);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].handoff_count == b[i].handoff_count);
        CHECK(a[i].duration == b[i].duration);
    }
}

TEST_CASE("pooled rate and its error") {
    MobilityTrace t;
    t.handoff_count = 25;
    t.duration = 100.0;
    const auto single = handoff_rate({t});
    CHECK(single.rate == doctest::Approx(0.25));
    CHECK(single.std_error == doctest::Approx(0.05));
    MobilityTrace u = t;
    u.handoff_count = 35;
    const auto pooled = handoff_rate({t, u});
    CHECK(pooled.rate == doctest::Approx(0.3));
    CHECK(pooled.ci_low < 0.3);
    CHECK(pooled.ci_high > 0.3);
    CHECK_THROWS_AS(handoff_rate({}), DomainError);
}

TEST_CASE("mobility parameter domain") {
    MobilityParams mob;
    mob.alpha = 1.5;
    CHECK_THROWS_AS(mob.validate(), DomainError);
    mob = {};
    mob.tau = 0.0;
    CHECK_THROWS_AS(mob.validate(), DomainError);
    mob = {};
    CHECK(mob.slot_count() == 13333);
}
