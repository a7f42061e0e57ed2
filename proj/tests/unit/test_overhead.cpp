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
#include "core/overhead.hpp"

#include <cmath>
#include <sstream>

using namespace coopnet;

TEST_CASE("active probability") {
    CHECK(active_probability({1000.0, 1.5, 1.0 / 3.0}) == doctest::Approx(1.5 / 4.5));
}

TEST_CASE("single-class X2 overhead by hand") {
    OverheadParams p;
    p.delta = 100.0;
    p.chi = 0.5;
    p.traffic = {{2000.0, 1.0, 1.0}}; // p_A = 1/2
    const auto x2 = x2_overhead(4.0, p);
    CHECK(x2.t_x2c == doctest::Approx(400.0));
    CHECK(x2.t_x2u == doctest::Approx(2000.0 * 0.5 * 0.5 * 4.0));
    CHECK(x2.t_x2 == doctest::Approx(2400.0));
    REQUIRE(x2.classes.size() == 1);
    CHECK(x2.classes[0].bits_per_handoff == doctest::Approx(1000.0));
}

TEST_CASE("X2 overhead is linear in the handoff rate") {
    const OverheadParams p;
    const auto one = x2_overhead(0.37, p);
    const auto three = x2_overhead(3 * 0.37, p);
    CHECK(three.t_x2 == doctest::Approx(3.0 * one.t_x2));
    CHECK(three.t_x2u == doctest::Approx(3.0 * one.t_x2u));
    CHECK(x2_overhead(0.0, p).t_x2 == 0.0);
}

TEST_CASE("expected overhead is t_x2 E[K]") {
    CoopPolicy policy{std::sqrt(2.0), 64, 1e-9};
    CHECK(expected_overhead(10.0, policy) == doctest::Approx(20.0).epsilon(1e-8));
    policy.rho = 1.0;
    CHECK(expected_overhead(10.0, policy) == doctest::Approx(10.0));
    CoopPolicy short_sum{3.0, 4, 1e-9};
    CHECK_THROWS_AS(expected_overhead(10.0, short_sum), DomainError);
}

TEST_CASE("capacity at rho = 1 is single-BS coverage times the rate") {
    NetworkParams net;
    const OverheadParams p;
    const CoopPolicy policy{1.0, 32, 1e-9};
    const auto cap = capacity_breakdown(net, policy, p);
    CHECK(cap.log_factor == doctest::Approx(1.0)); // log2(1 + 1)
    CHECK(cap.coverage_mix == doctest::Approx(coverage_probability(1, net, DistanceLaw::default_for(1))));
    CHECK(cap.capacity == doctest::Approx(cap.coverage_mix * 1e7));
}

TEST_CASE("capacity log base") {
    NetworkParams net;
    OverheadParams p;
    p.log_base = LogBase::natural;
    const CoopPolicy policy{1.0, 32, 1e-9};
    CHECK(capacity_breakdown(net, policy, p).log_factor == doctest::Approx(std::log(2.0)));
}

TEST_CASE("overhead ratio scales inversely with bandwidth") {
    NetworkParams net;
    OverheadParams p;
    const CoopPolicy policy{1.2, 64, 1e-9};
    const auto a = overhead_ratio(0.4, net, policy, p);
    p.bandwidth *= 4.0;
    const auto b = overhead_ratio(0.4, net, policy, p);
    CHECK(b.ratio == doctest::Approx(a.ratio / 4.0).epsilon(1e-12));
    CHECK(a.ratio == doctest::Approx(a.expected_overhead / a.capacity));
}

TEST_CASE("report field names") {
    NetworkParams net;
    const OverheadParams p;
    const auto r = overhead_ratio(0.2, net, CoopPolicy{1.0, 32, 1e-9}, p);
    std::ostringstream out;
    r.write_text(out);
    for (const char* key : {"handoff_rate = ", "t_x2c = ", "t_x2u = ", "expected_overhead = ", "capacity = ",
                            "ratio = ", "class1_p_active = ", "class2_bits_per_handoff = "}) {
        CHECK(out.str().find(key) != std::string::npos);
    }
    CHECK(r.to_json().find("\"ratio\"") != std::string::npos);
}

TEST_CASE("parameter domain") {
    OverheadParams p;
    p.traffic = {{100.0, 0.0, 1.0}};
    CHECK_THROWS_AS(p.validate(), DomainError);
    p = {};
    p.bandwidth = -1.0;
    CHECK_THROWS_AS(p.validate(), DomainError);
}
