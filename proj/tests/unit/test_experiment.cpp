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
#include "core/experiment.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using namespace coopnet;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("coopnet_unit_" + name);
    fs::remove_all(dir);
    return dir;
}

} // namespace

TEST_CASE("fig2 CSV layout and values") {
    ExperimentConfig c;
    c.set("out", scratch("fig2").string());
    apply_preset(c, "fig2");
    const auto files = run_experiment(c);
    const fs::path csv = fs::path(c.output_dir) / "fig2.csv";
    REQUIRE(fs::exists(csv));
    std::istringstream in(slurp(csv));
    std::string header;
    std::getline(in, header);
    CHECK(header == "rho,member_order=2,member_order=3,member_order=4,member_order=5");
    std::string row;
    int rows = 0;
    while (std::getline(in, row)) {
        ++rows;
        if (row.rfind("2,", 0) == 0) {
            std::istringstream cells(row);
            std::string cell;
            std::vector<double> v;
            while (std::getline(cells, cell, ',')) v.push_back(std::stod(cell));
            REQUIRE(v.size() == 5);
            CHECK(v[1] == doctest::Approx(0.75).epsilon(1e-9));
            CHECK(v[2] == doctest::Approx(0.5625).epsilon(1e-9));
        }
    }
    CHECK(rows == 41);
    const std::string manifest = slurp(fs::path(c.output_dir) / "fig2_manifest.txt");
    CHECK(manifest.find("version = ") != std::string::npos);
    CHECK(manifest.find("runtime_s = ") != std::string::npos);
    CHECK(manifest.find("seed = 1") != std::string::npos);
}

TEST_CASE("re-running a preset is byte identical") {
    ExperimentConfig c;
    c.set("out", scratch("fig7").string());
    apply_preset(c, "fig7");
    c.set("grid", "-4:4:2");
    run_experiment(c);
    const std::string first = slurp(fs::path(c.output_dir) / "fig7.csv");
    run_experiment(c);
    CHECK(slurp(fs::path(c.output_dir) / "fig7.csv") == first);
}

TEST_CASE("svg output") {
    ExperimentConfig c;
    c.set("out", scratch("svg").string());
    c.set("svg", "true");
    apply_preset(c, "fig3");
    run_experiment(c);
    const std::string svg = slurp(fs::path(c.output_dir) / "fig3.svg");
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("polyline") != std::string::npos);
}

TEST_CASE("custom sweep of a metric") {
    ExperimentConfig c;
    c.set("out", scratch("custom").string());
    c.set("metric", "coop_mean");
    c.set("sweep", "rho");
    c.set("grid", "1,2,3");
    run_experiment(c);
    std::istringstream in(slurp(fs::path(c.output_dir) / "custom.csv"));
    std::string line;
    std::getline(in, line);
    CHECK(line == "rho,coop_mean");
    std::getline(in, line);
    CHECK(line == "1,1");
}

TEST_CASE("usage errors") {
    ExperimentConfig c;
    CHECK_THROWS_AS(apply_preset(c, "fig99"), UsageError);
    c.set("sweep", "metric");
    CHECK_THROWS_AS(run_experiment(c), UsageError);
    ExperimentConfig d;
    CHECK_THROWS_AS(evaluate_metric("nonsense", d), UsageError);
}

TEST_CASE("metric values") {
    ExperimentConfig c;
    c.set("rho", "2");
    c.set("member_order", "3");
    CHECK(evaluate_metric("coop_member", c).value == doctest::Approx(0.5625).epsilon(1e-9));
    c.set("k", "2");
    CHECK(evaluate_metric("coop_exact", c).value == doctest::Approx(0.1875).epsilon(1e-9));
    CHECK(evaluate_metric("coop_mean", c).value == doctest::Approx(4.0).epsilon(1e-9));
    const auto sim = evaluate_metric("coverage_sim", c);
    CHECK(sim.std_error > 0.0);
}

TEST_CASE("single-shot reports") {
    ExperimentConfig c;
    const auto a = run_analytic(c);
    REQUIRE(a.find("coverage") != nullptr);
    CHECK(std::stod(*a.find("coverage")) == doctest::Approx(0.7658526483504352).epsilon(1e-8));
    CHECK(a.json().find("\"coverage\": ") != std::string::npos);
    c.set("trials", "2000");
    const auto s = run_simulate(c);
    CHECK(s.find("ci_low") != nullptr);
    CHECK(version_string() == COOPNET_VERSION_STRING);
}
