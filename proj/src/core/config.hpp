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

#ifndef COOPNET_CONFIG_HPP
#define COOPNET_CONFIG_HPP

#include "core/cooperation.hpp"
#include "core/coverage.hpp"
#include "core/geometry.hpp"
#include "core/mobility.hpp"
#include "core/montecarlo.hpp"
#include "core/overhead.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace coopnet {

// How the distance D to the cooperating BSs, and the interferer intensity
// behind it, are modelled by the coverage and capacity metrics.
enum class DistanceModel {
    // D ~ f_{R_m}, m = distance_order or max(1, k - 1); interferers at lambda_s.
    nearest,
    // Vehicle at the cell edge: D = cell_radius, interferers at the intensity
    // of reference_radius. Mobility layouts still use lambda_s.
    cell_edge
};

/// Every tunable of an experiment. Values are set by name through set(),
/// which is what config files, `--set key=value` and sweeps go through.
struct ExperimentConfig {
    std::string preset = "custom";

    NetworkParams net{};
    CoopPolicy policy{};
    bool k_max_auto = true;
    MobilityParams mob{};
    int replications = 100;
    OverheadParams overhead{};
    CoverageOptions coverage{};
    DistanceModel distance_model = DistanceModel::nearest;
    double reference_radius = 50.0;

    int k = 3;                  // cooperating BSs for coverage metrics
    int member_order = 2;       // i for the membership metric
    int distance_order = 0;     // 0: max(1, k - 1)
    double fixed_distance = 0.0; // > 0 replaces the distance law
    GainMode gain_mode = GainMode::gamma_sum;

    std::string metric = "coverage";
    std::string sweep = "epsilon_db";
    std::vector<double> grid = {-10, -8, -6, -4, -2, 0, 2, 4, 6, 8, 10};
    std::string curve;              // optional curve-family parameter
    std::vector<double> curves;     // its values

    std::string output_dir = "out";
    std::uint64_t seed = 1;
    std::size_t trials = 10000;
    unsigned workers = 1;
    bool svg = false;

    std::vector<std::string> explicit_keys;

    /// Sets one parameter from text. Throws UsageError for an unknown key
    /// (the message lists the valid ones) or a malformed value.
    void set(const std::string& key, const std::string& value);

    // Like set(), but skipped when the key was already set explicitly. Used
    // for preset defaults.
    void set_default(const std::string& key, const std::string& value);
    bool is_explicit(const std::string& key) const;

    // Reads `key = value` lines; `#` starts a comment.
    void load_file(const std::string& path);

    // Every parameter and its effective value, in a fixed order.
    std::vector<std::pair<std::string, std::string>> effective() const;

    // Value of one parameter as text (same formatting as effective()).
    std::string get(const std::string& key) const;

    // Policy with k_max resolved when it is automatic.
    CoopPolicy effective_policy() const;

    static const std::vector<std::string>& keys();
    static bool is_numeric_key(const std::string& key);
};

// "a:b:step" (inclusive) or "v1,v2,...". Throws UsageError unless nonempty
// and strictly monotone.
std::vector<double> parse_grid(const std::string& text);

double db_to_linear(double db);
double linear_to_db(double linear);

} // namespace coopnet

#endif
