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

#ifndef COOPNET_EXPERIMENT_HPP
#define COOPNET_EXPERIMENT_HPP

#include "core/config.hpp"

#include <string>
#include <utility>
#include <vector>

namespace coopnet {

// Ordered key/value result of a command.
struct Report {
    std::vector<std::pair<std::string, std::string>> entries;

    void add(const std::string& key, const std::string& value);
    void add(const std::string& key, double value);
    void add(const std::string& key, long long value);
    const std::string* find(const std::string& key) const;

    std::string text() const; // "key = value" lines
    std::string json() const; // flat object, numbers where they parse
};

// Network and distance law that the coverage metrics use under the config.
NetworkParams coverage_network(const ExperimentConfig& config);
DistanceLaw coverage_law(const ExperimentConfig& config);
CapacityModel capacity_model(const ExperimentConfig& config);
MobilityRunSpec mobility_run(const ExperimentConfig& config);
MobilityParams mobility_params(const ExperimentConfig& config);

struct MetricValue {
    double value = 0.0;
    double std_error = -1.0; // < 0: not a simulated quantity
};

/// Evaluates one metric at the configuration. Metrics: coop_member,
/// coop_exact, coop_mean, coverage, coverage_sim, gain_gap, handoff_rate,
/// single_cell_handoff_rate, capacity, overhead_ratio.
MetricValue evaluate_metric(const std::string& metric, const ExperimentConfig& config);

const std::vector<std::string>& metric_names();
const std::vector<std::string>& preset_names();

// Applies the preset's axis, curve family and model defaults to every key
// that was not set explicitly. "custom" changes nothing.
void apply_preset(ExperimentConfig& config, const std::string& preset);

/// Runs the sweep described by the config and writes <out>/<preset>.csv,
/// <preset>_std_error.csv for simulated metrics, <preset>.svg when requested
/// and <preset>_manifest.txt. Returns the paths written.
std::vector<std::string> run_experiment(const ExperimentConfig& config);

// Single-shot commands.
Report run_analytic(const ExperimentConfig& config);
Report run_simulate(const ExperimentConfig& config, const std::string& raw_csv_path = {});
Report run_mobility(const ExperimentConfig& config, const std::string& trace_csv_path = {});
Report run_overhead(const ExperimentConfig& config);

std::string version_string();

} // namespace coopnet

#endif
