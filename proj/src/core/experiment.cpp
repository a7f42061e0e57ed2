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

#include "core/experiment.hpp"

#include "core/errors.hpp"
#include "core/output.hpp"

#include <json.hpp>

#include <charconv>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

namespace coopnet {

std::string version_string() {
#ifdef COOPNET_VERSION_STRING
    return COOPNET_VERSION_STRING;
#else
    return "unknown";
#endif
}

void Report::add(const std::string& key, const std::string& value) { entries.emplace_back(key, value); }

void Report::add(const std::string& key, double value) { entries.emplace_back(key, format_double(value)); }

void Report::add(const std::string& key, long long value) { entries.emplace_back(key, std::to_string(value)); }

const std::string* Report::find(const std::string& key) const {
    for (const auto& [k, v] : entries) {
        if (k == key) {
            return &v;
        }
    }
    return nullptr;
}

std::string Report::text() const {
    std::string out;
    for (const auto& [k, v] : entries) {
        out += k + " = " + v + "\n";
    }
    return out;
}

std::string Report::json() const {
    nlohmann::ordered_json j = nlohmann::ordered_json::object();
    for (const auto& [k, v] : entries) {
        double d = 0.0;
        const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), d);
        if (!v.empty() && ec == std::errc() && ptr == v.data() + v.size()) {
            j[k] = d;
        } else {
            j[k] = v;
        }
    }
    return j.dump(2);
}

NetworkParams coverage_network(const ExperimentConfig& config) {
    NetworkParams net = config.net;
    if (config.distance_model == DistanceModel::cell_edge) {
        net.lambda_s = intensity_for_radius(config.reference_radius);
        net.cell_radius = config.reference_radius;
    }
    return net;
}

DistanceLaw coverage_law(const ExperimentConfig& config) {
    if (config.fixed_distance > 0.0) {
        return DistanceLaw::fixed(config.fixed_distance);
    }
    if (config.distance_model == DistanceModel::cell_edge) {
        return DistanceLaw::fixed(config.net.nominal_cell_radius());
    }
    return config.distance_order > 0 ? DistanceLaw::nearest(config.distance_order)
                                     : DistanceLaw::default_for(config.k);
}

CapacityModel capacity_model(const ExperimentConfig& config) {
    CapacityModel model;
    model.coverage = config.coverage;
    if (config.fixed_distance > 0.0) {
        model.distance = CapacityModel::Distance::cell_edge;
        model.edge_distance = config.fixed_distance;
    } else if (config.distance_model == DistanceModel::cell_edge) {
        model.distance = CapacityModel::Distance::cell_edge;
        model.edge_distance = config.net.nominal_cell_radius();
    }
    return model;
}

MobilityRunSpec mobility_run(const ExperimentConfig& config) {
    MobilityRunSpec run;
    run.lambda = config.net.lambda_s;
    run.cell_radius = config.net.nominal_cell_radius();
    run.rho = config.policy.rho;
    run.replications = config.replications;
    run.workers = config.workers;
    return run;
}

MobilityParams mobility_params(const ExperimentConfig& config) {
    MobilityParams mob = config.mob;
    mob.seed = config.seed;
    return mob;
}

namespace {

CoverageSimSpec sim_spec(const ExperimentConfig& config) {
    CoverageSimSpec spec;
    spec.k = config.k;
    spec.law = coverage_law(config);
    spec.gain_mode = config.gain_mode;
    spec.n_trials = config.trials;
    spec.seed = config.seed;
    spec.workers = config.workers;
    return spec;
}

std::string law_text(const DistanceLaw& law) {
    if (law.kind == DistanceLaw::Kind::fixed_distance) {
        return "fixed:" + format_double(law.distance);
    }
    return "nearest:" + std::to_string(law.order);
}

} // namespace

const std::vector<std::string>& metric_names() {
    static const std::vector<std::string> names = {
        "coop_member", "coop_exact",   "coop_mean",
        "coverage",    "coverage_sim", "gain_gap",
        "handoff_rate", "single_cell_handoff_rate", "capacity",
        "overhead_ratio"};
    return names;
}

MetricValue evaluate_metric(const std::string& metric, const ExperimentConfig& config) {
    const QuadratureSpec& quad = config.coverage.quad;
    if (metric == "coop_member") {
        return {coop_prob_member(config.member_order, config.policy.rho, config.net.lambda_s, quad)};
    }
    if (metric == "coop_exact") {
        return {coop_prob_exactly(config.k, config.policy.rho, config.net.lambda_s, quad)};
    }
    if (metric == "coop_mean") {
        return {expected_coop_count(config.policy.rho, 1e-12, quad)};
    }
    if (metric == "coverage") {
        return {coverage_probability(config.k, coverage_network(config), coverage_law(config), config.coverage)};
    }
    if (metric == "coverage_sim") {
        const SimEstimate e = simulate_coverage(coverage_network(config), sim_spec(config));
        return {e.mean, e.std_error};
    }
    if (metric == "gain_gap") {
        const GainGap g = gain_gap_study(coverage_network(config), sim_spec(config));
        return {g.difference, g.difference_std_error};
    }
    if (metric == "handoff_rate" || metric == "single_cell_handoff_rate") {
        const RateEstimate r = handoff_rate(run_mobility_replications(mobility_run(config), mobility_params(config)),
                                            0.99, metric == "single_cell_handoff_rate");
        return {r.rate, r.std_error};
    }
    if (metric == "capacity") {
        return {vehicular_capacity(coverage_network(config), config.effective_policy(), config.overhead,
                                   capacity_model(config))};
    }
    if (metric == "overhead_ratio") {
        const OverheadReport r = overhead_ratio(coverage_network(config), config.effective_policy(),
                                                mobility_run(config), mobility_params(config), config.overhead,
                                                capacity_model(config));
        // Propagates the handoff-rate error; capacity is deterministic.
        const double se = r.handoff_rate > 0.0 ? r.ratio * r.handoff_rate_std_error / r.handoff_rate : 0.0;
        return {r.ratio, se};
    }
    std::string names;
    for (const std::string& n : metric_names()) {
        names += (names.empty() ? "" : ", ") + n;
    }
    throw UsageError("unknown metric '" + metric + "'; valid metrics: " + names);
}

namespace {

struct PresetSpec {
    const char* name;
    const char* title;
    const char* y_label;
    std::vector<std::pair<const char*, const char*>> defaults;
};

const std::vector<PresetSpec>& presets() {
    static const std::vector<PresetSpec> table = {
        {"fig2", "Membership probability of BS_i vs cooperative threshold", "P(BS_i cooperates)",
         {{"metric", "coop_member"}, {"sweep", "rho"}, {"grid", "1:5:0.1"}, {"curve", "member_order"},
          {"curves", "2,3,4,5"}}},
        {"fig3", "Probability of exactly k cooperating BSs vs cooperative threshold", "P_k",
         {{"metric", "coop_exact"}, {"sweep", "rho"}, {"grid", "1:5:0.1"}, {"curve", "k"}, {"curves", "1,2,3,4,5"}}},
        {"fig4", "Coverage vs SIR threshold for several path-loss exponents (k = 3)", "coverage probability",
         {{"metric", "coverage"}, {"k", "3"}, {"sweep", "epsilon_db"}, {"grid", "-10:10:1"}, {"curve", "eta"},
          {"curves", "3,3.5,4,4.5,5"}}},
        {"fig5", "Coverage vs SIR threshold for several transmit antenna counts (k = 3)", "coverage probability",
         {{"metric", "coverage"}, {"k", "3"}, {"sweep", "epsilon_db"}, {"grid", "-10:10:1"}, {"curve", "n_t"},
          {"curves", "1,2,4,6,8"}}},
        {"fig6", "Coverage vs cell radius for several transmit antenna counts (k = 3)", "coverage probability",
         {{"metric", "coverage"}, {"k", "3"}, {"distance_law", "cell_edge"}, {"sweep", "cell_radius"},
          {"grid", "20:100:5"}, {"curve", "n_t"}, {"curves", "2,4,6,8"}}},
        {"fig7", "Coverage with (k = 3) and without (k = 1) cooperation", "coverage probability",
         {{"metric", "coverage"}, {"sweep", "epsilon_db"}, {"grid", "-10:10:1"}, {"curve", "k"}, {"curves", "1,3"}}},
        {"fig8", "Handoff rate vs vehicle speed", "handoffs per second",
         {{"metric", "handoff_rate"}, {"sweep", "mean_speed"}, {"grid", "5:30:5"}, {"curve", "rho"},
          {"curves", "1,1.2,1.5"}}},
        {"fig9", "Vehicular capacity vs cell radius", "capacity (bit/s)",
         {{"metric", "capacity"}, {"distance_law", "cell_edge"}, {"sweep", "cell_radius"}, {"grid", "50:100:5"},
          {"curve", "rho"}, {"curves", "1,1.2,1.5"}}},
        {"fig10", "Overhead ratio vs vehicle speed", "overhead ratio",
         {{"metric", "overhead_ratio"}, {"distance_law", "cell_edge"}, {"sweep", "mean_speed"}, {"grid", "5:30:5"},
          {"curve", "rho"}, {"curves", "1,1.2,1.5"}}},
        {"fig11", "Overhead ratio vs cell radius", "overhead ratio",
         {{"metric", "overhead_ratio"}, {"distance_law", "cell_edge"}, {"sweep", "cell_radius"},
          {"grid", "50:120:5"}, {"curve", "rho"}, {"curves", "1,1.2,1.5"}}},
    };
    return table;
}

const PresetSpec* find_preset(const std::string& name) {
    for (const PresetSpec& p : presets()) {
        if (name == p.name) {
            return &p;
        }
    }
    return nullptr;
}

struct Curve {
    std::string label;
    std::string key; // empty: no curve parameter
    double value = 0.0;
    std::string metric;
};

std::vector<Curve> build_curves(const ExperimentConfig& config) {
    std::vector<Curve> curves;
    if (config.curve.empty()) {
        curves.push_back({config.metric, "", 0.0, config.metric});
        return curves;
    }
    if (!ExperimentConfig::is_numeric_key(config.curve)) {
        throw UsageError("curve parameter '" + config.curve + "' is not a numeric parameter");
    }
    if (config.curves.empty()) {
        throw UsageError("curve parameter '" + config.curve + "' needs a nonempty 'curves' list");
    }
    for (double v : config.curves) {
        curves.push_back({config.curve + "=" + format_double(v), config.curve, v, config.metric});
    }
    // The serving-cell rate on the same trajectories, for comparison with rho = 1.
    if (config.preset == "fig8" && config.metric == "handoff_rate" && config.curve == "rho") {
        curves.push_back({"single_cell", "rho", 1.0, "single_cell_handoff_rate"});
    }
    return curves;
}

bool is_probability_metric(const std::string& metric) {
    return metric == "coop_member" || metric == "coop_exact" || metric == "coverage" || metric == "coverage_sim";
}

bool is_simulated_metric(const std::string& metric) {
    return metric == "coverage_sim" || metric == "gain_gap" || metric == "handoff_rate" ||
           metric == "single_cell_handoff_rate" || metric == "overhead_ratio";
}

} // namespace

const std::vector<std::string>& preset_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const PresetSpec& p : presets()) {
            v.emplace_back(p.name);
        }
        v.emplace_back("custom");
        return v;
    }();
    return names;
}

void apply_preset(ExperimentConfig& config, const std::string& preset) {
    if (preset == "custom") {
        config.preset = preset;
        return;
    }
    const PresetSpec* p = find_preset(preset);
    if (!p) {
        std::string names;
        for (const std::string& n : preset_names()) {
            names += (names.empty() ? "" : ", ") + n;
        }
        throw UsageError("unknown preset '" + preset + "'; valid presets: " + names);
    }
    config.preset = preset;
    for (const auto& [key, value] : p->defaults) {
        config.set_default(key, value);
    }
}

std::vector<std::string> run_experiment(const ExperimentConfig& base) {
    const auto started = std::chrono::steady_clock::now();
    ExperimentConfig config = base;
    apply_preset(config, config.preset);
    if (!ExperimentConfig::is_numeric_key(config.sweep)) {
        std::string names;
        for (const std::string& k : ExperimentConfig::keys()) {
            if (ExperimentConfig::is_numeric_key(k)) {
                names += (names.empty() ? "" : ", ") + k;
            }
        }
        throw UsageError("sweep variable '" + config.sweep + "' is not a numeric parameter; valid: " + names);
    }
    if (config.grid.empty()) {
        throw UsageError("sweep grid must not be empty");
    }
    const std::vector<Curve> curves = build_curves(config);

    CurveTable table;
    CurveTable errors;
    table.x_label = errors.x_label = config.sweep;
    table.x = errors.x = config.grid;
    bool any_simulated = false;
    for (const Curve& c : curves) {
        table.curve_labels.push_back(c.label);
        errors.curve_labels.push_back(c.label);
        std::vector<double> ys;
        std::vector<double> es;
        for (double x : config.grid) {
            ExperimentConfig point = config;
            if (!c.key.empty()) {
                point.set(c.key, format_double(c.value));
            }
            point.set(config.sweep, format_double(x));
            const MetricValue v = evaluate_metric(c.metric, point);
            if (!std::isfinite(v.value)) {
                throw NumericalInstabilityError("non-finite " + c.metric + " at " + config.sweep + " = " +
                                                format_double(x));
            }
            if (is_probability_metric(c.metric) && (v.value < -1e-9 || v.value > 1.0 + 1e-9)) {
                throw NumericalInstabilityError(c.metric + " outside [0, 1] at " + config.sweep + " = " +
                                                format_double(x));
            }
            ys.push_back(v.value);
            es.push_back(v.std_error < 0.0 ? 0.0 : v.std_error);
        }
        any_simulated = any_simulated || is_simulated_metric(c.metric);
        table.y.push_back(ys);
        errors.y.push_back(es);
    }

    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(config.output_dir, ec);
    if (ec) {
        throw IoError("cannot create output directory " + config.output_dir + ": " + ec.message());
    }
    const fs::path dir(config.output_dir);
    std::vector<std::string> files;
    const std::string stem = config.preset;
    const std::string csv = (dir / (stem + ".csv")).string();
    table.write_csv(csv);
    files.push_back(csv);
    if (any_simulated) {
        const std::string se = (dir / (stem + "_std_error.csv")).string();
        errors.write_csv(se);
        files.push_back(se);
    }
    if (config.svg) {
        const PresetSpec* p = find_preset(stem);
        const std::string svg = (dir / (stem + ".svg")).string();
        write_svg(table, p ? p->title : config.metric + " vs " + config.sweep, p ? p->y_label : config.metric, svg);
        files.push_back(svg);
    }

    const std::string manifest = (dir / (stem + "_manifest.txt")).string();
    const double runtime =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    std::ofstream out(manifest);
    if (!out) {
        throw IoError("cannot write " + manifest);
    }
    out << "# coopnet experiment manifest\n";
    out << "version = " << version_string() << '\n';
    out << "runtime_s = " << format_double(runtime) << '\n';
    out << "hardware_threads = " << std::thread::hardware_concurrency() << '\n';
    for (const std::string& f : files) {
        out << "output = " << f << '\n';
    }
    for (const auto& [k, v] : config.effective()) {
        out << k << " = " << v << '\n';
    }
    out << "effective_k_max = " << config.effective_policy().k_max << '\n';
    if (!out) {
        throw IoError("write failed: " + manifest);
    }
    files.push_back(manifest);
    return files;
}

Report run_analytic(const ExperimentConfig& config) {
    Report r;
    const NetworkParams net = coverage_network(config);
    const DistanceLaw law = coverage_law(config);
    const CoopPolicy policy = config.effective_policy();
    r.add("k", static_cast<long long>(config.k));
    r.add("distance_law", law_text(law));
    r.add("epsilon", net.epsilon);
    r.add("coverage", coverage_probability(config.k, net, law, config.coverage));
    if (law.kind == DistanceLaw::Kind::fixed_distance) {
        const RecurrenceState s = recurrence_state(law.distance, config.k, net, config.coverage);
        r.add("x0", s.x.front());
        r.add("a", s.a);
    }
    r.add("rho", policy.rho);
    r.add("expected_coop_count", expected_coop_count(policy.rho, 1e-12, config.coverage.quad));
    for (int i = 2; i <= 6; ++i) {
        r.add("coop_prob_member_" + std::to_string(i),
              coop_prob_member(i, policy.rho, config.net.lambda_s, config.coverage.quad));
    }
    for (int k = 1; k <= 6; ++k) {
        r.add("coop_prob_exactly_" + std::to_string(k),
              coop_prob_exactly(k, policy.rho, config.net.lambda_s, config.coverage.quad));
    }
    return r;
}

Report run_simulate(const ExperimentConfig& config, const std::string& raw_csv_path) {
    const NetworkParams net = coverage_network(config);
    CoverageSimSpec spec = sim_spec(config);
    std::ofstream raw;
    if (!raw_csv_path.empty()) {
        raw.open(raw_csv_path);
        if (!raw) {
            throw IoError("cannot write " + raw_csv_path);
        }
        spec.raw_csv = &raw;
    }
    const SimEstimate e = simulate_coverage(net, spec);
    if (spec.raw_csv && !raw) {
        throw IoError("write failed: " + raw_csv_path);
    }
    Report r;
    r.add("k", static_cast<long long>(spec.k));
    r.add("distance_law", law_text(spec.law));
    r.add("gain_mode", config.get("gain_mode"));
    r.add("epsilon", net.epsilon);
    r.add("trials", static_cast<long long>(e.n_trials));
    r.add("seed", std::to_string(spec.seed));
    r.add("coverage_sim", e.mean);
    r.add("std_error", e.std_error);
    r.add("confidence", e.confidence);
    r.add("ci_low", e.ci_low());
    r.add("ci_high", e.ci_high());
    r.add("coverage_analytic", coverage_probability(spec.k, net, spec.law, config.coverage));
    return r;
}

Report run_mobility(const ExperimentConfig& config, const std::string& trace_csv_path) {
    const MobilityRunSpec run = mobility_run(config);
    const MobilityParams mob = mobility_params(config);
    const std::vector<MobilityTrace> traces = run_mobility_replications(run, mob);
    const RateEstimate coop = handoff_rate(traces);
    const RateEstimate single = handoff_rate(traces, 0.99, true);
    long long truncated = 0;
    long long clamped = 0;
    for (const MobilityTrace& t : traces) {
        truncated += t.truncated ? 1 : 0;
        clamped += t.clamped_speeds;
    }
    if (!trace_csv_path.empty()) {
        simulate_replication(run, mob, 0, true).write_csv(trace_csv_path);
    }
    Report r;
    r.add("rho", run.rho);
    r.add("mean_speed", mob.mean_speed);
    r.add("replications", static_cast<long long>(traces.size()));
    r.add("handoff_events", static_cast<long long>(coop.events));
    r.add("duration_s", coop.duration);
    r.add("handoff_rate", coop.rate);
    r.add("std_error", coop.std_error);
    r.add("ci_low", coop.ci_low);
    r.add("ci_high", coop.ci_high);
    r.add("single_cell_handoff_rate", single.rate);
    r.add("single_cell_std_error", single.std_error);
    r.add("truncated_traces", truncated);
    r.add("clamped_speeds", clamped);
    return r;
}

Report run_overhead(const ExperimentConfig& config) {
    const OverheadReport o = overhead_ratio(coverage_network(config), config.effective_policy(), mobility_run(config),
                                            mobility_params(config), config.overhead, capacity_model(config));
    std::ostringstream text;
    o.write_text(text);
    Report r;
    std::istringstream in(text.str());
    std::string line;
    while (std::getline(in, line)) {
        const auto eq = line.find(" = ");
        if (eq != std::string::npos) {
            r.add(line.substr(0, eq), line.substr(eq + 3));
        }
    }
    return r;
}

} // namespace coopnet
