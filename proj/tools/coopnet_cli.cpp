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

// Command-line front end. Everything goes through the C interface.

#include "coopnet/coopnet.h"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

namespace {

enum ExitCode { kSuccess = 0, kUsage = 1, kNumerical = 2, kValidation = 3 };

int exit_code_for(coopnet_status status) {
    switch (status) {
    case COOPNET_OK: return kSuccess;
    case COOPNET_ERROR_CONVERGENCE:
    case COOPNET_ERROR_NUMERICAL:
    case COOPNET_ERROR_INTERNAL: return kNumerical;
    case COOPNET_ERROR_VALIDATION: return kValidation;
    default: return kUsage;
    }
}

struct ConfigDeleter {
    void operator()(coopnet_config* c) const { coopnet_config_free(c); }
};
struct ReportDeleter {
    void operator()(coopnet_report* r) const { coopnet_report_free(r); }
};
using ConfigPtr = std::unique_ptr<coopnet_config, ConfigDeleter>;
using ReportPtr = std::unique_ptr<coopnet_report, ReportDeleter>;

struct CommonOptions {
    std::string config_file;
    std::vector<std::string> sets;
    std::string seed;
    std::string trials;
    std::string out;
    std::string workers;
    bool json = false;
};

int report_error(coopnet_status status) {
    std::cerr << "coopnet: " << coopnet_status_name(status) << ": " << coopnet_last_error() << '\n';
    return exit_code_for(status);
}

// File first, then the dedicated flags, then --set in the order given.
coopnet_status build_config(const CommonOptions& opts, ConfigPtr& config) {
    coopnet_config* raw = nullptr;
    coopnet_status s = coopnet_config_create(&raw);
    if (s != COOPNET_OK) return s;
    config.reset(raw);
    if (!opts.config_file.empty()) {
        s = coopnet_config_load(raw, opts.config_file.c_str());
        if (s != COOPNET_OK) return s;
    }
    const std::pair<const char*, const std::string*> flags[] = {
        {"seed", &opts.seed}, {"trials", &opts.trials}, {"out", &opts.out}, {"workers", &opts.workers}};
    for (const auto& [key, value] : flags) {
        if (value->empty()) continue;
        s = coopnet_config_set(raw, key, value->c_str());
        if (s != COOPNET_OK) return s;
    }
    for (const std::string& kv : opts.sets) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) {
            std::cerr << "coopnet: --set expects key=value, got '" << kv << "'\n";
            return COOPNET_ERROR_USAGE;
        }
        s = coopnet_config_set(raw, kv.substr(0, eq).c_str(), kv.substr(eq + 1).c_str());
        if (s != COOPNET_OK) return s;
    }
    return COOPNET_OK;
}

void print_report(const coopnet_report* report, bool json) {
    std::cout << (json ? coopnet_report_json(report) : coopnet_report_text(report));
    if (json) std::cout << '\n';
    std::cout.flush();
}

void add_common(CLI::App* cmd, CommonOptions& opts) {
    cmd->add_option("--config", opts.config_file, "Config file of `key = value` lines")->check(CLI::ExistingFile);
    cmd->add_option("--set", opts.sets, "Override one parameter, key=value (repeatable)");
    cmd->add_option("--seed", opts.seed, "Master seed");
    cmd->add_option("--trials", opts.trials, "Monte Carlo trials");
    cmd->add_option("--out", opts.out, "Output directory");
    cmd->add_option("--workers", opts.workers, "Worker threads, 0 = all cores");
    cmd->add_flag("--json", opts.json, "Print the report as JSON");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cooperative small-cell vehicular network model and simulator"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(coopnet_version()));

    CommonOptions opts;
    std::string raw_csv;
    std::string trace_csv;
    std::string preset;

    auto* analytic = app.add_subcommand("analytic", "Evaluate the analytical model at one parameter point");
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo coverage next to the analytical value");
    auto* mobility = app.add_subcommand("mobility", "Handoff rates from Gauss-Markov mobility replications");
    auto* overhead = app.add_subcommand("overhead", "X2 overhead, capacity and overhead ratio");
    auto* figure = app.add_subcommand("figure", "Run a figure preset sweep and write CSV/SVG/manifest");
    auto* validate = app.add_subcommand("validate", "Run the oracle and invariant suite");
    for (auto* cmd : {analytic, simulate, mobility, overhead, figure, validate}) add_common(cmd, opts);
    simulate->add_option("--raw", raw_csv, "Write per-trial samples to this CSV");
    mobility->add_option("--trace", trace_csv, "Write the replication-0 trajectory to this CSV");
    figure->add_option("preset", preset, std::string("One of: ") + coopnet_preset_names())->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    ConfigPtr config;
    coopnet_status status = build_config(opts, config);
    if (status != COOPNET_OK) return report_error(status);

    coopnet_report* raw = nullptr;
    if (analytic->parsed()) {
        status = coopnet_run_analytic(config.get(), &raw);
    } else if (simulate->parsed()) {
        status = coopnet_run_simulate(config.get(), raw_csv.empty() ? nullptr : raw_csv.c_str(), &raw);
    } else if (mobility->parsed()) {
        status = coopnet_run_mobility(config.get(), trace_csv.empty() ? nullptr : trace_csv.c_str(), &raw);
    } else if (overhead->parsed()) {
        status = coopnet_run_overhead(config.get(), &raw);
    } else if (figure->parsed()) {
        status = coopnet_run_figure(config.get(), preset.c_str(), &raw);
    } else {
        status = coopnet_run_validate(config.get(), &raw);
    }
    ReportPtr report(raw);

    if (validate->parsed() && report && !opts.json) {
        // One PASS/FAIL line per check.
        for (std::size_t i = 0; i < coopnet_report_size(report.get()); ++i) {
            const std::string key = coopnet_report_key(report.get(), i);
            const std::string value = coopnet_report_value(report.get(), i);
            if (key == "runtime_s") {
                std::cout << "runtime_s = " << value << '\n';
            } else if (value.rfind("pass: ", 0) == 0) {
                std::cout << "PASS " << key << ": " << value.substr(6) << '\n';
            } else {
                std::cout << "FAIL " << key << ": " << value.substr(6) << '\n';
            }
        }
    } else if (report) {
        print_report(report.get(), opts.json);
    }
    if (status != COOPNET_OK) return report_error(status);
    return kSuccess;
}
