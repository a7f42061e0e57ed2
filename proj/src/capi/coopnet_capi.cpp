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

#include "coopnet/coopnet.h"

#include "core/config.hpp"
#include "core/cooperation.hpp"
#include "core/coverage.hpp"
#include "core/errors.hpp"
#include "core/experiment.hpp"
#include "core/geometry.hpp"
#include "core/mobility.hpp"
#include "core/montecarlo.hpp"
#include "core/validate.hpp"

#include <cstring>
#include <exception>
#include <memory>
#include <new>
#include <string>
#include <vector>

struct coopnet_deployment {
    coopnet::Deployment deployment;
};

struct coopnet_config {
    coopnet::ExperimentConfig config;
};

struct coopnet_trace {
    coopnet::MobilityTrace trace;
};

struct coopnet_report {
    coopnet::Report report;
    std::string text;
    std::string json;
};

namespace {

thread_local std::string last_error;

coopnet_status fail(coopnet_status status, const std::string& message) {
    last_error = message;
    return status;
}

// Runs body and maps the library's exceptions onto status codes.
template <typename Body>
coopnet_status guarded(Body&& body) {
    try {
        body();
        return COOPNET_OK;
    } catch (const coopnet::UsageError& e) {
        return fail(COOPNET_ERROR_USAGE, e.what());
    } catch (const coopnet::DomainError& e) {
        return fail(COOPNET_ERROR_DOMAIN, e.what());
    } catch (const coopnet::ConvergenceError& e) {
        return fail(COOPNET_ERROR_CONVERGENCE, e.what());
    } catch (const coopnet::NumericalInstabilityError& e) {
        return fail(COOPNET_ERROR_NUMERICAL, e.what());
    } catch (const coopnet::IoError& e) {
        return fail(COOPNET_ERROR_IO, e.what());
    } catch (const std::bad_alloc&) {
        return fail(COOPNET_ERROR_INTERNAL, "out of memory");
    } catch (const std::invalid_argument& e) {
        return fail(COOPNET_ERROR_DOMAIN, e.what());
    } catch (const std::out_of_range& e) {
        return fail(COOPNET_ERROR_INVALID_ARGUMENT, e.what());
    } catch (const std::exception& e) {
        return fail(COOPNET_ERROR_INTERNAL, e.what());
    } catch (...) {
        return fail(COOPNET_ERROR_INTERNAL, "unknown error");
    }
}

coopnet_status null_argument(const char* name) {
    return fail(COOPNET_ERROR_INVALID_ARGUMENT, std::string(name) + " must not be NULL");
}

coopnet::NetworkParams to_params(const coopnet_network& net) {
    coopnet::NetworkParams p;
    p.lambda_s = net.lambda_s;
    p.eta = net.eta;
    p.n_t = net.n_t;
    p.n_r = net.n_r;
    p.epsilon = net.epsilon;
    p.p_s = net.p_s;
    p.sigma2 = net.sigma2;
    if (net.cell_radius > 0.0)
        p.cell_radius = net.cell_radius;
    else
        p.cell_radius.reset();
    p.validate();
    return p;
}

coopnet_report* wrap(coopnet::Report report) {
    auto* out = new coopnet_report{std::move(report), {}, {}};
    out->text = out->report.text();
    out->json = out->report.json();
    return out;
}

std::string joined(const std::vector<std::string>& names) {
    std::string out;
    for (const auto& n : names) {
        if (!out.empty()) out += ',';
        out += n;
    }
    return out;
}

} // namespace

extern "C" {

const char* coopnet_last_error(void) { return last_error.c_str(); }

const char* coopnet_version(void) {
    static const std::string version = coopnet::version_string();
    return version.c_str();
}

const char* coopnet_status_name(coopnet_status status) {
    switch (status) {
    case COOPNET_OK: return "ok";
    case COOPNET_ERROR_INVALID_ARGUMENT: return "invalid argument";
    case COOPNET_ERROR_DOMAIN: return "domain error";
    case COOPNET_ERROR_CONVERGENCE: return "convergence failure";
    case COOPNET_ERROR_NUMERICAL: return "numerical instability";
    case COOPNET_ERROR_IO: return "i/o error";
    case COOPNET_ERROR_USAGE: return "usage error";
    case COOPNET_ERROR_VALIDATION: return "validation failure";
    case COOPNET_ERROR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

void coopnet_network_defaults(coopnet_network* net) {
    if (!net) return;
    const coopnet::NetworkParams p;
    net->lambda_s = p.lambda_s;
    net->eta = p.eta;
    net->n_t = p.n_t;
    net->n_r = p.n_r;
    net->epsilon = p.epsilon;
    net->p_s = p.p_s;
    net->sigma2 = p.sigma2;
    net->cell_radius = p.cell_radius.value_or(0.0);
}

coopnet_status coopnet_nth_distance_pdf(double r, int n, double lambda, double* out) {
    if (!out) return null_argument("out");
    return guarded([&] { *out = coopnet::nth_distance_pdf(r, n, lambda); });
}

coopnet_status coopnet_nth_distance_cdf(double r, int n, double lambda, double* out) {
    if (!out) return null_argument("out");
    return guarded([&] { *out = coopnet::nth_distance_cdf(r, n, lambda); });
}

coopnet_status coopnet_coop_prob_member(int i, double rho, double lambda_s, double* out) {
    if (!out) return null_argument("out");
    return guarded([&] { *out = coopnet::coop_prob_member(i, rho, lambda_s); });
}

coopnet_status coopnet_coop_prob_exactly(int k, double rho, double lambda_s, double* out) {
    if (!out) return null_argument("out");
    return guarded([&] { *out = coopnet::coop_prob_exactly(k, rho, lambda_s); });
}

coopnet_status coopnet_expected_coop_count(double rho, double* out) {
    if (!out) return null_argument("out");
    return guarded([&] { *out = coopnet::expected_coop_count(rho); });
}

coopnet_status coopnet_laplace_interference(const coopnet_network* net, double s, double r_guard, double* out) {
    if (!net) return null_argument("net");
    if (!out) return null_argument("out");
    return guarded([&] { *out = coopnet::laplace_interference(s, r_guard, to_params(*net)); });
}

coopnet_status coopnet_interference_coefficient(const coopnet_network* net, int i, double* out) {
    if (!net) return null_argument("net");
    if (!out) return null_argument("out");
    return guarded([&] {
        const auto p = to_params(*net);
        *out = coopnet::interference_coefficient(i, p.epsilon, p);
    });
}

coopnet_status coopnet_coverage_given_distance(const coopnet_network* net, double distance, int k, double* out) {
    if (!net) return null_argument("net");
    if (!out) return null_argument("out");
    return guarded([&] { *out = coopnet::coverage_given_distance(distance, k, to_params(*net)); });
}

coopnet_status coopnet_coverage_probability(const coopnet_network* net, int k, int distance_order, double* out) {
    if (!net) return null_argument("net");
    if (!out) return null_argument("out");
    return guarded([&] {
        const auto law = distance_order > 0 ? coopnet::DistanceLaw::nearest(distance_order)
                                            : coopnet::DistanceLaw::default_for(k);
        *out = coopnet::coverage_probability(k, to_params(*net), law);
    });
}

coopnet_status coopnet_simulate_coverage(const coopnet_network* net, int k, int distance_order,
                                         double fixed_distance, int gain_mode, uint64_t n_trials,
                                         uint64_t seed, unsigned workers, coopnet_estimate* out) {
    if (!net) return null_argument("net");
    if (!out) return null_argument("out");
    if (gain_mode != 0 && gain_mode != 1)
        return fail(COOPNET_ERROR_INVALID_ARGUMENT, "gain_mode must be 0 or 1");
    return guarded([&] {
        coopnet::CoverageSimSpec spec;
        spec.k = k;
        if (fixed_distance > 0.0)
            spec.law = coopnet::DistanceLaw::fixed(fixed_distance);
        else if (distance_order > 0)
            spec.law = coopnet::DistanceLaw::nearest(distance_order);
        else
            spec.law = coopnet::DistanceLaw::default_for(k);
        spec.gain_mode = gain_mode == 0 ? coopnet::GainMode::gamma_sum : coopnet::GainMode::exact_lambda_max;
        spec.n_trials = static_cast<std::size_t>(n_trials);
        spec.seed = seed;
        spec.workers = workers;
        const auto est = coopnet::simulate_coverage(to_params(*net), spec);
        out->mean = est.mean;
        out->std_error = est.std_error;
        out->ci_low = est.ci_low();
        out->ci_high = est.ci_high();
        out->n_trials = est.n_trials;
    });
}

coopnet_status coopnet_deployment_sample(double lambda, double window_radius, double guard_radius, uint64_t seed,
                                         coopnet_deployment** out) {
    if (!out) return null_argument("out");
    *out = nullptr;
    return guarded([&] {
        auto rng = coopnet::make_engine(seed, coopnet::streams::kDeployment, 0);
        *out = new coopnet_deployment{coopnet::sample_ppp(lambda, window_radius, guard_radius, rng)};
    });
}

void coopnet_deployment_free(coopnet_deployment* deployment) { delete deployment; }

size_t coopnet_deployment_size(const coopnet_deployment* deployment) {
    return deployment ? deployment->deployment.size() : 0;
}

coopnet_status coopnet_deployment_position(const coopnet_deployment* deployment, size_t id, double* x,
                                           double* y) {
    if (!deployment) return null_argument("deployment");
    if (!x || !y) return null_argument("x/y");
    if (id >= deployment->deployment.size())
        return fail(COOPNET_ERROR_INVALID_ARGUMENT, "BS identity " + std::to_string(id) + " out of range");
    const auto p = deployment->deployment.position(id);
    *x = p.x;
    *y = p.y;
    return COOPNET_OK;
}

coopnet_status coopnet_deployment_coop_set(const coopnet_deployment* deployment, double x, double y, double rho,
                                           size_t* ids, size_t capacity, size_t* count) {
    if (!deployment) return null_argument("deployment");
    if (!count) return null_argument("count");
    if (capacity > 0 && !ids) return null_argument("ids");
    return guarded([&] {
        const auto set = coopnet::select_coop_set(deployment->deployment, coopnet::Point{x, y}, rho);
        *count = set.size();
        for (std::size_t i = 0; i < set.size() && i < capacity; ++i) ids[i] = set[i];
    });
}

coopnet_status coopnet_deployment_write_csv(const coopnet_deployment* deployment, const char* path) {
    if (!deployment) return null_argument("deployment");
    if (!path) return null_argument("path");
    return guarded([&] { deployment->deployment.write_csv(std::string(path)); });
}

coopnet_status coopnet_config_create(coopnet_config** out) {
    if (!out) return null_argument("out");
    *out = nullptr;
    return guarded([&] { *out = new coopnet_config{}; });
}

void coopnet_config_free(coopnet_config* config) { delete config; }

coopnet_status coopnet_config_set(coopnet_config* config, const char* key, const char* value) {
    if (!config) return null_argument("config");
    if (!key || !value) return null_argument("key/value");
    return guarded([&] { config->config.set(key, value); });
}

coopnet_status coopnet_config_load(coopnet_config* config, const char* path) {
    if (!config) return null_argument("config");
    if (!path) return null_argument("path");
    return guarded([&] { config->config.load_file(path); });
}

coopnet_status coopnet_config_get(const coopnet_config* config, const char* key, char* buffer, size_t capacity,
                                  size_t* needed) {
    if (!config) return null_argument("config");
    if (!key) return null_argument("key");
    if (capacity > 0 && !buffer) return null_argument("buffer");
    return guarded([&] {
        const std::string value = config->config.get(key);
        if (needed) *needed = value.size() + 1;
        if (capacity == 0) return;
        const std::size_t n = std::min(value.size(), capacity - 1);
        std::memcpy(buffer, value.data(), n);
        buffer[n] = '\0';
    });
}

coopnet_status coopnet_trace_simulate(const coopnet_deployment* deployment, const coopnet_config* config,
                                      coopnet_trace** out) {
    if (!deployment) return null_argument("deployment");
    if (!config) return null_argument("config");
    if (!out) return null_argument("out");
    *out = nullptr;
    return guarded([&] {
        const auto mob = coopnet::mobility_params(config->config);
        *out = new coopnet_trace{
            coopnet::simulate_mobility(deployment->deployment, mob, config->config.policy.rho, true)};
    });
}

void coopnet_trace_free(coopnet_trace* trace) { delete trace; }

long coopnet_trace_handoffs(const coopnet_trace* trace) { return trace ? trace->trace.handoff_count : 0; }

long coopnet_trace_serving_handoffs(const coopnet_trace* trace) {
    return trace ? trace->trace.serving_handoff_count : 0;
}

double coopnet_trace_duration(const coopnet_trace* trace) { return trace ? trace->trace.duration : 0.0; }

int coopnet_trace_truncated(const coopnet_trace* trace) { return trace && trace->trace.truncated ? 1 : 0; }

size_t coopnet_trace_slots(const coopnet_trace* trace) { return trace ? trace->trace.slots.size() : 0; }

coopnet_status coopnet_trace_write_csv(const coopnet_trace* trace, const char* path) {
    if (!trace) return null_argument("trace");
    if (!path) return null_argument("path");
    return guarded([&] { trace->trace.write_csv(std::string(path)); });
}

void coopnet_report_free(coopnet_report* report) { delete report; }

size_t coopnet_report_size(const coopnet_report* report) { return report ? report->report.entries.size() : 0; }

const char* coopnet_report_key(const coopnet_report* report, size_t index) {
    if (!report || index >= report->report.entries.size()) return nullptr;
    return report->report.entries[index].first.c_str();
}

const char* coopnet_report_value(const coopnet_report* report, size_t index) {
    if (!report || index >= report->report.entries.size()) return nullptr;
    return report->report.entries[index].second.c_str();
}

coopnet_status coopnet_report_get_double(const coopnet_report* report, const char* key, double* out) {
    if (!report) return null_argument("report");
    if (!key || !out) return null_argument("key/out");
    const std::string* value = report->report.find(key);
    if (!value) return fail(COOPNET_ERROR_INVALID_ARGUMENT, std::string("no report field '") + key + "'");
    try {
        std::size_t used = 0;
        *out = std::stod(*value, &used);
        if (used != value->size()) throw std::invalid_argument("trailing text");
    } catch (const std::exception&) {
        return fail(COOPNET_ERROR_INVALID_ARGUMENT,
                    std::string("report field '") + key + "' is not numeric: " + *value);
    }
    return COOPNET_OK;
}

const char* coopnet_report_text(const coopnet_report* report) { return report ? report->text.c_str() : nullptr; }

const char* coopnet_report_json(const coopnet_report* report) { return report ? report->json.c_str() : nullptr; }

coopnet_status coopnet_run_analytic(const coopnet_config* config, coopnet_report** out) {
    if (!config) return null_argument("config");
    if (!out) return null_argument("out");
    *out = nullptr;
    return guarded([&] { *out = wrap(coopnet::run_analytic(config->config)); });
}

coopnet_status coopnet_run_simulate(const coopnet_config* config, const char* raw_csv_path, coopnet_report** out) {
    if (!config) return null_argument("config");
    if (!out) return null_argument("out");
    *out = nullptr;
    return guarded([&] {
        *out = wrap(coopnet::run_simulate(config->config, raw_csv_path ? raw_csv_path : ""));
    });
}

coopnet_status coopnet_run_mobility(const coopnet_config* config, const char* trace_csv_path,
                                    coopnet_report** out) {
    if (!config) return null_argument("config");
    if (!out) return null_argument("out");
    *out = nullptr;
    return guarded([&] {
        *out = wrap(coopnet::run_mobility(config->config, trace_csv_path ? trace_csv_path : ""));
    });
}

coopnet_status coopnet_run_overhead(const coopnet_config* config, coopnet_report** out) {
    if (!config) return null_argument("config");
    if (!out) return null_argument("out");
    *out = nullptr;
    return guarded([&] { *out = wrap(coopnet::run_overhead(config->config)); });
}

coopnet_status coopnet_run_figure(const coopnet_config* config, const char* preset, coopnet_report** out) {
    if (!config) return null_argument("config");
    if (!preset) return null_argument("preset");
    if (!out) return null_argument("out");
    *out = nullptr;
    return guarded([&] {
        coopnet::ExperimentConfig cfg = config->config;
        coopnet::apply_preset(cfg, preset);
        const auto files = coopnet::run_experiment(cfg);
        coopnet::Report report;
        report.add("preset", std::string(preset));
        for (std::size_t i = 0; i < files.size(); ++i) report.add("output_" + std::to_string(i + 1), files[i]);
        *out = wrap(std::move(report));
    });
}

coopnet_status coopnet_run_validate(const coopnet_config* config, coopnet_report** out) {
    if (!config) return null_argument("config");
    if (!out) return null_argument("out");
    *out = nullptr;
    bool passed = false;
    const coopnet_status status = guarded([&] {
        const auto result = coopnet::run_validation(config->config);
        coopnet::Report report;
        for (const auto& c : result.checks)
            report.add(c.name, std::string(c.passed ? "pass: " : "fail: ") + c.detail);
        report.add("runtime_s", result.runtime_s);
        passed = result.passed();
        *out = wrap(std::move(report));
    });
    if (status != COOPNET_OK) return status;
    if (!passed) return fail(COOPNET_ERROR_VALIDATION, "one or more validation checks failed");
    return COOPNET_OK;
}

const char* coopnet_preset_names(void) {
    static const std::string names = joined(coopnet::preset_names());
    return names.c_str();
}

const char* coopnet_metric_names(void) {
    static const std::string names = joined(coopnet::metric_names());
    return names.c_str();
}

} // extern "C"
