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

/*
 * coopnet C interface.
 *
 * Every function that can fail returns a coopnet_status; on failure the
 * message is available from coopnet_last_error() on the calling thread until
 * the next failing call on that thread. Objects are opaque handles owned by
 * the caller and released with the matching *_free function (NULL is
 * accepted). Strings returned by the library stay valid as long as the handle
 * they came from.
 */

#ifndef COOPNET_COOPNET_H
#define COOPNET_COOPNET_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(COOPNET_BUILDING_LIBRARY)
#    define COOPNET_API __declspec(dllexport)
#  else
#    define COOPNET_API __declspec(dllimport)
#  endif
#else
#  define COOPNET_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum coopnet_status {
    COOPNET_OK = 0,
    COOPNET_ERROR_INVALID_ARGUMENT = 1, /* NULL handle or output pointer, bad size */
    COOPNET_ERROR_DOMAIN = 2,           /* parameter outside the model's domain */
    COOPNET_ERROR_CONVERGENCE = 3,      /* quadrature did not converge */
    COOPNET_ERROR_NUMERICAL = 4,        /* result left its admissible range */
    COOPNET_ERROR_IO = 5,
    COOPNET_ERROR_USAGE = 6,            /* unknown parameter, preset or metric; malformed value */
    COOPNET_ERROR_VALIDATION = 7,       /* at least one validation check failed */
    COOPNET_ERROR_INTERNAL = 8
} coopnet_status;

COOPNET_API const char* coopnet_last_error(void);
COOPNET_API const char* coopnet_version(void);
COOPNET_API const char* coopnet_status_name(coopnet_status status);

/* ---- network model ---------------------------------------------------- */

typedef struct coopnet_network {
    double lambda_s;    /* BS intensity, per m^2 */
    double eta;         /* path-loss exponent, > 2 */
    int n_t;            /* transmit antennas per BS */
    int n_r;            /* receive antennas per vehicle */
    double epsilon;     /* SIR threshold, linear */
    double p_s;         /* transmit power */
    double sigma2;      /* noise power (simulation only) */
    double cell_radius; /* metres; <= 0 derives it from lambda_s */
} coopnet_network;

/* Defaults: 1/(pi 50^2), eta 4, 4x2 antennas, 0 dB, unit power, no noise, 50 m. */
COOPNET_API void coopnet_network_defaults(coopnet_network* net);

COOPNET_API coopnet_status coopnet_nth_distance_pdf(double r, int n, double lambda, double* out);
COOPNET_API coopnet_status coopnet_nth_distance_cdf(double r, int n, double lambda, double* out);

COOPNET_API coopnet_status coopnet_coop_prob_member(int i, double rho, double lambda_s, double* out);
COOPNET_API coopnet_status coopnet_coop_prob_exactly(int k, double rho, double lambda_s, double* out);
COOPNET_API coopnet_status coopnet_expected_coop_count(double rho, double* out);

COOPNET_API coopnet_status coopnet_laplace_interference(const coopnet_network* net, double s, double r_guard,
                                                         double* out);
COOPNET_API coopnet_status coopnet_interference_coefficient(const coopnet_network* net, int i, double* out);
COOPNET_API coopnet_status coopnet_coverage_given_distance(const coopnet_network* net, double distance, int k,
                                                            double* out);
/* distance_order m >= 1: D ~ f_{R_m}; 0 selects max(1, k - 1). */
COOPNET_API coopnet_status coopnet_coverage_probability(const coopnet_network* net, int k, int distance_order,
                                                         double* out);

typedef struct coopnet_estimate {
    double mean;
    double std_error;
    double ci_low;
    double ci_high;
    uint64_t n_trials;
} coopnet_estimate;

/* gain_mode 0: Gamma-sum gains, 1: largest eigenvalue of H H^H.
 * fixed_distance > 0 replaces the nearest-order law. 99% interval. */
COOPNET_API coopnet_status coopnet_simulate_coverage(const coopnet_network* net, int k, int distance_order,
                                                      double fixed_distance, int gain_mode, uint64_t n_trials,
                                                      uint64_t seed, unsigned workers, coopnet_estimate* out);

/* ---- deployments -------------------------------------------------------- */

typedef struct coopnet_deployment coopnet_deployment;

COOPNET_API coopnet_status coopnet_deployment_sample(double lambda, double window_radius, double guard_radius,
                                                      uint64_t seed, coopnet_deployment** out);
COOPNET_API void coopnet_deployment_free(coopnet_deployment* deployment);
COOPNET_API size_t coopnet_deployment_size(const coopnet_deployment* deployment);
COOPNET_API coopnet_status coopnet_deployment_position(const coopnet_deployment* deployment, size_t id,
                                                        double* x, double* y);
/* Writes up to `capacity` identities; `count` receives the full set size. */
COOPNET_API coopnet_status coopnet_deployment_coop_set(const coopnet_deployment* deployment, double x, double y,
                                                        double rho, size_t* ids, size_t capacity, size_t* count);
COOPNET_API coopnet_status coopnet_deployment_write_csv(const coopnet_deployment* deployment, const char* path);

/* ---- configuration ----------------------------------------------------- */

typedef struct coopnet_config coopnet_config;

COOPNET_API coopnet_status coopnet_config_create(coopnet_config** out);
COOPNET_API void coopnet_config_free(coopnet_config* config);
COOPNET_API coopnet_status coopnet_config_set(coopnet_config* config, const char* key, const char* value);
COOPNET_API coopnet_status coopnet_config_load(coopnet_config* config, const char* path);
/* Copies the value (NUL-terminated) into buffer; `needed` gets its length + 1. */
COOPNET_API coopnet_status coopnet_config_get(const coopnet_config* config, const char* key, char* buffer,
                                               size_t capacity, size_t* needed);

/* ---- mobility traces ---------------------------------------------------- */

typedef struct coopnet_trace coopnet_trace;

/* One vehicle from the origin through the deployment, using the mobility
 * parameters, rho and seed of the config. Slots are recorded. */
COOPNET_API coopnet_status coopnet_trace_simulate(const coopnet_deployment* deployment,
                                                   const coopnet_config* config, coopnet_trace** out);
COOPNET_API void coopnet_trace_free(coopnet_trace* trace);
COOPNET_API long coopnet_trace_handoffs(const coopnet_trace* trace);
COOPNET_API long coopnet_trace_serving_handoffs(const coopnet_trace* trace);
COOPNET_API double coopnet_trace_duration(const coopnet_trace* trace);
COOPNET_API int coopnet_trace_truncated(const coopnet_trace* trace);
COOPNET_API size_t coopnet_trace_slots(const coopnet_trace* trace);
COOPNET_API coopnet_status coopnet_trace_write_csv(const coopnet_trace* trace, const char* path);

/* ---- reports ------------------------------------------------------------ */

typedef struct coopnet_report coopnet_report;

COOPNET_API void coopnet_report_free(coopnet_report* report);
COOPNET_API size_t coopnet_report_size(const coopnet_report* report);
COOPNET_API const char* coopnet_report_key(const coopnet_report* report, size_t index);
COOPNET_API const char* coopnet_report_value(const coopnet_report* report, size_t index);
COOPNET_API coopnet_status coopnet_report_get_double(const coopnet_report* report, const char* key, double* out);
COOPNET_API const char* coopnet_report_text(const coopnet_report* report);
COOPNET_API const char* coopnet_report_json(const coopnet_report* report);

/* ---- commands ------------------------------------------------------------ */

COOPNET_API coopnet_status coopnet_run_analytic(const coopnet_config* config, coopnet_report** out);
/* raw_csv_path may be NULL. */
COOPNET_API coopnet_status coopnet_run_simulate(const coopnet_config* config, const char* raw_csv_path,
                                                 coopnet_report** out);
/* trace_csv_path may be NULL; otherwise replication 0 is written there. */
COOPNET_API coopnet_status coopnet_run_mobility(const coopnet_config* config, const char* trace_csv_path,
                                                 coopnet_report** out);
COOPNET_API coopnet_status coopnet_run_overhead(const coopnet_config* config, coopnet_report** out);
/* Report keys output_1, output_2, ... list the files written. */
COOPNET_API coopnet_status coopnet_run_figure(const coopnet_config* config, const char* preset,
                                               coopnet_report** out);
/* One report entry per check, value "pass: ..." or "fail: ...". The report is
 * produced even when the status is COOPNET_ERROR_VALIDATION. */
COOPNET_API coopnet_status coopnet_run_validate(const coopnet_config* config, coopnet_report** out);

/* Comma-separated names, static storage. */
COOPNET_API const char* coopnet_preset_names(void);
COOPNET_API const char* coopnet_metric_names(void);

#ifdef __cplusplus
}
#endif

#endif
