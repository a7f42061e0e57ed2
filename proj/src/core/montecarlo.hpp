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

#ifndef COOPNET_MONTECARLO_HPP
#define COOPNET_MONTECARLO_HPP

#include "core/coverage.hpp"
#include "core/geometry.hpp"

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace coopnet {

enum class GainMode {
    gamma_sum,       // g = sum |h_mn|^2 ~ Gamma(n_t n_r, 1)
    exact_lambda_max // g = largest eigenvalue of H H^H
};

struct SimEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::size_t n_trials = 0;
    double confidence = 0.99;

    double z() const;
    double ci_low() const { return mean - z() * std_error; }
    double ci_high() const { return mean + z() * std_error; }
    bool contains(double value) const { return value >= ci_low() && value <= ci_high(); }
};

// Binomial estimate from a success count.
SimEstimate binomial_estimate(std::size_t successes, std::size_t trials, double confidence = 0.99);

struct CoverageSimSpec {
    int k = 1;
    DistanceLaw law = DistanceLaw::nearest(1);
    GainMode gain_mode = GainMode::gamma_sum;
    std::size_t n_trials = 10000;
    std::uint64_t seed = 1;
    unsigned workers = 1;
    double confidence = 0.99;
    std::ostream* raw_csv = nullptr; // trial,D_m,sir_linear,covered
};

// Radius of the simulated interferer disc for serving distance D.
double interferer_window(double distance, const NetworkParams& net);

// Relative bias (D / R_w)^(eta - 2) that truncating the interferer field at
// R_w would cause in the mean interference. The simulator adds the missing
// mean as a deterministic term, so this is what remains uncorrected only in
// the fluctuation.
// Fraction (D / window)^(eta - 2) of the mean interference that lies beyond
// the simulated window. The simulator adds that part as its mean.
double truncation_bias(double distance, const NetworkParams& net);

/// P(SIR > epsilon) by simulation. Per trial: draw D, place a PPP of
/// interferers beyond D, draw gains, compare the SIR with epsilon.
/// Deterministic for a seed whatever the worker count.
SimEstimate simulate_coverage(const NetworkParams& net, const CoverageSimSpec& spec);

struct CoopDistribution {
    std::size_t n_trials = 0;
    std::vector<double> size_frequency;   // index k-1: fraction of trials with |set| = k
    std::vector<double> size_std_error;
    std::vector<double> member_frequency; // index i-1: fraction with BS_i in the set
    std::vector<double> member_std_error;
};

/// Empirical cooperative-set statistics: per trial a layout on a disc of
/// radius 7 rho R_c around a vehicle at the origin.
CoopDistribution simulate_coop_distribution(double rho, double lambda_s, std::size_t n_trials,
                                            std::uint64_t seed, unsigned workers = 1,
                                            std::size_t max_order = 16);

struct GainGap {
    SimEstimate gamma_sum;
    SimEstimate exact;
    double difference = 0.0; // gamma_sum - exact
    double difference_std_error = 0.0;
    double confidence = 0.99;
};

/// Coverage with both gain models on common random numbers: the same channel
/// matrices feed the Frobenius-norm gain and the largest eigenvalue.
GainGap gain_gap_study(const NetworkParams& net, const CoverageSimSpec& spec);

struct ChannelGains {
    double frobenius = 0.0;  // sum |h_mn|^2
    double lambda_max = 0.0; // largest eigenvalue of H H^H
};

// One n_r x n_t i.i.d. unit-variance circular complex Gaussian matrix.
ChannelGains draw_channel(int n_t, int n_r, Engine& rng);

/// Samples of the aggregate interference sum_j (P_s/n_t) g_j r_j^-eta from a
/// PPP on r_guard < r < window_radius (g_j ~ Gamma(n_t n_r, 1)).
std::vector<double> sample_interference(const NetworkParams& net, double r_guard, double window_radius,
                                        std::size_t n_trials, std::uint64_t seed, unsigned workers = 1);

} // namespace coopnet

#endif
