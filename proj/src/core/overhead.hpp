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

#ifndef COOPNET_OVERHEAD_HPP
#define COOPNET_OVERHEAD_HPP

#include "core/cooperation.hpp"
#include "core/coverage.hpp"
#include "core/mobility.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace coopnet {

struct TrafficClass {
    double flow_rate = 0.0;             // a_l, bits/s
    double arrival_rate = 0.0;          // psi_l, sessions/s
    double mean_session_duration = 0.0; // 1/zeta_l, s

    void validate() const;
    double departure_rate() const { return 1.0 / mean_session_duration; }
};

enum class LogBase { base2, natural };

struct OverheadParams {
    double delta = 480.0;    // control bits per handoff per cell
    double chi = 0.05;       // handoff duration, s
    double bandwidth = 1e7;  // B_w, used as a rate multiplier
    LogBase log_base = LogBase::base2;
    std::vector<TrafficClass> traffic{{12200.0, 1.5, 0.03333}, {353800.0, 0.5, 0.05}};

    void validate() const;
};

// psi / (psi + zeta).
double active_probability(const TrafficClass& t);

struct ClassOverhead {
    double p_active = 0.0;      // p_A
    double handoff_rate = 0.0;  // HO_l, 1/s
    double bits_per_handoff = 0.0; // beta_l = a_l chi
};

struct X2Overhead {
    double t_x2c = 0.0; // bits/s
    double t_x2u = 0.0;
    double t_x2 = 0.0;
    std::vector<ClassOverhead> classes;
};

/// t_x2c = delta ho; HO_l = p_A(l) ho; t_x2u = sum_l a_l chi HO_l.
X2Overhead x2_overhead(double ho, const OverheadParams& params);

/// sum_{k <= k_max} P_k k t_x2. Throws DomainError when the geometric tail
/// bound of the policy exceeds its tail tolerance.
double expected_overhead(double t_x2, const CoopPolicy& policy, const QuadratureSpec& quad = {});

// How the distance D to the cooperating BSs is modelled when the capacity
// averages coverage over the set size.
struct CapacityModel {
    enum class Distance {
        nearest_order, // D ~ f_{R_m}, m = max(1, k - 1), at the intensity of net
        cell_edge      // D fixed at edge_distance
    };
    Distance distance = Distance::nearest_order;
    double edge_distance = 50.0; // metres, cell_edge only
    CoverageOptions coverage{};
};

struct CapacityBreakdown {
    double capacity = 0.0;      // bits/s
    double coverage_mix = 0.0;  // sum_k P_c^k P_k
    double log_factor = 0.0;    // log(1 + epsilon) in the configured base
    std::vector<double> p_k;    // P_1 .. P_kmax
    std::vector<double> p_c;    // P_c^1 .. P_c^kmax (0 where skipped)
};

/// [sum_{k <= k_max} P_c^k P_k] B_w log(1 + eps). Set sizes whose P_k is
/// below 1e-14 are skipped; their contribution is bounded by P_k.
CapacityBreakdown capacity_breakdown(const NetworkParams& net, const CoopPolicy& policy,
                                     const OverheadParams& params, const CapacityModel& model = {});

double vehicular_capacity(const NetworkParams& net, const CoopPolicy& policy,
                          const OverheadParams& params, const CapacityModel& model = {});

struct OverheadReport {
    double handoff_rate = 0.0; // HO, 1/s
    double handoff_rate_std_error = 0.0;
    double t_x2c = 0.0;
    double t_x2u = 0.0;
    double t_x2 = 0.0;
    double expected_coop_count = 0.0; // truncated sum_k k P_k
    double expected_overhead = 0.0;   // E[C], bits/s
    double coverage_mix = 0.0;
    double capacity = 0.0;            // bits/s
    double ratio = 0.0;               // Omega
    double rho = 1.0;
    int k_max = 0;
    LogBase log_base = LogBase::base2;
    std::vector<ClassOverhead> classes;

    // One `key = value` line per field; per-class fields as class<l>_<name>.
    void write_text(std::ostream& out) const;
    std::string to_json() const;
};

/// Omega = E[C] / capacity for a given handoff rate. Throws DomainError when
/// the capacity is 0.
OverheadReport overhead_ratio(double handoff_rate, const NetworkParams& net, const CoopPolicy& policy,
                              const OverheadParams& params, const CapacityModel& model = {});

// Same, with the handoff rate measured by simulated mobility.
OverheadReport overhead_ratio(const NetworkParams& net, const CoopPolicy& policy,
                              const MobilityRunSpec& run, const MobilityParams& mob,
                              const OverheadParams& params, const CapacityModel& model = {});

} // namespace coopnet

#endif
