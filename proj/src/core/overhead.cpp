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

#include "core/overhead.hpp"

#include "core/errors.hpp"
#include "core/output.hpp"

#include <json.hpp>

#include <cmath>
#include <ostream>
#include <sstream>

namespace coopnet {

void TrafficClass::validate() const {
    if (!(flow_rate > 0.0) || !(arrival_rate > 0.0) || !(mean_session_duration > 0.0)) {
        throw DomainError("traffic class fields must all be > 0");
    }
}

void OverheadParams::validate() const {
    if (!(delta > 0.0) || !(chi > 0.0)) {
        throw DomainError("delta and chi must be > 0");
    }
    if (!(bandwidth >= 0.0)) {
        throw DomainError("bandwidth must be >= 0");
    }
    if (traffic.empty()) {
        throw DomainError("at least one traffic class is required");
    }
    for (const TrafficClass& t : traffic) {
        t.validate();
    }
}

double active_probability(const TrafficClass& t) {
    t.validate();
    return t.arrival_rate / (t.arrival_rate + t.departure_rate());
}

X2Overhead x2_overhead(double ho, const OverheadParams& params) {
    params.validate();
    if (!(ho >= 0.0)) {
        throw DomainError("handoff rate must be >= 0");
    }
    X2Overhead out;
    out.t_x2c = params.delta * ho;
    for (const TrafficClass& t : params.traffic) {
        ClassOverhead c;
        c.p_active = active_probability(t);
        c.handoff_rate = c.p_active * ho;
        c.bits_per_handoff = t.flow_rate * params.chi;
        out.t_x2u += c.bits_per_handoff * c.handoff_rate;
        out.classes.push_back(c);
    }
    out.t_x2 = out.t_x2c + out.t_x2u;
    return out;
}

namespace {

void check_tail(const CoopPolicy& policy) {
    policy.validate();
    if (policy.tail_bound() > policy.tail_tolerance) {
        std::ostringstream msg;
        msg << "k_max = " << policy.k_max << " leaves tail mass up to " << policy.tail_bound()
            << " > tolerance " << policy.tail_tolerance << " at rho = " << policy.rho
            << "; use k_max >= " << CoopPolicy::required_k_max(policy.rho, policy.tail_tolerance);
        throw DomainError(msg.str());
    }
}

double truncated_mean_count(const CoopPolicy& policy, const QuadratureSpec& quad) {
    double mean = 0.0;
    for (int k = 1; k <= policy.k_max; ++k) {
        mean += k * coop_prob_exactly(k, policy.rho, 1.0, quad);
    }
    return mean;
}

} // namespace

double expected_overhead(double t_x2, const CoopPolicy& policy, const QuadratureSpec& quad) {
    if (!(t_x2 >= 0.0)) {
        throw DomainError("t_x2 must be >= 0");
    }
    check_tail(policy);
    return t_x2 * truncated_mean_count(policy, quad);
}

CapacityBreakdown capacity_breakdown(const NetworkParams& net, const CoopPolicy& policy,
                                     const OverheadParams& params, const CapacityModel& model) {
    params.validate();
    net.validate();
    check_tail(policy);
    if (model.distance == CapacityModel::Distance::cell_edge && !(model.edge_distance > 0.0)) {
        throw DomainError("cell-edge capacity model needs edge_distance > 0");
    }
    CapacityBreakdown out;
    out.log_factor = params.log_base == LogBase::base2 ? std::log2(1.0 + net.epsilon)
                                                       : std::log1p(net.epsilon);
    for (int k = 1; k <= policy.k_max; ++k) {
        const double pk = coop_prob_exactly(k, policy.rho, 1.0, model.coverage.quad);
        double pc = 0.0;
        if (pk >= 1e-14) {
            const DistanceLaw law = model.distance == CapacityModel::Distance::cell_edge
                                        ? DistanceLaw::fixed(model.edge_distance)
                                        : DistanceLaw::default_for(k);
            pc = coverage_probability(k, net, law, model.coverage);
        }
        out.p_k.push_back(pk);
        out.p_c.push_back(pc);
        out.coverage_mix += pc * pk;
    }
    out.capacity = out.coverage_mix * params.bandwidth * out.log_factor;
    return out;
}

double vehicular_capacity(const NetworkParams& net, const CoopPolicy& policy,
                          const OverheadParams& params, const CapacityModel& model) {
    return capacity_breakdown(net, policy, params, model).capacity;
}

OverheadReport overhead_ratio(double handoff_rate, const NetworkParams& net, const CoopPolicy& policy,
                              const OverheadParams& params, const CapacityModel& model) {
    const X2Overhead x2 = x2_overhead(handoff_rate, params);
    const CapacityBreakdown cap = capacity_breakdown(net, policy, params, model);
    if (!(cap.capacity > 0.0)) {
        throw DomainError("vehicular capacity is 0: overhead ratio undefined");
    }
    OverheadReport r;
    r.handoff_rate = handoff_rate;
    r.t_x2c = x2.t_x2c;
    r.t_x2u = x2.t_x2u;
    r.t_x2 = x2.t_x2;
    r.classes = x2.classes;
    for (std::size_t i = 0; i < cap.p_k.size(); ++i) {
        r.expected_coop_count += (i + 1.0) * cap.p_k[i];
    }
    r.expected_overhead = r.t_x2 * r.expected_coop_count;
    r.coverage_mix = cap.coverage_mix;
    r.capacity = cap.capacity;
    r.ratio = r.expected_overhead / r.capacity;
    r.rho = policy.rho;
    r.k_max = policy.k_max;
    r.log_base = params.log_base;
    return r;
}

OverheadReport overhead_ratio(const NetworkParams& net, const CoopPolicy& policy,
                              const MobilityRunSpec& run, const MobilityParams& mob,
                              const OverheadParams& params, const CapacityModel& model) {
    MobilityRunSpec spec = run;
    spec.rho = policy.rho;
    const RateEstimate ho = handoff_rate(run_mobility_replications(spec, mob));
    OverheadReport r = overhead_ratio(ho.rate, net, policy, params, model);
    r.handoff_rate_std_error = ho.std_error;
    return r;
}

namespace {

const char* log_base_name(LogBase b) { return b == LogBase::base2 ? "base2" : "natural"; }

} // namespace

void OverheadReport::write_text(std::ostream& out) const {
    auto line = [&](const std::string& key, double v) { out << key << " = " << format_double(v) << '\n'; };
    line("handoff_rate", handoff_rate);
    line("handoff_rate_std_error", handoff_rate_std_error);
    line("t_x2c", t_x2c);
    line("t_x2u", t_x2u);
    line("t_x2", t_x2);
    line("expected_coop_count", expected_coop_count);
    line("expected_overhead", expected_overhead);
    line("coverage_mix", coverage_mix);
    line("capacity", capacity);
    line("ratio", ratio);
    line("rho", rho);
    out << "k_max = " << k_max << '\n';
    out << "log_base = " << log_base_name(log_base) << '\n';
    for (std::size_t i = 0; i < classes.size(); ++i) {
        const std::string p = "class" + std::to_string(i + 1) + "_";
        line(p + "p_active", classes[i].p_active);
        line(p + "handoff_rate", classes[i].handoff_rate);
        line(p + "bits_per_handoff", classes[i].bits_per_handoff);
    }
}

std::string OverheadReport::to_json() const {
    nlohmann::ordered_json j;
    j["handoff_rate"] = handoff_rate;
    j["handoff_rate_std_error"] = handoff_rate_std_error;
    j["t_x2c"] = t_x2c;
    j["t_x2u"] = t_x2u;
    j["t_x2"] = t_x2;
    j["expected_coop_count"] = expected_coop_count;
    j["expected_overhead"] = expected_overhead;
    j["coverage_mix"] = coverage_mix;
    j["capacity"] = capacity;
    j["ratio"] = ratio;
    j["rho"] = rho;
    j["k_max"] = k_max;
    j["log_base"] = log_base_name(log_base);
    j["classes"] = nlohmann::ordered_json::array();
    for (const ClassOverhead& c : classes) {
        j["classes"].push_back({{"p_active", c.p_active},
                                {"handoff_rate", c.handoff_rate},
                                {"bits_per_handoff", c.bits_per_handoff}});
    }
    return j.dump(2);
}

} // namespace coopnet
