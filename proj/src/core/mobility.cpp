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

#include "core/mobility.hpp"

#include "core/cooperation.hpp"
#include "core/errors.hpp"
#include "core/output.hpp"
#include "core/parallel.hpp"

#include <boost/math/distributions/normal.hpp>

#include <algorithm>
#include <cassert>
#include <cmath>
#include <fstream>
#include <numbers>
#include <ostream>

namespace coopnet {

void MobilityParams::validate() const {
    if (!(alpha >= 0.0 && alpha <= 1.0)) {
        throw DomainError("alpha must lie in [0, 1]");
    }
    if (!(mean_speed >= 0.0)) {
        throw DomainError("mean speed must be >= 0");
    }
    if (!(speed_sigma >= 0.0) || !(direction_sigma >= 0.0)) {
        throw DomainError("innovation standard deviations must be >= 0");
    }
    if (!(tau > 0.0)) {
        throw DomainError("slot duration tau must be > 0");
    }
    if (!(total_time >= tau)) {
        throw DomainError("total_time must be >= tau");
    }
    if (!std::isfinite(mean_direction)) {
        throw DomainError("mean direction must be finite");
    }
}

long MobilityParams::slot_count() const {
    return static_cast<long>(std::floor(total_time / tau + 1e-9));
}

MotionState gauss_markov_step(const MotionState& state, const MobilityParams& params, Engine& rng,
                              bool* clamped) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    const double xs = gauss(rng) * params.speed_sigma;
    const double xd = gauss(rng) * params.direction_sigma;
    const double a = params.alpha;
    const double spread = std::sqrt(std::max(0.0, 1.0 - a * a));
    MotionState next;
    next.speed = a * state.speed + (1.0 - a) * params.mean_speed + spread * xs;
    next.direction = a * state.direction + (1.0 - a) * params.mean_direction + spread * xd;
    const bool negative = next.speed < 0.0;
    if (negative) {
        next.speed = 0.0;
    }
    if (clamped) {
        *clamped = negative;
    }
    return next;
}

double update_distance(double r, double step, double theta) {
    const double radicand = r * r + step * step + 2.0 * r * step * std::cos(theta);
    assert(radicand > -1e-9 * (r + step) * (r + step));
    return std::sqrt(std::max(0.0, radicand));
}

void MobilityTrace::write_csv(std::ostream& out) const {
    out << "slot,t_s,x_m,y_m,speed_mps,dir_rad,coop_set_size,coop_set_ids,handoff\n";
    for (const SlotRecord& s : slots) {
        out << s.slot << ',' << format_double(s.time) << ',' << format_double(s.position.x) << ','
            << format_double(s.position.y) << ',' << format_double(s.speed) << ','
            << format_double(s.direction) << ',' << s.coop_set.size() << ',';
        for (std::size_t i = 0; i < s.coop_set.size(); ++i) {
            out << (i ? ";" : "") << s.coop_set[i];
        }
        out << ',' << (s.handoff ? 1 : 0) << '\n';
    }
}

void MobilityTrace::write_csv(const std::string& path) const {
    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot write " + path);
    }
    write_csv(out);
    if (!out) {
        throw IoError("write failed: " + path);
    }
}

MobilityTrace simulate_mobility(const Deployment& deployment, const MobilityParams& mob, double rho,
                                bool record_slots, Point start) {
    mob.validate();
    if (deployment.empty()) {
        throw DomainError("mobility simulation needs a non-empty deployment");
    }
    if (!deployment.in_trusted_region(start)) {
        throw DomainError("vehicle must start inside the trusted region");
    }
    if (!(rho >= 1.0)) {
        throw DomainError("cooperative threshold rho must be >= 1");
    }
    // About one BS per index cell keeps nearest/within queries to a few buckets.
    const double outer = deployment.outer_radius();
    const double cell = std::max(1.0, outer * std::sqrt(std::numbers::pi / static_cast<double>(deployment.size())));
    const NeighborIndex index(deployment, cell);
    Engine rng = make_engine(mob.seed, streams::kMobility);

    MobilityTrace trace;
    MotionState state{mob.mean_speed, mob.mean_direction};
    Point pos = start;
    std::vector<BsId> current = select_coop_set(index, pos, rho);
    BsId serving = index.nearest(pos).first;
    auto record = [&](long slot, bool handoff) {
        if (record_slots) {
            trace.slots.push_back({slot, slot * mob.tau, pos, state.speed, state.direction, current, handoff});
        }
    };
    record(0, false);

    const long slots = mob.slot_count();
    for (long n = 1; n <= slots; ++n) {
        // Moves with the velocity of the previous slot, then updates it.
        const Point next{pos.x + state.speed * mob.tau * std::cos(state.direction),
                         pos.y + state.speed * mob.tau * std::sin(state.direction)};
        if (!deployment.in_trusted_region(next)) {
            trace.truncated = true;
            break;
        }
        pos = next;
        bool clamped = false;
        state = gauss_markov_step(state, mob, rng, &clamped);
        trace.clamped_speeds += clamped ? 1 : 0;

        std::vector<BsId> updated = select_coop_set(index, pos, rho);
        const bool handoff = updated != current;
        current = std::move(updated);
        trace.handoff_count += handoff ? 1 : 0;
        const BsId nearest = index.nearest(pos).first;
        trace.serving_handoff_count += nearest != serving ? 1 : 0;
        serving = nearest;
        trace.slot_count = n;
        record(n, handoff);
    }
    trace.duration = trace.slot_count * mob.tau;
    return trace;
}

RateEstimate handoff_rate(const std::vector<MobilityTrace>& traces, double confidence,
                          bool serving_cell_only) {
    if (!(confidence > 0.0 && confidence < 1.0)) {
        throw DomainError("confidence must lie in (0, 1)");
    }
    RateEstimate est;
    est.confidence = confidence;
    est.replications = traces.size();
    for (const MobilityTrace& t : traces) {
        est.events += serving_cell_only ? t.serving_handoff_count : t.handoff_count;
        est.duration += t.duration;
    }
    if (!(est.duration > 0.0)) {
        throw DomainError("handoff rate needs a positive total duration");
    }
    est.rate = est.events / est.duration;
    const std::size_t n = traces.size();
    if (n == 1) {
        est.std_error = std::sqrt(static_cast<double>(est.events)) / est.duration;
    } else {
        const double mean_t = est.duration / n;
        double ss = 0.0;
        for (const MobilityTrace& t : traces) {
            const double h = static_cast<double>(serving_cell_only ? t.serving_handoff_count : t.handoff_count);
            const double resid = h - est.rate * t.duration;
            ss += resid * resid;
        }
        est.std_error = std::sqrt(ss / (n * (n - 1.0))) / mean_t;
    }
    const double z = boost::math::quantile(boost::math::normal(), 0.5 + confidence / 2.0);
    est.ci_low = est.rate - z * est.std_error;
    est.ci_high = est.rate + z * est.std_error;
    return est;
}

MobilityTrace simulate_replication(const MobilityRunSpec& spec, const MobilityParams& mob, std::size_t r,
                                   bool record_slots) {
    mob.validate();
    if (!(spec.lambda > 0.0) || !(spec.cell_radius > 0.0)) {
        throw DomainError("mobility run needs positive intensity and cell radius");
    }
    // Generous speed bound: the vehicle rarely outruns it even when alpha < 1.
    const double speed_bound = mob.mean_speed + (mob.alpha < 1.0 ? 4.0 * mob.speed_sigma : 0.0);
    const double window = speed_bound * mob.total_time * 1.25 + 2.0 * spec.cell_radius;
    const double guard = 5.0 * spec.cell_radius;
    Engine layout_rng = make_engine(mob.seed, streams::kDeployment, r);
    const Deployment deployment = sample_ppp(spec.lambda, window, guard, layout_rng);
    MobilityParams rep = mob;
    rep.seed = derive_seed(mob.seed, streams::kMobility, r);
    return simulate_mobility(deployment, rep, spec.rho, record_slots);
}

std::vector<MobilityTrace> run_mobility_replications(const MobilityRunSpec& spec,
                                                     const MobilityParams& mob) {
    if (spec.replications < 1) {
        throw DomainError("at least one mobility replication is required");
    }
    std::vector<MobilityTrace> traces(static_cast<std::size_t>(spec.replications));
    parallel_for(
        traces.size(), spec.workers, [&](std::size_t r) { traces[r] = simulate_replication(spec, mob, r); }, 1);
    return traces;
}

} // namespace coopnet
