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

#ifndef COOPNET_MOBILITY_HPP
#define COOPNET_MOBILITY_HPP

#include "core/geometry.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace coopnet {

struct MobilityParams {
    double alpha = 1.0;           // Gauss-Markov memory, 1 = constant velocity
    double mean_speed = 10.0;     // m/s
    double mean_direction = 0.0;  // rad
    double speed_sigma = 1.0;     // m/s
    double direction_sigma = 0.1; // rad
    double tau = 0.015;           // slot length, s
    double total_time = 200.0;    // s
    std::uint64_t seed = 1;

    void validate() const;
    long slot_count() const;
};

struct MotionState {
    double speed = 0.0;     // m/s
    double direction = 0.0; // rad
};

/// One Gauss-Markov update of speed and direction:
///   v_n = alpha v_{n-1} + (1 - alpha) v_mean + sqrt(1 - alpha^2) x,  x ~ N(0, speed_sigma^2)
/// and the same for the direction. Both innovations are always drawn so the
/// random stream does not depend on alpha. A negative speed is clamped to 0
/// and reported through `clamped`.
MotionState gauss_markov_step(const MotionState& state, const MobilityParams& params, Engine& rng,
                              bool* clamped = nullptr);

// Distance to a BS after moving `step` metres at angle theta relative to the
// BS-to-vehicle direction: sqrt(r^2 + step^2 + 2 r step cos theta).
double update_distance(double r, double step, double theta);

struct SlotRecord {
    long slot = 0;
    double time = 0.0;
    Point position;
    double speed = 0.0;
    double direction = 0.0;
    std::vector<BsId> coop_set;
    bool handoff = false;
};

struct MobilityTrace {
    std::vector<SlotRecord> slots; // empty unless recording was requested
    long handoff_count = 0;        // cooperative-set changes
    long serving_handoff_count = 0; // nearest-BS changes on the same trajectory
    long slot_count = 0;
    double duration = 0.0;          // s, covered span (shorter when truncated)
    long clamped_speeds = 0;
    bool truncated = false;         // vehicle left the trusted region

    // Columns: slot,t_s,x_m,y_m,speed_mps,dir_rad,coop_set_size,coop_set_ids,handoff
    void write_csv(std::ostream& out) const;
    void write_csv(const std::string& path) const;
};

/// Drives one vehicle from `start` through the deployment, recomputing the
/// cooperative set every slot. A handoff is a change of the set of BS
/// identities. Stops early, with `truncated` set, when the vehicle leaves the
/// trusted region.
MobilityTrace simulate_mobility(const Deployment& deployment, const MobilityParams& mob, double rho,
                                bool record_slots = false, Point start = {});

struct RateEstimate {
    double rate = 0.0;      // events per second, pooled
    double std_error = 0.0;
    double confidence = 0.99;
    double ci_low = 0.0;
    double ci_high = 0.0;
    long events = 0;
    double duration = 0.0;
    std::size_t replications = 0;
};

/// Pooled handoff rate sum(H) / sum(T) with a normal-approximation interval
/// across replications (ratio-estimator variance; Poisson for one trace).
RateEstimate handoff_rate(const std::vector<MobilityTrace>& traces, double confidence = 0.99,
                          bool serving_cell_only = false);

struct MobilityRunSpec {
    double lambda = intensity_for_radius(50.0); // BS intensity of the sampled layouts
    double cell_radius = 50.0;                  // sets the guard width (5 radii)
    double rho = 1.0;
    int replications = 100;
    unsigned workers = 1;
};

// Replication r of a run: its own layout and motion stream, both derived
// from mob.seed and r.
MobilityTrace simulate_replication(const MobilityRunSpec& spec, const MobilityParams& mob, std::size_t r,
                                   bool record_slots = false);

/// Independent replications, each with its own layout and motion stream
/// derived from mob.seed and the replication index. The sampling window is
/// sized so that the vehicle stays in the trusted region.
std::vector<MobilityTrace> run_mobility_replications(const MobilityRunSpec& spec,
                                                     const MobilityParams& mob);

} // namespace coopnet

#endif
