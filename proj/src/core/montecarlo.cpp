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

#include "core/montecarlo.hpp"

#include "core/cooperation.hpp"
#include "core/errors.hpp"
#include "core/output.hpp"
#include "core/parallel.hpp"

#include <Eigen/Dense>
#include <boost/math/distributions/normal.hpp>

#include <atomic>
#include <cmath>
#include <complex>
#include <numbers>
#include <ostream>

namespace coopnet {

double SimEstimate::z() const {
    return boost::math::quantile(boost::math::normal(), 0.5 + confidence / 2.0);
}

SimEstimate binomial_estimate(std::size_t successes, std::size_t trials, double confidence) {
    if (trials == 0) {
        throw DomainError("estimate needs at least one trial");
    }
    SimEstimate e;
    e.n_trials = trials;
    e.confidence = confidence;
    e.mean = static_cast<double>(successes) / static_cast<double>(trials);
    e.std_error = std::sqrt(e.mean * (1.0 - e.mean) / static_cast<double>(trials));
    return e;
}

double interferer_window(double distance, const NetworkParams& net) {
    const double rc = net.nominal_cell_radius();
    return std::max(20.0 * rc, distance + 15.0 * rc);
}

double truncation_bias(double distance, const NetworkParams& net) {
    return std::pow(distance / interferer_window(distance, net), net.eta - 2.0);
}

namespace {

double draw_distance(const DistanceLaw& law, double lambda, Engine& rng) {
    if (law.kind == DistanceLaw::Kind::fixed_distance) {
        return law.distance;
    }
    // lambda pi R_m^2 is the m-th arrival of a unit-rate Poisson process.
    std::gamma_distribution<double> arrival(static_cast<double>(law.order), 1.0);
    return std::sqrt(arrival(rng) / (std::numbers::pi * lambda));
}

// Interferers beyond `inner` out to `outer`, generated radially: successive
// values of lambda pi r^2 are unit-rate Poisson arrivals. Returns
// sum g_j r_j^-eta (power factor excluded).
double interference_field(double inner, double outer, const NetworkParams& net, Engine& rng) {
    std::exponential_distribution<double> gap(1.0);
    std::gamma_distribution<double> gain(static_cast<double>(net.antenna_product()), 1.0);
    const bool scalar = net.antenna_product() == 1;
    const bool square_law = net.eta == 4.0;
    const double scale = std::numbers::pi * net.lambda_s;
    const double limit = scale * outer * outer;
    double t = scale * inner * inner;
    const double half_eta = net.eta / 2.0;
    double sum = 0.0;
    for (;;) {
        t += gap(rng);
        if (t > limit) {
            break;
        }
        const double r2 = t / scale;
        const double g = scalar ? gap(rng) : gain(rng);
        sum += square_law ? g / (r2 * r2) : g * std::pow(r2, -half_eta);
    }
    return sum;
}

// Mean of the field beyond `outer`: N 2 pi lambda outer^(2 - eta) / (eta - 2).
double tail_mean(double outer, const NetworkParams& net) {
    return net.antenna_product() * 2.0 * std::numbers::pi * net.lambda_s * std::pow(outer, 2.0 - net.eta) /
           (net.eta - 2.0);
}

struct TrialOutcome {
    double distance = 0.0;
    double sir = 0.0;     // with spec.gain_mode
    double sir_alt = 0.0; // exact eigenvalue gain, paired runs only
};

TrialOutcome run_trial(const NetworkParams& net, const CoverageSimSpec& spec, std::size_t trial,
                       bool paired) {
    Engine rng = make_engine(spec.seed, streams::kCoverageTrial, trial);
    TrialOutcome out;
    out.distance = draw_distance(spec.law, net.lambda_s, rng);
    double signal = 0.0;
    double signal_alt = 0.0;
    if (paired || spec.gain_mode == GainMode::exact_lambda_max) {
        for (int i = 0; i < spec.k; ++i) {
            const ChannelGains g = draw_channel(net.n_t, net.n_r, rng);
            signal += paired || spec.gain_mode == GainMode::gamma_sum ? g.frobenius : g.lambda_max;
            signal_alt += g.lambda_max;
        }
    } else {
        std::gamma_distribution<double> gain(static_cast<double>(spec.k * net.antenna_product()), 1.0);
        signal = gain(rng);
    }
    const double outer = interferer_window(out.distance, net);
    double interference = interference_field(out.distance, outer, net, rng) + tail_mean(outer, net);
    // P_s / n_t multiplies signal and interference alike; only noise sees it.
    interference += net.sigma2 * net.n_t / net.p_s;
    const double path = std::pow(out.distance, -net.eta);
    out.sir = interference > 0.0 ? path * signal / interference : kInfinity;
    out.sir_alt = interference > 0.0 ? path * signal_alt / interference : kInfinity;
    return out;
}

void check_spec(const NetworkParams& net, const CoverageSimSpec& spec) {
    net.validate();
    spec.law.validate();
    if (spec.n_trials == 0) {
        throw DomainError("simulation needs n_trials >= 1");
    }
    if (spec.k < 1) {
        throw DomainError("number of cooperating BSs must be >= 1");
    }
    if (!(spec.confidence > 0.0 && spec.confidence < 1.0)) {
        throw DomainError("confidence must lie in (0, 1)");
    }
}

} // namespace

ChannelGains draw_channel(int n_t, int n_r, Engine& rng) {
    std::normal_distribution<double> gauss(0.0, std::sqrt(0.5));
    Eigen::MatrixXcd h(n_r, n_t);
    double frob = 0.0;
    for (int m = 0; m < n_r; ++m) {
        for (int n = 0; n < n_t; ++n) {
            const double re = gauss(rng);
            const double im = gauss(rng);
            h(m, n) = {re, im};
            frob += re * re + im * im;
        }
    }
    ChannelGains g;
    g.frobenius = frob;
    if (n_r == 1 || n_t == 1) {
        g.lambda_max = frob;
    } else {
        const Eigen::MatrixXcd gram = h * h.adjoint();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(gram, Eigen::EigenvaluesOnly);
        g.lambda_max = solver.eigenvalues().maxCoeff();
    }
    return g;
}

SimEstimate simulate_coverage(const NetworkParams& net, const CoverageSimSpec& spec) {
    check_spec(net, spec);
    std::atomic<std::size_t> covered{0};
    std::vector<TrialOutcome> raw;
    if (spec.raw_csv) {
        raw.resize(spec.n_trials);
    }
    constexpr std::size_t block = 1024;
    const std::size_t blocks = (spec.n_trials + block - 1) / block;
    parallel_for(
        blocks, spec.workers,
        [&](std::size_t b) {
            std::size_t local = 0;
            const std::size_t end = std::min(spec.n_trials, (b + 1) * block);
            for (std::size_t t = b * block; t < end; ++t) {
                const TrialOutcome o = run_trial(net, spec, t, false);
                local += o.sir > net.epsilon ? 1 : 0;
                if (spec.raw_csv) {
                    raw[t] = o;
                }
            }
            covered.fetch_add(local);
        },
        1);
    if (spec.raw_csv) {
        std::ostream& out = *spec.raw_csv;
        out << "trial,D_m,sir_linear,covered\n";
        for (std::size_t t = 0; t < raw.size(); ++t) {
            out << t << ',' << format_double(raw[t].distance) << ',' << format_double(raw[t].sir) << ','
                << (raw[t].sir > net.epsilon ? 1 : 0) << '\n';
        }
    }
    return binomial_estimate(covered.load(), spec.n_trials, spec.confidence);
}

GainGap gain_gap_study(const NetworkParams& net, const CoverageSimSpec& spec) {
    check_spec(net, spec);
    std::atomic<std::size_t> covered_sum{0};
    std::atomic<std::size_t> covered_exact{0};
    std::atomic<std::size_t> only_sum{0};
    std::atomic<std::size_t> only_exact{0};
    constexpr std::size_t block = 1024;
    const std::size_t blocks = (spec.n_trials + block - 1) / block;
    parallel_for(
        blocks, spec.workers,
        [&](std::size_t b) {
            std::size_t cs = 0, ce = 0, os = 0, oe = 0;
            const std::size_t end = std::min(spec.n_trials, (b + 1) * block);
            for (std::size_t t = b * block; t < end; ++t) {
                const TrialOutcome o = run_trial(net, spec, t, true);
                const bool a = o.sir > net.epsilon;
                const bool e = o.sir_alt > net.epsilon;
                cs += a;
                ce += e;
                os += a && !e;
                oe += e && !a;
            }
            covered_sum += cs;
            covered_exact += ce;
            only_sum += os;
            only_exact += oe;
        },
        1);
    GainGap gap;
    gap.confidence = spec.confidence;
    gap.gamma_sum = binomial_estimate(covered_sum.load(), spec.n_trials, spec.confidence);
    gap.exact = binomial_estimate(covered_exact.load(), spec.n_trials, spec.confidence);
    const double n = static_cast<double>(spec.n_trials);
    const double p_plus = only_sum.load() / n;
    const double p_minus = only_exact.load() / n;
    gap.difference = p_plus - p_minus;
    const double second = p_plus + p_minus;
    gap.difference_std_error = std::sqrt(std::max(0.0, second - gap.difference * gap.difference) / n);
    return gap;
}

CoopDistribution simulate_coop_distribution(double rho, double lambda_s, std::size_t n_trials,
                                            std::uint64_t seed, unsigned workers, std::size_t max_order) {
    if (n_trials == 0) {
        throw DomainError("simulation needs n_trials >= 1");
    }
    if (!(rho >= 1.0)) {
        throw DomainError("cooperative threshold rho must be >= 1");
    }
    if (!(lambda_s > 0.0)) {
        throw DomainError("lambda_s must be > 0");
    }
    if (max_order < 1) {
        throw DomainError("max_order must be >= 1");
    }
    const double rc = radius_for_intensity(lambda_s);
    std::vector<std::size_t> sizes(n_trials);
    parallel_for(n_trials, workers, [&](std::size_t t) {
        Engine rng = make_engine(seed, streams::kCoopTrial, t);
        const Deployment layout = sample_ppp(lambda_s, 6.0 * rho * rc, rho * rc, rng);
        sizes[t] = select_coop_set(layout, Point{}, rho).size();
    });
    std::vector<std::size_t> hist(max_order + 1, 0);
    for (std::size_t s : sizes) {
        ++hist[std::min(s, max_order + 1) - 1];
    }
    CoopDistribution d;
    d.n_trials = n_trials;
    const double n = static_cast<double>(n_trials);
    std::size_t at_least = n_trials;
    for (std::size_t k = 1; k <= max_order; ++k) {
        const double pk = hist[k - 1] / n;
        const double member = at_least / n;
        d.size_frequency.push_back(pk);
        d.size_std_error.push_back(std::sqrt(pk * (1.0 - pk) / n));
        d.member_frequency.push_back(member);
        d.member_std_error.push_back(std::sqrt(member * (1.0 - member) / n));
        at_least -= hist[k - 1];
    }
    return d;
}

std::vector<double> sample_interference(const NetworkParams& net, double r_guard, double window_radius,
                                        std::size_t n_trials, std::uint64_t seed, unsigned workers) {
    net.validate();
    if (!(r_guard >= 0.0) || !(window_radius > r_guard)) {
        throw DomainError("interference sampling needs 0 <= r_guard < window_radius");
    }
    std::vector<double> samples(n_trials);
    const double power = net.p_s / net.n_t;
    parallel_for(n_trials, workers, [&](std::size_t t) {
        Engine rng = make_engine(seed, streams::kInterference, t);
        samples[t] = power * interference_field(r_guard, window_radius, net, rng);
    });
    return samples;
}

} // namespace coopnet
