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

#include "core/validate.hpp"

#include "core/errors.hpp"
#include "core/experiment.hpp"
#include "core/output.hpp"

#include <boost/math/special_functions/binomial.hpp>

#include <chrono>
#include <cmath>
#include <numbers>
#include <sstream>

namespace coopnet {

bool ValidationReport::passed() const {
    for (const Check& c : checks) {
        if (!c.passed) {
            return false;
        }
    }
    return !checks.empty();
}

std::string ValidationReport::text() const {
    std::string out;
    for (const Check& c : checks) {
        out += (c.passed ? "PASS " : "FAIL ") + c.name + ": " + c.detail + "\n";
    }
    return out;
}

double richardson_derivative(const std::function<double(double)>& f, double x, int n, double h) {
    // Central difference of order n: sum_j (-1)^j C(n, j) f(x + (n/2 - j) h) / h^n.
    auto central = [&](double step) {
        double acc = 0.0;
        for (int j = 0; j <= n; ++j) {
            const double c = boost::math::binomial_coefficient<double>(static_cast<unsigned>(n), static_cast<unsigned>(j));
            acc += ((j % 2) ? -c : c) * f(x + (n / 2.0 - j) * step);
        }
        return acc / std::pow(step, n);
    };
    const double d1 = central(h);
    const double d2 = central(h / 2.0);
    const double d4 = central(h / 4.0);
    const double r1 = (4.0 * d2 - d1) / 3.0;
    const double r2 = (4.0 * d4 - d2) / 3.0;
    return (16.0 * r2 - r1) / 15.0;
}

namespace {

std::string fmt(double v) {
    std::ostringstream s;
    s.precision(3);
    s << std::scientific << v;
    return s.str();
}

class Suite {
public:
    explicit Suite(ValidationReport& report) : report_(report) {}

    // body returns true on success and fills detail; exceptions count as failure.
    template <typename Body>
    void run(const std::string& name, Body&& body) {
        Check c{name, false, {}};
        try {
            c.passed = body(c.detail);
        } catch (const std::exception& e) {
            c.passed = false;
            c.detail = std::string("error: ") + e.what();
        }
        report_.checks.push_back(std::move(c));
    }

private:
    ValidationReport& report_;
};

bool within(double measured, double bound, std::string& detail) {
    detail = "deviation " + fmt(measured) + " (bound " + fmt(bound) + ")";
    return measured <= bound;
}

bool in_ci(const SimEstimate& e, double target, std::string& detail) {
    detail = "simulated " + format_double(e.mean) + " +- " + fmt(e.z() * e.std_error) + " vs " +
             format_double(target) + " (" + std::to_string(e.n_trials) + " trials)";
    return e.contains(target);
}

} // namespace

ValidationReport run_validation(const ExperimentConfig& config) {
    const auto started = std::chrono::steady_clock::now();
    ValidationReport report;
    Suite suite(report);
    const QuadratureSpec quad = config.coverage.quad;
    const CoverageOptions opts = config.coverage;
    const double pi = std::numbers::pi;
    const std::size_t trials = std::max<std::size_t>(config.trials, 1);

    suite.run("quadrature.exponential_normalization", [&](std::string& d) {
        return within(std::abs(integrate([](double x) { return std::exp(-x); }, 0.0, kInfinity, quad) - 1.0),
                      1e-9, d);
    });
    suite.run("quadrature.arctan_tail", [&](std::string& d) {
        const double v = integrate([](double x) { return 1.0 / (1.0 + x * x); }, 1.0, kInfinity, quad);
        return within(std::abs(v - pi / 4.0), 1e-9, d);
    });
    suite.run("gamma.poisson_identity", [&](std::string& d) {
        return within(std::abs(regularized_gamma_upper(3.0, 2.0) - 5.0 * std::exp(-2.0)), 1e-12, d);
    });
    suite.run("geometry.distance_pdf_normalization", [&](std::string& d) {
        const double lambda = config.net.lambda_s;
        double worst = 0.0;
        for (int n : {1, 2, 3, 5}) {
            const double v =
                integrate([&](double r) { return nth_distance_pdf(r, n, lambda); }, 0.0, kInfinity, quad);
            worst = std::max(worst, std::abs(v - 1.0));
        }
        return within(worst, 1e-8, d);
    });
    suite.run("cooperation.membership_closed_form", [&](std::string& d) {
        double worst = 0.0;
        for (double rho : {1.01, 1.5, 2.0, 3.0, 5.0}) {
            for (int i = 1; i <= 6; ++i) {
                const double exact = std::pow(1.0 - 1.0 / (rho * rho), i - 1);
                worst = std::max(worst, std::abs(coop_prob_member(i, rho, config.net.lambda_s, quad) - exact));
            }
        }
        return within(worst, 1e-6, d);
    });
    suite.run("cooperation.exact_k_geometric_law", [&](std::string& d) {
        double worst = 0.0;
        for (double rho : {1.2, 2.0, 3.0}) {
            const double p = 1.0 / (rho * rho);
            for (int k = 1; k <= 10; ++k) {
                const double exact = p * std::pow(1.0 - p, k - 1);
                worst = std::max(worst, std::abs(coop_prob_exactly(k, rho, config.net.lambda_s, quad) - exact));
            }
        }
        return within(worst, 1e-6, d);
    });
    suite.run("cooperation.intensity_invariance", [&](std::string& d) {
        double worst = 0.0;
        for (double scale : {0.01, 100.0}) {
            const double lambda = config.net.lambda_s * scale;
            for (int i = 2; i <= 4; ++i) {
                worst = std::max(worst, std::abs(coop_prob_member(i, 2.0, lambda, quad) -
                                                 coop_prob_member(i, 2.0, config.net.lambda_s, quad)));
                worst = std::max(worst, std::abs(coop_prob_exactly(i, 1.5, lambda, quad) -
                                                 coop_prob_exactly(i, 1.5, config.net.lambda_s, quad)));
            }
        }
        return within(worst, 1e-8, d);
    });
    suite.run("coverage.siso_interference_coefficients", [&](std::string& d) {
        NetworkParams siso;
        siso.n_t = siso.n_r = 1;
        const double e0 = std::abs(interference_coefficient(0, 1.0, siso, quad) - pi / 4.0);
        const double e1 = std::abs(interference_coefficient(1, 1.0, siso, quad) - (pi / 8.0 + 0.25));
        return within(std::max(e0, e1), 1e-8, d);
    });
    suite.run("coverage.siso_nearest_closed_form", [&](std::string& d) {
        NetworkParams siso;
        siso.n_t = siso.n_r = 1;
        const double v = coverage_probability(1, siso, DistanceLaw::nearest(1), opts);
        return within(std::abs(v - 1.0 / (1.0 + pi / 4.0)), 1e-6, d);
    });
    suite.run("coverage.x0_matches_laplace", [&](std::string& d) {
        const NetworkParams net = config.net;
        const double distance = net.nominal_cell_radius();
        const RecurrenceState s = recurrence_state(distance, 1, net, opts);
        const double l = laplace_interference(laplace_evaluation_point(distance, net), distance, net, quad);
        return within(std::abs(s.x.front() - l), 1e-7, d);
    });
    suite.run("coverage.recurrence_matches_derivatives", [&](std::string& d) {
        // n_t n_r k = 4 at the reference radius.
        NetworkParams net = config.net;
        net.n_t = 2;
        net.n_r = 2;
        const double distance = net.nominal_cell_radius();
        const RecurrenceState st = recurrence_state(distance, 1, net, opts);
        QuadratureSpec fine = quad;
        fine.relative_tolerance *= 1e-3;
        fine.absolute_tolerance *= 1e-3;
        const double s0 = laplace_evaluation_point(distance, net);
        auto laplace = [&](double s) { return laplace_interference(s, distance, net, fine); };
        double worst = 0.0;
        double factorial = 1.0;
        for (int n = 1; n < static_cast<int>(st.x.size()); ++n) {
            factorial *= n;
            const double deriv = richardson_derivative(laplace, s0, n, 0.2 * s0);
            const double from_derivative = std::pow(-s0, n) / factorial * deriv;
            worst = std::max(worst, std::abs(st.x[static_cast<std::size_t>(n)] - from_derivative));
        }
        return within(worst, 1e-4, d);
    });
    suite.run("coverage.nonincreasing_in_threshold", [&](std::string& d) {
        NetworkParams net = config.net;
        double prev = 2.0;
        double worst_rise = 0.0;
        for (int db = -10; db <= 10; db += 2) {
            net.epsilon = db_to_linear(db);
            const double v = coverage_probability(3, net, DistanceLaw::default_for(3), opts);
            worst_rise = std::max(worst_rise, v - prev);
            prev = v;
        }
        return within(std::max(0.0, worst_rise), 0.0, d);
    });
    suite.run("coverage.nondecreasing_in_path_loss", [&](std::string& d) {
        NetworkParams net = config.net;
        net.epsilon = 1.0;
        double prev = -1.0;
        double worst_drop = 0.0;
        for (double eta : {3.0, 3.5, 4.0, 4.5, 5.0}) {
            net.eta = eta;
            const double v = coverage_probability(3, net, DistanceLaw::default_for(3), opts);
            worst_drop = std::max(worst_drop, prev - v);
            prev = v;
        }
        return within(std::max(0.0, worst_drop), 0.0, d);
    });
    suite.run("coverage.cooperation_gain_at_minus_1db", [&](std::string& d) {
        NetworkParams net = config.net;
        net.epsilon = db_to_linear(-1.0);
        const double c1 = coverage_probability(1, net, DistanceLaw::default_for(1), opts);
        const double c3 = coverage_probability(3, net, DistanceLaw::default_for(3), opts);
        d = "k=3 " + format_double(c3) + " vs k=1 " + format_double(c1);
        return c3 > c1;
    });
    suite.run("montecarlo.siso_coverage", [&](std::string& d) {
        NetworkParams siso = config.net;
        siso.n_t = siso.n_r = 1;
        siso.epsilon = 1.0;
        siso.eta = 4.0;
        CoverageSimSpec spec;
        spec.n_trials = trials;
        spec.seed = config.seed;
        spec.workers = config.workers;
        return in_ci(simulate_coverage(siso, spec), coverage_probability(1, siso, DistanceLaw::nearest(1), opts), d);
    });
    suite.run("montecarlo.cooperative_coverage", [&](std::string& d) {
        NetworkParams net = config.net;
        CoverageSimSpec spec;
        spec.k = 3;
        spec.law = DistanceLaw::default_for(3);
        spec.n_trials = trials;
        spec.seed = config.seed;
        spec.workers = config.workers;
        return in_ci(simulate_coverage(net, spec), coverage_probability(3, net, spec.law, opts), d);
    });
    suite.run("montecarlo.coop_set_distribution", [&](std::string& d) {
        const double rho = 2.0;
        const CoopDistribution dist =
            simulate_coop_distribution(rho, config.net.lambda_s, std::max<std::size_t>(trials / 4, 1), config.seed,
                                       config.workers, 8);
        double worst = 0.0;
        for (int k = 1; k <= 6; ++k) {
            const double analytic = coop_prob_exactly(k, rho, config.net.lambda_s, quad);
            const double se = std::max(dist.size_std_error[k - 1], 1e-12);
            worst = std::max(worst, std::abs(dist.size_frequency[k - 1] - analytic) / se);
        }
        d = "largest deviation " + fmt(worst) + " standard errors (bound 3)";
        return worst <= 3.0;
    });
    suite.run("montecarlo.gamma_gain_moments", [&](std::string& d) {
        Engine rng = make_engine(config.seed, streams::kCoverageTrial, 0xfeed);
        const int n = static_cast<int>(std::min<std::size_t>(trials, 200000));
        const int product = config.net.antenna_product();
        double sum = 0.0;
        double sum2 = 0.0;
        for (int i = 0; i < n; ++i) {
            const double g = draw_channel(config.net.n_t, config.net.n_r, rng).frobenius;
            sum += g;
            sum2 += g * g;
        }
        const double mean = sum / n;
        const double se = std::sqrt(static_cast<double>(product) / n);
        d = "mean gain " + format_double(mean) + " vs " + std::to_string(product) + " (3 sigma " + fmt(3 * se) + ")";
        return std::abs(mean - product) <= 3.0 * se;
    });
    suite.run("montecarlo.worker_independence", [&](std::string& d) {
        CoverageSimSpec spec;
        spec.k = 3;
        spec.law = DistanceLaw::default_for(3);
        spec.n_trials = std::min<std::size_t>(trials, 5000);
        spec.seed = config.seed;
        spec.workers = 1;
        const SimEstimate a = simulate_coverage(config.net, spec);
        spec.workers = 3;
        const SimEstimate b = simulate_coverage(config.net, spec);
        d = format_double(a.mean) + " with 1 worker, " + format_double(b.mean) + " with 3";
        return a.mean == b.mean;
    });
    suite.run("overhead.x2_single_class", [&](std::string& d) {
        OverheadParams params;
        params.traffic = {{12200.0, 1.5, 0.03333}};
        const X2Overhead x = x2_overhead(1.0, params);
        return within(std::abs(x.t_x2 - 509.05), 0.05, d);
    });
    suite.run("overhead.expected_overhead_rho2", [&](std::string& d) {
        CoopPolicy policy;
        policy.rho = 2.0;
        policy.k_max = CoopPolicy::required_k_max(2.0, policy.tail_tolerance);
        return within(std::abs(expected_overhead(100.0, policy, quad) - 400.0), 1e-4, d);
    });
    suite.run("mobility.single_cell_coincidence", [&](std::string& d) {
        MobilityRunSpec run;
        run.lambda = config.net.lambda_s;
        run.cell_radius = config.net.nominal_cell_radius();
        run.rho = 1.0;
        run.replications = 4;
        run.workers = config.workers;
        MobilityParams mob;
        mob.total_time = 50.0;
        mob.seed = config.seed;
        const auto traces = run_mobility_replications(run, mob);
        long diff = 0;
        long events = 0;
        for (const MobilityTrace& t : traces) {
            diff += std::labs(t.handoff_count - t.serving_handoff_count);
            events += t.handoff_count;
        }
        d = std::to_string(events) + " set changes, " + std::to_string(diff) + " differing from serving-cell changes";
        return diff == 0 && events > 0;
    });
    suite.run("mobility.stationary_vehicle", [&](std::string& d) {
        MobilityRunSpec run;
        run.lambda = config.net.lambda_s;
        run.cell_radius = config.net.nominal_cell_radius();
        run.rho = 1.5;
        run.replications = 2;
        MobilityParams mob;
        mob.mean_speed = 0.0;
        mob.total_time = 10.0;
        mob.seed = config.seed;
        const RateEstimate r = handoff_rate(run_mobility_replications(run, mob));
        d = "rate " + format_double(r.rate);
        return r.rate == 0.0;
    });
    report.runtime_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return report;
}

} // namespace coopnet
