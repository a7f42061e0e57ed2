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

#include "core/coverage.hpp"

#include "core/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <limits>
#include <memory>
#include <mutex>
#include <numbers>
#include <shared_mutex>
#include <sstream>
#include <tuple>

namespace coopnet {

void DistanceLaw::validate() const {
    if (kind == Kind::fixed_distance && !(distance > 0.0)) {
        throw DomainError("fixed distance law requires D > 0");
    }
    if (kind == Kind::nearest_order && order < 1) {
        throw DomainError("nearest-order distance law requires m >= 1");
    }
}

namespace {

void check_eta(double eta) {
    if (!(eta > 2.0)) {
        throw DomainError("eta must be > 2: aggregate interference diverges otherwise");
    }
}

// int_lower^inf f(v) dv for integrands decaying like v^(-eta/2). With
// v = lower + scale w^m the mapped integrand vanishes smoothly at the end of
// the t/(1-t) map instead of carrying an integrable singularity there.
double integrate_tail(const RealFunction& f, double lower, double scale, double eta,
                      const QuadratureSpec& quad) {
    const double decay = eta / 2.0 - 1.0;
    const int m = std::max(2, static_cast<int>(std::ceil(3.0 / decay)));
    auto mapped = [&](double w) {
        const double wm1 = std::pow(w, m - 1);
        return f(lower + scale * wm1 * w) * scale * m * wm1;
    };
    return integrate(mapped, 0.0, kInfinity, quad);
}

using TableKey = std::tuple<double, double, int, double, double, int>;

struct CoefficientCache {
    std::shared_mutex mutex;
    std::map<TableKey, std::shared_ptr<const std::vector<double>>> tables;
};

CoefficientCache& cache() {
    static CoefficientCache instance;
    return instance;
}

// k_0 .. k_{count-1}, computed once per (epsilon, eta, N, quadrature) and
// shared by concurrent readers.
std::shared_ptr<const std::vector<double>> coefficient_table(double epsilon, const NetworkParams& net,
                                                             int count, const QuadratureSpec& quad) {
    const TableKey key{epsilon, net.eta, net.antenna_product(), quad.relative_tolerance,
                       quad.absolute_tolerance, quad.max_subdivisions};
    auto& c = cache();
    {
        std::shared_lock lock(c.mutex);
        auto it = c.tables.find(key);
        if (it != c.tables.end() && static_cast<int>(it->second->size()) >= count) {
            return it->second;
        }
    }
    std::unique_lock lock(c.mutex);
    auto it = c.tables.find(key);
    std::vector<double> table;
    if (it != c.tables.end()) {
        if (static_cast<int>(it->second->size()) >= count) {
            return it->second;
        }
        table = *it->second;
    }
    for (int i = static_cast<int>(table.size()); i < count; ++i) {
        table.push_back(interference_coefficient(i, epsilon, net, quad));
    }
    auto shared = std::make_shared<const std::vector<double>>(std::move(table));
    c.tables[key] = shared;
    return shared;
}

// Coverage as a function of a = pi lambda_s D^2 for fixed (k, net): the
// recurrence weights are assembled once.
class CoverageSeries {
public:
    CoverageSeries(int k, const NetworkParams& net, const CoverageOptions& options)
        : terms_(k * net.antenna_product()) {
        const int n_prod = net.antenna_product();
        table_ = coefficient_table(net.epsilon, net, terms_, options.quad);
        weights_.assign(static_cast<std::size_t>(terms_), 0.0);
        // w_j = N C(j - 1 + N, N) k_j, built in log space.
        for (int j = 1; j < terms_; ++j) {
            const double kj = (*table_)[static_cast<std::size_t>(j)];
            if (kj > 0.0) {
                const double log_w = std::log(static_cast<double>(n_prod)) +
                                     log_binomial(j - 1 + n_prod, n_prod) + std::log(kj);
                weights_[static_cast<std::size_t>(j)] = std::exp(log_w) * options.recurrence_scale;
            }
        }
    }

    int terms() const { return terms_; }
    double k0() const { return (*table_)[0]; }
    const std::vector<double>& table() const { return *table_; }

    // Forward substitution through the strictly lower-triangular system:
    // x_n = (a / n) sum_{j=1..n} w_j x_{n-j}.
    void solve(double a, std::vector<double>& x) const {
        x.assign(static_cast<std::size_t>(terms_), 0.0);
        x[0] = std::exp(-a * k0());
        for (int n = 1; n < terms_; ++n) {
            double acc = 0.0;
            for (int j = 1; j <= n; ++j) {
                acc += weights_[static_cast<std::size_t>(j)] * x[static_cast<std::size_t>(n - j)];
            }
            x[static_cast<std::size_t>(n)] = a * acc / n;
        }
    }

    double coverage(double a, std::vector<double>& scratch, int k, int n_prod) const {
        solve(a, scratch);
        double sum = 0.0;
        for (double v : scratch) {
            sum += v;
        }
        if (!(sum >= -1e-9 && sum <= 1.0 + 1e-9)) {
            std::ostringstream msg;
            msg << "coverage series left [0, 1]: sum " << sum << " with k n_t n_r = " << k * n_prod
                << " (k=" << k << "), a=" << a << ", x_0=" << scratch[0] << ", k_0=" << k0();
            throw NumericalInstabilityError(msg.str());
        }
        return std::clamp(sum, 0.0, 1.0);
    }

private:
    int terms_;
    std::shared_ptr<const std::vector<double>> table_;
    std::vector<double> weights_;
};

void check_coverage_inputs(int k, const NetworkParams& net) {
    if (k < 1) {
        throw DomainError("number of cooperating BSs must be >= 1");
    }
    check_eta(net.eta);
    net.validate();
}

} // namespace

double laplace_interference(double s, double r_guard, const NetworkParams& net,
                            const QuadratureSpec& quad) {
    if (!(s >= 0.0)) {
        throw DomainError("laplace_interference: s must be >= 0");
    }
    if (!(r_guard >= 0.0)) {
        throw DomainError("laplace_interference: r_guard must be >= 0");
    }
    check_eta(net.eta);
    if (s == 0.0) {
        return 1.0;
    }
    const double power = net.antenna_product();
    const double half_eta = net.eta / 2.0;
    // With u = r^2 and u = (s P_s/n_t)^{2/eta} w the integrand becomes
    // 1 - (1 + w^{-eta/2})^{-N}, which varies on the unit scale.
    const double strength = s * net.p_s / net.n_t;
    const double unit = std::pow(strength, 2.0 / net.eta);
    const double w0 = r_guard * r_guard / unit;
    auto f = [&](double w) { return one_minus_inverse_power(std::pow(w, -half_eta), power); };
    const double integral = integrate_tail(f, w0, std::max(w0, 1.0), net.eta, quad);
    return std::exp(-std::numbers::pi * net.lambda_s * unit * integral);
}

double laplace_evaluation_point(double distance, const NetworkParams& net) {
    return net.epsilon * std::pow(distance, net.eta) * net.n_t / net.p_s;
}

double interference_coefficient(int i, double epsilon, const NetworkParams& net,
                                const QuadratureSpec& quad) {
    if (i < 0) {
        throw DomainError("interference_coefficient: order must be >= 0");
    }
    if (!(epsilon > 0.0)) {
        throw DomainError("interference_coefficient: epsilon must be > 0");
    }
    check_eta(net.eta);
    const double power = net.antenna_product();
    const double half_eta = net.eta / 2.0;
    const double lower = std::pow(epsilon, -2.0 / net.eta);
    RealFunction f;
    if (i == 0) {
        f = [=](double v) { return one_minus_inverse_power(std::pow(v, -half_eta), power); };
    } else {
        f = [=](double v) {
            const double vh = std::pow(v, half_eta);
            return std::exp(-i * std::log1p(vh) - power * std::log1p(1.0 / vh));
        };
    }
    // k_i shrinks geometrically in i and is later multiplied by binomials of
    // comparable size, so only a relative error bound is meaningful here.
    QuadratureSpec relative = quad;
    relative.absolute_tolerance = std::numeric_limits<double>::min();
    const double integral = integrate_tail(f, lower, std::max(lower, 1.0), net.eta, relative);
    return std::pow(epsilon, 2.0 / net.eta) * integral;
}

RecurrenceState recurrence_state(double distance, int k, const NetworkParams& net,
                                 const CoverageOptions& options) {
    check_coverage_inputs(k, net);
    if (!(distance > 0.0)) {
        throw DomainError("distance D must be > 0");
    }
    CoverageSeries series(k, net, options);
    RecurrenceState state;
    state.a = std::numbers::pi * net.lambda_s * distance * distance;
    series.solve(state.a, state.x);
    state.kcoef.assign(series.table().begin(), series.table().begin() + series.terms());
    return state;
}

double coverage_given_distance(double distance, int k, const NetworkParams& net,
                               const CoverageOptions& options) {
    check_coverage_inputs(k, net);
    if (!(distance > 0.0)) {
        throw DomainError("distance D must be > 0");
    }
    CoverageSeries series(k, net, options);
    std::vector<double> scratch;
    return series.coverage(std::numbers::pi * net.lambda_s * distance * distance, scratch, k,
                           net.antenna_product());
}

double coverage_probability(int k, const NetworkParams& net, const DistanceLaw& law,
                            const CoverageOptions& options) {
    check_coverage_inputs(k, net);
    law.validate();
    if (law.kind == DistanceLaw::Kind::fixed_distance) {
        return coverage_given_distance(law.distance, k, net, options);
    }
    CoverageSeries series(k, net, options);
    const double scale = radius_for_intensity(net.lambda_s);
    std::vector<double> scratch;
    auto integrand = [&](double u) {
        const double d = scale * u;
        if (!(d > 0.0)) {
            return 0.0;
        }
        const double density = nth_distance_pdf(d, law.order, net.lambda_s) * scale;
        if (density == 0.0) {
            return 0.0;
        }
        const double a = std::numbers::pi * net.lambda_s * d * d;
        return density * series.coverage(a, scratch, k, net.antenna_product());
    };
    const double value = integrate(integrand, 0.0, kInfinity, options.quad);
    if (!(value >= -1e-9 && value <= 1.0 + 1e-9)) {
        throw NumericalInstabilityError("coverage probability left [0, 1]");
    }
    return std::clamp(value, 0.0, 1.0);
}

void clear_coefficient_cache() {
    auto& c = cache();
    std::unique_lock lock(c.mutex);
    c.tables.clear();
}

} // namespace coopnet
