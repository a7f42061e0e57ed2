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

#include "core/numerics.hpp"

#include "core/errors.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <sstream>
#include <vector>

namespace coopnet {

namespace {

// Kronrod 15-point nodes (positive half) and weights; the odd-indexed nodes
// are the Gauss 7-point nodes.
constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
    double a;
    double b;
    double value;
    double error;
    bool operator<(const Segment& other) const { return error < other.error; }
};

Segment kronrod15(const RealFunction& g, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = g(center);
    double kronrod = fc * kKronrodWeights[7];
    double gauss = fc * kGaussWeights[3];
    for (std::size_t j = 0; j < 7; ++j) {
        const double dx = half * kKronrodNodes[j];
        const double f1 = g(center - dx);
        const double f2 = g(center + dx);
        kronrod += kKronrodWeights[j] * (f1 + f2);
        if (j % 2 == 1) {
            gauss += kGaussWeights[j / 2] * (f1 + f2);
        }
    }
    kronrod *= half;
    gauss *= half;
    return {a, b, kronrod, std::abs(kronrod - gauss)};
}

} // namespace

void QuadratureSpec::validate() const {
    if (!(relative_tolerance > 0.0) || !(absolute_tolerance > 0.0)) {
        throw DomainError("quadrature tolerances must be strictly positive");
    }
    if (max_subdivisions < 1) {
        throw DomainError("quadrature max_subdivisions must be >= 1");
    }
}

QuadratureResult integrate_detailed(const RealFunction& f, double lower, double upper,
                                    const QuadratureSpec& spec, bool& converged) {
    spec.validate();
    if (!std::isfinite(lower)) {
        throw DomainError("integrate: lower bound must be finite");
    }
    if (!(lower < upper)) {
        throw DomainError("integrate: requires lower < upper");
    }

    RealFunction mapped;
    double a = lower;
    double b = upper;
    if (std::isinf(upper)) {
        mapped = [&f, lower](double t) {
            const double one_minus = 1.0 - t;
            const double u = lower + t / one_minus;
            return f(u) / (one_minus * one_minus);
        };
        a = 0.0;
        b = 1.0;
    }
    const RealFunction& g = mapped ? mapped : f;

    std::priority_queue<Segment> heap;
    Segment first = kronrod15(g, a, b);
    double total = first.value;
    double total_error = first.error;
    heap.push(first);
    int subdivisions = 1;

    auto tolerance = [&spec](double value) {
        return std::max(spec.absolute_tolerance, spec.relative_tolerance * std::abs(value));
    };

    while (total_error > tolerance(total) && subdivisions < spec.max_subdivisions) {
        Segment worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) {
            // Interval can no longer be split in double precision.
            heap.push(worst);
            break;
        }
        Segment left = kronrod15(g, worst.a, mid);
        Segment right = kronrod15(g, mid, worst.b);
        total += left.value + right.value - worst.value;
        total_error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++subdivisions;
    }

    // Re-sum from the leaves to remove drift from the running updates.
    double value = 0.0;
    double error = 0.0;
    while (!heap.empty()) {
        value += heap.top().value;
        error += heap.top().error;
        heap.pop();
    }
    converged = error <= tolerance(value) && std::isfinite(value);
    return {value, error, subdivisions};
}

double integrate(const RealFunction& f, double lower, double upper, const QuadratureSpec& spec) {
    bool converged = false;
    const QuadratureResult result = integrate_detailed(f, lower, upper, spec, converged);
    if (!converged) {
        std::ostringstream msg;
        msg << "quadrature did not converge after " << result.subdivisions
            << " subdivisions (estimate " << result.value << ", error bound " << result.error
            << ")";
        throw ConvergenceError(msg.str(), result.value, result.error);
    }
    return result.value;
}

double regularized_gamma_upper(double a, double x) {
    if (!(a > 0.0)) {
        throw DomainError("regularized_gamma_upper: a must be > 0");
    }
    if (!(x >= 0.0)) {
        throw DomainError("regularized_gamma_upper: x must be >= 0");
    }
    if (x == 0.0) {
        return 1.0;
    }
    if (std::isinf(x)) {
        return 0.0;
    }
    return boost::math::gamma_q(a, x);
}

double regularized_gamma_lower(double a, double x) {
    if (!(a > 0.0)) {
        throw DomainError("regularized_gamma_lower: a must be > 0");
    }
    if (!(x >= 0.0)) {
        throw DomainError("regularized_gamma_lower: x must be >= 0");
    }
    if (x == 0.0) {
        return 0.0;
    }
    if (std::isinf(x)) {
        return 1.0;
    }
    return boost::math::gamma_p(a, x);
}

double log_gamma(double x) {
    return boost::math::lgamma(x);
}

double log_binomial(double n, double k) {
    if (k < 0.0 || k > n) {
        throw DomainError("log_binomial: requires 0 <= k <= n");
    }
    return log_gamma(n + 1.0) - log_gamma(k + 1.0) - log_gamma(n - k + 1.0);
}

double one_minus_inverse_power(double x, double power) {
    return -std::expm1(-power * std::log1p(x));
}

} // namespace coopnet
