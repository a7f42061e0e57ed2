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

#ifndef COOPNET_NUMERICS_HPP
#define COOPNET_NUMERICS_HPP

#include <functional>
#include <limits>

namespace coopnet {

struct QuadratureSpec {
    double relative_tolerance = 1e-9;
    double absolute_tolerance = 1e-12;
    int max_subdivisions = 2000;

    // Throws DomainError if a tolerance is not strictly positive or
    // max_subdivisions < 1.
    void validate() const;
};

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

using RealFunction = std::function<double(double)>;

/// Adaptive Gauss-Kronrod (7/15) integration of f over [lower, upper].
///
/// An infinite upper bound is mapped to [0, 1) through u = lower + t/(1-t).
/// The interval with the largest error estimate is bisected until the summed
/// error is below max(absolute_tolerance, relative_tolerance * |I|).
/// Throws ConvergenceError (carrying the best estimate) when the subdivision
/// budget runs out, DomainError when lower >= upper or a bound is not usable.
double integrate(const RealFunction& f, double lower, double upper,
                 const QuadratureSpec& spec = {});

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;
    int subdivisions = 0;
};

// Same as integrate() but reports the error estimate and never throws on
// non-convergence; `converged` tells the caller.
QuadratureResult integrate_detailed(const RealFunction& f, double lower, double upper,
                                    const QuadratureSpec& spec, bool& converged);

/// Regularized upper incomplete gamma Q(a, x) = Gamma(a, x) / Gamma(a).
double regularized_gamma_upper(double a, double x);

/// Regularized lower incomplete gamma P(a, x) = 1 - Q(a, x).
double regularized_gamma_lower(double a, double x);

double log_gamma(double x);

// log of the binomial coefficient C(n, k), n >= k >= 0.
double log_binomial(double n, double k);

// 1 - (1 + x)^(-power) without cancellation for small x.
double one_minus_inverse_power(double x, double power);

} // namespace coopnet

#endif
