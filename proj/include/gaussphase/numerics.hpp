// Copyright 2026 The gaussphase Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <functional>

namespace gaussphase {

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;  // absolute
    std::size_t evaluations = 0;
};

/// Modified Bessel function of the first kind, order zero.
/// Throws OverflowError when |t| is beyond the double range (|t| > ~713).
double bessel_i0(double t);

/// Exponentially scaled I0: e^{-|t|} I0(t). Finite for every finite t.
double bessel_i0e(double t);

/// 1 - e^{-|t|} I0(t), accurate for small |t| where the difference cancels.
double one_minus_bessel_i0e(double t);

/// Principal branch W0 of the Lambert W function, W e^W = x, for x >= -1/e.
double lambert_w0(double x);

/// Adaptive Gauss-Kronrod (7/15) quadrature on (a, b).
///
/// The integrand is never evaluated at the endpoints, so integrable endpoint
/// singularities are tolerated; they converge slowly, and call sites with a
/// known singular structure substitute variables first. Stops when the total
/// error estimate is below max(abs_tol, rel_tol * |value|). Throws
/// ConvergenceError when max_subdivisions is exhausted.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           double abs_tol, double rel_tol, std::size_t max_subdivisions = 4000);

struct MinimizeResult {
    double x = 0.0;
    double value = 0.0;
    std::size_t evaluations = 0;
};

/// Golden-section search for a minimum of f inside the bracket [lo, hi].
/// Terminates when the bracket width falls below max(rel_tol * |x|, abs_tol).
MinimizeResult golden_section_minimize(const std::function<double(double)>& f, double lo, double hi,
                                       double rel_tol, double abs_tol = 0.0);

/// Scan f on a log-spaced grid of `points` values in [lo, hi] (lo > 0), then refine the
/// best interior grid point with golden-section search. Throws ConvergenceError if the
/// grid minimum sits on an endpoint (no interior minimum).
MinimizeResult log_scan_minimize(const std::function<double(double)>& f, double lo, double hi,
                                 std::size_t points, double rel_tol);

}  // namespace gaussphase
