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

#include "gaussphase/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <sstream>
#include <string>
#include <vector>

#include "gaussphase/error.hpp"

namespace gaussphase {

namespace {

// Below this |t| the power series is used, above it the asymptotic expansion. At
// |t| = 30 the smallest asymptotic term is ~e^{-60}, so both branches agree to
// well below 1e-13 relative.
constexpr double kBesselSwitch = 30.0;

// Returns I0(t) for |t| < kBesselSwitch. All terms are positive.
double i0_series(double t) {
    const double q = 0.25 * t * t;
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 500; ++k) {
        term *= q / (static_cast<double>(k) * k);
        sum += term;
        if (term < 1e-17 * sum) break;
    }
    return sum;
}

// Returns I0(t) - 1, avoiding the cancellation for small |t|.
double i0_series_minus_one(double t) {
    const double q = 0.25 * t * t;
    double term = 1.0;
    double sum = 0.0;
    for (int k = 1; k < 500; ++k) {
        term *= q / (static_cast<double>(k) * k);
        sum += term;
        if (term < 1e-17 * sum) break;
    }
    return sum;
}

// sqrt(2 pi t) e^{-t} I0(t) for t >= kBesselSwitch.
double i0_asymptotic_scaled(double t) {
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 200; ++k) {
        const double next = term * (2.0 * k - 1.0) * (2.0 * k - 1.0) / (8.0 * k * t);
        if (next > term) break;
        term = next;
        sum += term;
        if (term < 1e-18 * sum) break;
    }
    return sum;
}

}  // namespace

double bessel_i0e(double t) {
    const double a = std::fabs(t);
    if (!std::isfinite(a)) throw DomainError("bessel_i0e: argument must be finite");
    if (a < kBesselSwitch) return std::exp(-a) * i0_series(a);
    return i0_asymptotic_scaled(a) / std::sqrt(2.0 * std::numbers::pi * a);
}

double bessel_i0(double t) {
    const double a = std::fabs(t);
    if (!std::isfinite(a)) throw DomainError("bessel_i0: argument must be finite");
    if (a < kBesselSwitch) return i0_series(a);
    const double scaled = i0_asymptotic_scaled(a) / std::sqrt(2.0 * std::numbers::pi * a);
    if (a + std::log(scaled) >= std::log(std::numeric_limits<double>::max())) {
        throw OverflowError("bessel_i0: I0(" + std::to_string(t) + ") overflows double");
    }
    // Split the exponential so neither factor overflows before the product does.
    const double half = std::exp(0.5 * a);
    return half * scaled * half;
}

double one_minus_bessel_i0e(double t) {
    const double a = std::fabs(t);
    if (a < 1.0) {
        // 1 - e^{-a}(1 + s) = (1 - e^{-a}) - e^{-a} s, both pieces positive.
        return -std::expm1(-a) - std::exp(-a) * i0_series_minus_one(a);
    }
    return 1.0 - bessel_i0e(a);
}

double lambert_w0(double x) {
    constexpr double inv_e = 1.0 / std::numbers::e;
    if (std::isnan(x)) throw DomainError("lambert_w0: NaN argument");
    if (x < -inv_e) {
        if (x > -inv_e - 1e-15) return -1.0;
        throw DomainError("lambert_w0: argument below -1/e");
    }
    if (x == 0.0) return 0.0;
    if (std::isinf(x)) return x;

    double w;
    if (x < -0.32) {
        // Branch-point expansion in p = sqrt(2(e x + 1)).
        const double p = std::sqrt(std::max(0.0, 2.0 * (std::numbers::e * x + 1.0)));
        w = -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p * p * p;
    } else if (x < 3.0) {
        w = std::log1p(x);
        w = w * (1.0 - std::log1p(w) / (2.0 + w));
    } else {
        const double l1 = std::log(x);
        const double l2 = std::log(l1);
        w = l1 - l2 + l2 / l1;
    }

    const double target = 1e-12 * std::max(1.0, std::fabs(x));
    for (int iter = 0; iter < 100; ++iter) {
        const double ew = std::exp(w);
        const double f = w * ew - x;
        if (std::fabs(f) <= 1e-3 * target) break;
        const double wp1 = w + 1.0;
        if (wp1 == 0.0) break;
        const double step = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1));
        w -= step;
        if (std::fabs(step) <= 4.0 * std::numeric_limits<double>::epsilon() * std::fabs(w)) break;
    }
    if (std::fabs(w * std::exp(w) - x) > target) {
        throw ConvergenceError("lambert_w0: Halley iteration did not reach the residual target");
    }
    return w;
}

namespace {

// Gauss-Kronrod 7/15 nodes and weights on [-1, 1].
constexpr double kXgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                            0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                            0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                            0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                            0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                            0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                            0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                           0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
    double a;
    double b;
    double value;
    double error;
    bool operator<(const Segment& other) const { return error < other.error; }
};

Segment gk15(const std::function<double(double)>& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(center);
    double kronrod = fc * kWgk[7];
    double gauss = fc * kWg[3];
    double abs_sum = std::fabs(fc) * kWgk[7];
    double fv[15];
    fv[7] = fc;
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        const double f1 = f(center - dx);
        const double f2 = f(center + dx);
        fv[j] = f1;
        fv[14 - j] = f2;
        kronrod += kWgk[j] * (f1 + f2);
        abs_sum += kWgk[j] * (std::fabs(f1) + std::fabs(f2));
        if (j % 2 == 1) gauss += kWg[j / 2] * (f1 + f2);
    }
    // Mean absolute deviation, used by the QUADPACK error heuristic.
    const double mean = kronrod * 0.5;
    double asc = kWgk[7] * std::fabs(fc - mean);
    for (int j = 0; j < 7; ++j) {
        asc += kWgk[j] * (std::fabs(fv[j] - mean) + std::fabs(fv[14 - j] - mean));
    }
    const double result = kronrod * half;
    double err = std::fabs((kronrod - gauss) * half);
    asc *= std::fabs(half);
    if (asc != 0.0 && err != 0.0) err = asc * std::min(1.0, std::pow(200.0 * err / asc, 1.5));
    const double round_floor = 50.0 * std::numeric_limits<double>::epsilon() * abs_sum * std::fabs(half);
    err = std::max(err, round_floor);
    if (!std::isfinite(result)) {
        throw ConvergenceError("integrate: integrand is not finite on the interval");
    }
    return {a, b, result, err};
}

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b, double abs_tol,
                           double rel_tol, std::size_t max_subdivisions) {
    if (!(a < b)) throw DomainError("integrate: require a < b");
    if (!(abs_tol >= 0.0) || !(rel_tol >= 0.0)) throw DomainError("integrate: negative tolerance");

    std::priority_queue<Segment> heap;
    Segment first = gk15(f, a, b);
    heap.push(first);
    double total = first.value;
    double total_err = first.error;
    std::size_t evaluations = 15;
    std::size_t subdivisions = 0;

    while (total_err > std::max(abs_tol, rel_tol * std::fabs(total))) {
        if (subdivisions >= max_subdivisions) {
            std::ostringstream msg;
            msg << "integrate: subdivision budget exhausted (error estimate " << total_err << ")";
            throw ConvergenceError(msg.str());
        }
        Segment worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) {
            throw ConvergenceError("integrate: interval collapsed to machine precision");
        }
        Segment left = gk15(f, worst.a, mid);
        Segment right = gk15(f, mid, worst.b);
        evaluations += 30;
        ++subdivisions;
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        // Re-sum periodically to stop drift in the running totals.
        if (subdivisions % 64 == 0) {
            auto copy = heap;
            total = 0.0;
            total_err = 0.0;
            while (!copy.empty()) {
                total += copy.top().value;
                total_err += copy.top().error;
                copy.pop();
            }
        }
    }
    return {total, total_err, evaluations};
}

MinimizeResult golden_section_minimize(const std::function<double(double)>& f, double lo, double hi,
                                       double rel_tol, double abs_tol) {
    if (!(lo < hi)) throw DomainError("golden_section_minimize: require lo < hi");
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo;
    double b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c);
    double fd = f(d);
    std::size_t evaluations = 2;
    for (int iter = 0; iter < 500; ++iter) {
        if (b - a <= std::max(rel_tol * std::max(std::fabs(c), std::fabs(d)), abs_tol) ||
            b - a <= 4.0 * std::numeric_limits<double>::epsilon() * std::fabs(a + b)) {
            break;
        }
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
        ++evaluations;
    }
    return fc < fd ? MinimizeResult{c, fc, evaluations} : MinimizeResult{d, fd, evaluations};
}

MinimizeResult log_scan_minimize(const std::function<double(double)>& f, double lo, double hi,
                                 std::size_t points, double rel_tol) {
    if (!(lo > 0.0) || !(lo < hi)) throw DomainError("log_scan_minimize: require 0 < lo < hi");
    if (points < 3) throw DomainError("log_scan_minimize: need at least 3 grid points");
    std::vector<double> xs(points);
    std::vector<double> fs(points);
    const double step = std::log(hi / lo) / static_cast<double>(points - 1);
    std::size_t best = 0;
    for (std::size_t i = 0; i < points; ++i) {
        xs[i] = lo * std::exp(step * static_cast<double>(i));
        fs[i] = f(xs[i]);
        if (fs[i] < fs[best]) best = i;
    }
    if (best == 0 || best == points - 1) {
        throw ConvergenceError("log_scan_minimize: no interior minimum on the scan grid");
    }
    MinimizeResult refined = golden_section_minimize(f, xs[best - 1], xs[best + 1], rel_tol);
    refined.evaluations += points;
    return refined;
}

}  // namespace gaussphase
