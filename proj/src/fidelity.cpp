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

#include "gaussphase/fidelity.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "gaussphase/error.hpp"
#include "gaussphase/numerics.hpp"

namespace gaussphase {

namespace {

constexpr double kAbsTol = 1e-12;
constexpr double kRelTol = 1e-12;

// Sums integrate() over consecutive pieces [cuts[i], cuts[i+1]].
QuadratureResult integrate_pieces(const std::function<double(double)>& f, std::initializer_list<double> cuts) {
    QuadratureResult total;
    const double* prev = nullptr;
    for (const double& c : cuts) {
        if (prev != nullptr && c > *prev) {
            const QuadratureResult part = integrate(f, *prev, c, kAbsTol, kRelTol);
            total.value += part.value;
            total.error_estimate += part.error_estimate;
            total.evaluations += part.evaluations;
        }
        prev = &c;
    }
    return total;
}

void require_squeezed_domain(const LossChannelSpec& spec, const char* op) {
    spec.validate();
    if (!(spec.T > 0.0)) throw DomainError(std::string(op) + ": transmittance must be > 0");
}

// g(v) = 1 - sqrt(w) I0(ln(w)/2) at w = 1 - v^2.
double subtracted_kernel(double v) {
    const double log_w = std::log1p(-v * v);
    if (!std::isfinite(log_w)) return 1.0;
    return one_minus_bessel_i0e(0.5 * log_w);
}

}  // namespace

const char* to_string(FidelityMethod method) {
    switch (method) {
        case FidelityMethod::quadrature: return "quadrature";
        case FidelityMethod::series: return "series";
        case FidelityMethod::asymptotic_large: return "asymptotic-large";
        case FidelityMethod::asymptotic_small: return "asymptotic-small";
    }
    return "unknown";
}

FidelityValue coherent_thermal_fidelity(double alpha_abs, double n_beta) {
    if (!(alpha_abs >= 0.0) || !std::isfinite(alpha_abs)) {
        throw DomainError("coherent_thermal_fidelity: alpha_abs must be >= 0");
    }
    if (!(n_beta >= 0.0) || !std::isfinite(n_beta)) {
        throw DomainError("coherent_thermal_fidelity: n_beta must be >= 0");
    }
    FidelityValue out;
    if (alpha_abs == 0.0) return out;

    const double a2 = alpha_abs * alpha_abs;
    // With y = u^2 the 1/sqrt(y) behaviour at the origin becomes the finite limit 2.
    auto integrand = [&](double u) {
        const double y = u * u;
        if (y == 0.0) return 2.0;
        const double rest = 1.0 - (1.0 + n_beta) * y;
        if (!(rest > 0.0)) return 0.0;
        const double q = y / (1.0 - n_beta * y);
        const double log_term = q < 0.5 ? -std::log1p(-q) : std::log(1.0 - n_beta * y) - std::log(rest);
        return 2.0 * u * std::exp(-a2 * y) / std::sqrt(log_term);
    };
    const double u_max = 1.0 / std::sqrt(1.0 + n_beta);
    const double knee = std::min(u_max, 8.0 / alpha_abs);
    const QuadratureResult q = integrate_pieces(integrand, {0.0, knee, u_max});
    const double scale = alpha_abs / std::sqrt(std::numbers::pi);
    out.value = scale * q.value;
    out.error_estimate = scale * q.error_estimate;
    return out;
}

double coherent_fidelity_large_alpha(double n_alpha, double n_beta) {
    if (!(n_alpha > 0.0)) throw DomainError("coherent_fidelity_large_alpha: n_alpha must be > 0");
    if (!(n_beta >= 0.0)) throw DomainError("coherent_fidelity_large_alpha: n_beta must be >= 0");
    return 1.0 - (2.0 * n_beta + 1.0) / (8.0 * n_alpha);
}

SmallAlphaFidelity coherent_fidelity_small_alpha(double n_alpha, double n_beta) {
    if (!(n_alpha >= 0.0)) throw DomainError("coherent_fidelity_small_alpha: n_alpha must be >= 0");
    if (!(n_beta >= 0.0)) throw DomainError("coherent_fidelity_small_alpha: n_beta must be >= 0");
    SmallAlphaFidelity out;
    out.high_temperature = std::sqrt(0.5 * std::numbers::pi) * std::sqrt(n_alpha / (2.0 * n_beta + 1.0));
    out.low_temperature = std::sqrt(n_alpha) * (1.0 - (2.0 - std::numbers::sqrt2) * n_beta);
    out.value = n_beta >= 1.0 ? out.high_temperature : out.low_temperature;
    out.near_boundary = n_beta >= 1.0 / 3.0 && n_beta <= 3.0;
    return out;
}

FidelityValue squeezed_thermal_fidelity(const LossChannelSpec& spec) {
    require_squeezed_domain(spec, "squeezed_thermal_fidelity");
    FidelityValue out;
    if (spec.r0 == 0.0) return out;

    const double T = spec.T;
    const double R = spec.R();
    const double lambda = spec.lambda0();
    const double sech = 1.0 / std::cosh(spec.r0);  // sqrt(1 - lambda^2) without cancellation
    const double sech2 = sech * sech;
    const double l2 = lambda * lambda;
    // w = 1 - v^2 moves the w -> 1 peak of width ~ (1 - lambda^2)/T to a quadratic one at v = 0.
    // 1 - lambda^2 (R + T w)^2 = (1 - lambda^2) + lambda^2 T v^2 (2 - T v^2).
    auto denom = [&](double v) {
        const double tv2 = T * v * v;
        const double d = sech2 + l2 * tv2 * (2.0 - tv2);
        return d * std::sqrt(d);
    };
    const double split = std::min(0.5, 20.0 * sech / std::sqrt(2.0 * T));

    if (lambda <= 0.999) {
        auto integrand = [&](double v) {
            const double log_w = std::log1p(-v * v);
            if (!std::isfinite(log_w)) return 0.0;
            return 2.0 * v * bessel_i0e(0.5 * log_w) / denom(v);
        };
        const QuadratureResult q = integrate_pieces(integrand, {0.0, split, 1.0});
        const double scale = lambda * sech * T;
        out.value = scale * q.value;
        out.error_estimate = scale * q.error_estimate;
        return out;
    }

    // Near lambda = 1 split sqrt(w) I0 = 1 - g: the constant part integrates in closed form and
    // the remainder is regular. lambda is kept exact in the remainder.
    const double closed = lambda - sech * lambda * R / std::sqrt(1.0 - l2 * R * R);
    auto remainder = [&](double v) { return 2.0 * v * subtracted_kernel(v) / denom(v); };
    const QuadratureResult q = integrate_pieces(remainder, {0.0, split, 1.0});
    const double scale = lambda * sech * T;
    out.value = closed - scale * q.value;
    out.error_estimate = scale * q.error_estimate;
    return out;
}

FidelityValue squeezed_thermal_fidelity_series(const LossChannelSpec& spec, int term_budget) {
    require_squeezed_domain(spec, "squeezed_thermal_fidelity_series");
    if (term_budget < 1) throw DomainError("squeezed_thermal_fidelity_series: term_budget must be >= 1");
    FidelityValue out;
    out.method = FidelityMethod::series;
    if (spec.r0 == 0.0) return out;

    const double T = spec.T;
    const double R = spec.R();
    const double lambda = spec.lambda0();
    const double log_half_lambda = std::log(0.5 * lambda);
    const double log_r = R > 0.0 ? std::log(R) : 0.0;
    const double log_t = std::log(T);
    const double sech = 1.0 / std::cosh(spec.r0);

    double sum = 0.0;
    double block = 0.0;
    int n = 0;
    for (; n < term_budget; ++n) {
        const double base = (2.0 * n + 1.0) * log_half_lambda + std::lgamma(2.0 * n + 1.0) +
                            std::lgamma(2.0 * n + 3.0) - std::lgamma(n + 1.0) - std::lgamma(n + 2.0);
        block = 0.0;
        const int k_max = R > 0.0 ? 2 * n : 0;
        for (int k = 0; k <= k_max; ++k) {
            const double log_term = base + (k > 0 ? k * log_r : 0.0) + (2.0 * n + 1.0 - k) * log_t -
                                    std::lgamma(k + 1.0) - std::lgamma(2.0 * n - k + 1.0) -
                                    0.5 * std::log((2.0 * n + 2.0 - k) * (2.0 * n + 1.0 - k));
            block += std::exp(log_term);
        }
        block *= sech;
        sum += block;
        if (n >= 2 && block < 1e-17 * sum) break;
    }
    out.value = sum;
    // Blocks decay at least like lambda^{2n}; bound the rest geometrically.
    out.error_estimate = block * lambda * lambda / (1.0 - lambda * lambda);
    out.converged = n < term_budget && out.error_estimate < 1e-10;
    return out;
}

double xi_of_T(double T) {
    if (!(T > 0.0 && T <= 1.0)) throw DomainError("xi_of_T: T must be in (0, 1]");
    const double R = 1.0 - T;
    const double sqrt_t = std::sqrt(T);
    // w = 1 - v^2: 1 - (R + T w)^2 = T v^2 (2 - T v^2) and g ~ v^2/2, so the integrand is finite at v = 0.
    auto integrand = [&](double v) {
        if (v == 0.0) return 1.0 / (sqrt_t * 2.0 * std::numbers::sqrt2);
        const double tv2 = T * v * v;
        const double d = 2.0 - tv2;
        return 2.0 * subtracted_kernel(v) / (sqrt_t * v * v * d * std::sqrt(d));
    };
    const QuadratureResult q = integrate(integrand, 0.0, 1.0, 1e-10, 1e-10);
    return R / std::sqrt(T * (1.0 + R)) + q.value;
}

double xi_interpolated(double T) {
    if (!(T > 0.0 && T <= 1.0)) throw DomainError("xi_interpolated: T must be in (0, 1]");
    constexpr double c1 = 0.54;
    constexpr double c2 = 0.17;
    const double R = 1.0 - T;
    return R / std::sqrt(T * (1.0 + R)) + c1 / std::sqrt(2.0 * T) + c2 * T;
}

double squeezed_fidelity_large(double n0, double T) {
    if (!(n0 > 0.0)) throw DomainError("squeezed_fidelity_large: n0 must be > 0");
    return 1.0 - xi_of_T(T) / std::sqrt(n0);
}

}  // namespace gaussphase
