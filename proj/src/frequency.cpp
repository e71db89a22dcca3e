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

#include "gaussphase/frequency.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "gaussphase/error.hpp"
#include "gaussphase/numerics.hpp"

namespace gaussphase {

namespace {

constexpr double kMaxEtaT = 50.0;
constexpr double kMinEtaT = 1e-4;
constexpr std::size_t kScanPoints = 200;
constexpr double kTimeTol = 1e-10;

void require_rate(double eta, long long n_copies) {
    if (!(eta > 0.0) || !std::isfinite(eta)) throw DomainError("frequency: eta must be > 0");
    if (n_copies < 1) throw DomainError("frequency: n_copies must be >= 1");
}

// Var[phi](e^{-x}) / x^2; Var[omega] = eta^2 / N times this.
double scaled_objective(FrequencyInput input, Scheme scheme, double param, double x) {
    return single_copy_phase_variance(input, scheme, param, std::exp(-x)) / (x * x);
}

FrequencyOptimum optimize(FrequencyInput input, Scheme scheme, double param, double eta, long long n_copies) {
    auto f = [&](double x) { return scaled_objective(input, scheme, param, x); };
    const MinimizeResult m = log_scan_minimize(f, kMinEtaT, kMaxEtaT, kScanPoints, kTimeTol);
    FrequencyOptimum out;
    out.scheme = scheme;
    out.input = input;
    out.input_parameter = param;
    out.eta = eta;
    out.n_copies = n_copies;
    out.eta_t_star = m.x;
    out.t_star = m.x / eta;
    out.numeric_t_star = out.t_star;
    out.var_omega = eta * eta * m.value / static_cast<double>(n_copies);
    const double step = std::log(kMaxEtaT / kMinEtaT) / static_cast<double>(kScanPoints - 1);
    out.curve.reserve(kScanPoints);
    for (std::size_t i = 0; i < kScanPoints; ++i) {
        const double x = kMinEtaT * std::exp(step * static_cast<double>(i));
        out.curve.emplace_back(x / eta, eta * eta * f(x) / static_cast<double>(n_copies));
    }
    return out;
}

}  // namespace

const char* to_string(FrequencyInput input) { return input == FrequencyInput::coherent ? "coherent" : "squeezed"; }

double single_copy_phase_variance(FrequencyInput input, Scheme scheme, double param, double T) {
    if (!(T > 0.0 && T <= 1.0)) throw DomainError("single_copy_phase_variance: T must be in (0, 1]");
    if (input == FrequencyInput::coherent) {
        if (!(param > 0.0)) throw DomainError("single_copy_phase_variance: |alpha| must be > 0");
        // Loss attenuates a coherent state to |sqrt(T) alpha> without adding thermal noise.
        const double n_alpha = T * param * param;
        switch (scheme) {
            case Scheme::optimal:
            case Scheme::homodyne: return optimal_var_coherent(n_alpha, 0.0, 1).variance;
            case Scheme::heterodyne: return heterodyne_var_coherent(n_alpha, 0.0, 1).variance;
            case Scheme::canonical: break;
        }
        throw DomainError("single_copy_phase_variance: canonical scheme is not time-optimized");
    }
    if (!(param > 0.0)) throw DomainError("single_copy_phase_variance: r0 must be > 0");
    const double s = std::sinh(param);
    const double n0 = s * s;
    switch (scheme) {
        case Scheme::optimal: return optimal_var_squeezed_lossy(n0, T, 1).variance;
        case Scheme::homodyne: return homodyne_var_lossy(n0, T, 1).variance;
        case Scheme::heterodyne: return heterodyne_var_lossy(n0, T, 1).variance;
        case Scheme::canonical: break;
    }
    throw DomainError("single_copy_phase_variance: canonical scheme is not time-optimized");
}

double frequency_variance(FrequencyInput input, Scheme scheme, double param, double eta, long long n_copies,
                          double t) {
    require_rate(eta, n_copies);
    if (!(t > 0.0)) throw DomainError("frequency_variance: t must be > 0");
    return single_copy_phase_variance(input, scheme, param, std::exp(-eta * t)) /
           (static_cast<double>(n_copies) * t * t);
}

FrequencyOptimum coherent_freq_optimum(double alpha_abs, double eta, long long n_copies) {
    require_rate(eta, n_copies);
    if (!(alpha_abs > 0.0) || !std::isfinite(alpha_abs)) throw DomainError("coherent_freq_optimum: |alpha| must be > 0");
    FrequencyOptimum out = optimize(FrequencyInput::coherent, Scheme::optimal, alpha_abs, eta, n_copies);
    out.numeric_t_star = out.t_star;
    out.t_star = 2.0 / eta;
    out.eta_t_star = 2.0;
    out.var_omega = std::numbers::e * std::numbers::e * eta * eta /
                    (16.0 * static_cast<double>(n_copies) * alpha_abs * alpha_abs);
    out.rescaled_var = static_cast<double>(n_copies) * out.var_omega / (eta * eta);
    if (std::fabs(out.numeric_t_star - out.t_star) > 1e-6 * out.t_star) {
        throw ConvergenceError("coherent_freq_optimum: numeric optimum disagrees with t* = 2/eta");
    }
    return out;
}

FrequencyOptimum squeezed_freq_optimum(double r0, double eta, long long n_copies, Scheme scheme) {
    require_rate(eta, n_copies);
    if (!(r0 > 0.0) || !std::isfinite(r0)) throw DomainError("squeezed_freq_optimum: r0 must be > 0");
    if (scheme == Scheme::canonical) throw DomainError("squeezed_freq_optimum: canonical scheme not supported");
    FrequencyOptimum out = optimize(FrequencyInput::squeezed, scheme, r0, eta, n_copies);
    out.rescaled_var = static_cast<double>(n_copies) * out.var_omega / (eta * eta);
    return out;
}

std::vector<FrequencyComparisonRow> frequency_comparison_curve(double eta, long long n_copies,
                                                               const std::vector<double>& n0_grid) {
    require_rate(eta, n_copies);
    std::vector<FrequencyComparisonRow> rows;
    rows.reserve(n0_grid.size());
    for (double n0 : n0_grid) {
        if (!(n0 > 0.0) || !std::isfinite(n0)) throw DomainError("frequency_comparison_curve: n0 must be > 0");
        const double r0 = std::asinh(std::sqrt(n0));
        const FrequencyOptimum coh = coherent_freq_optimum(std::sqrt(n0), eta, n_copies);
        const FrequencyOptimum opt = squeezed_freq_optimum(r0, eta, n_copies, Scheme::optimal);
        const FrequencyOptimum hom = squeezed_freq_optimum(r0, eta, n_copies, Scheme::homodyne);
        const FrequencyOptimum het = squeezed_freq_optimum(r0, eta, n_copies, Scheme::heterodyne);
        FrequencyComparisonRow row;
        row.n0 = n0;
        row.coherent = coh.rescaled_var;
        row.squeezed_optimal = opt.rescaled_var;
        row.squeezed_homodyne = hom.rescaled_var;
        row.squeezed_heterodyne = het.rescaled_var;
        row.eta_t_coherent = coh.eta_t_star;
        row.eta_t_optimal = opt.eta_t_star;
        row.eta_t_homodyne = hom.eta_t_star;
        row.eta_t_heterodyne = het.eta_t_star;
        rows.push_back(row);
    }
    return rows;
}

double scaling_exponent(FrequencyInput input, Scheme scheme, double n0_lo, double n0_hi, double eta) {
    if (!(n0_lo > 0.0) || !(n0_hi >= 100.0 * n0_lo)) {
        throw DomainError("scaling_exponent: require n0_lo > 0 and n0_hi/n0_lo >= 100");
    }
    auto var_at = [&](double n0) {
        if (input == FrequencyInput::coherent) return coherent_freq_optimum(std::sqrt(n0), eta, 1).var_omega;
        return squeezed_freq_optimum(std::asinh(std::sqrt(n0)), eta, 1, scheme).var_omega;
    };
    return std::log(var_at(n0_hi) / var_at(n0_lo)) / std::log(n0_hi / n0_lo);
}

double lossless_scaling_exponent(double n0_lo, double n0_hi) {
    if (!(n0_lo > 0.0) || !(n0_hi >= 100.0 * n0_lo)) {
        throw DomainError("lossless_scaling_exponent: require n0_lo > 0 and n0_hi/n0_lo >= 100");
    }
    const double lo = optimal_var_squeezed_lossy(n0_lo, 1.0, 1).variance;
    const double hi = optimal_var_squeezed_lossy(n0_hi, 1.0, 1).variance;
    return std::log(hi / lo) / std::log(n0_hi / n0_lo);
}

}  // namespace gaussphase
