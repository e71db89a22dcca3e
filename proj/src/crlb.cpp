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

#include "gaussphase/crlb.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "gaussphase/error.hpp"

namespace gaussphase {

namespace {

constexpr double kLowSqueezing = 0.1;
constexpr double kHighSqueezing = 10.0;
constexpr double kLargeAmplitude = 10.0;

VarianceReport report(Scheme scheme, StateFamily family, double fisher, long long n_copies, std::string note = {},
                      bool outside = false) {
    if (n_copies < 1) throw DomainError("variance report: n_copies must be >= 1");
    VarianceReport out;
    out.scheme = scheme;
    out.state_family = family;
    out.fisher_per_copy = fisher;
    out.n_copies = n_copies;
    out.variance = fisher > 0.0 ? 1.0 / (static_cast<double>(n_copies) * fisher)
                                : std::numeric_limits<double>::infinity();
    out.regime_note = std::move(note);
    out.outside_regime = outside;
    return out;
}

void require_nonneg(double v, const char* what) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw DomainError(std::string(what) + " must be >= 0");
}

void require_positive(double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v)) throw DomainError(std::string(what) + " must be > 0");
}

void require_lossy(double n0, double T) {
    require_positive(n0, "n0");
    if (!(T > 0.0 && T <= 1.0)) throw DomainError("T must be in (0, 1]");
}

}  // namespace

const char* to_string(Scheme scheme) {
    switch (scheme) {
        case Scheme::optimal: return "optimal";
        case Scheme::heterodyne: return "heterodyne";
        case Scheme::homodyne: return "homodyne";
        case Scheme::canonical: return "canonical";
    }
    return "unknown";
}

const char* to_string(StateFamily family) {
    switch (family) {
        case StateFamily::coherent_thermal: return "coherent";
        case StateFamily::squeezed_thermal: return "squeezed";
    }
    return "unknown";
}

VarianceReport optimal_var_coherent(double n_alpha, double n_beta, long long n_copies) {
    if (!(n_alpha > 0.0)) throw DomainError("optimal_var_coherent: zero amplitude carries no phase information");
    require_nonneg(n_beta, "n_beta");
    return report(Scheme::optimal, StateFamily::coherent_thermal, 4.0 * n_alpha / (2.0 * n_beta + 1.0), n_copies);
}

VarianceReport optimal_var_squeezed(double n_r, double n_beta, long long n_copies) {
    if (!(n_r > 0.0)) throw DomainError("optimal_var_squeezed: zero squeezing carries no phase information");
    require_nonneg(n_beta, "n_beta");
    const double gamma = 2.0 * n_beta + 1.0;
    const double fisher = 16.0 * n_r * (n_r + 1.0) / (1.0 + 1.0 / (gamma * gamma));
    return report(Scheme::optimal, StateFamily::squeezed_thermal, fisher, n_copies);
}

VarianceReport optimal_var_squeezed_lossy(double n0, double T, long long n_copies) {
    require_lossy(n0, T);
    const double fisher = 8.0 * T * T * n0 * (n0 + 1.0) / (1.0 + 2.0 * T * (1.0 - T) * n0);
    return report(Scheme::optimal, StateFamily::squeezed_thermal, fisher, n_copies);
}

double heterodyne_fisher_squeezed(double n_r, double n_beta) {
    require_nonneg(n_r, "n_r");
    require_nonneg(n_beta, "n_beta");
    const double gamma = 2.0 * n_beta + 1.0;
    const double b1 = 1.0 + n_beta;
    return 4.0 * n_r * (n_r + 1.0) * gamma * gamma / (n_r * gamma + b1 * b1);
}

VarianceReport heterodyne_var_squeezed(double n_r, double n_beta, long long n_copies) {
    return report(Scheme::heterodyne, StateFamily::squeezed_thermal, heterodyne_fisher_squeezed(n_r, n_beta), n_copies);
}

VarianceReport heterodyne_var_lossy(double n0, double T, long long n_copies) {
    require_lossy(n0, T);
    const double R = 1.0 - T;
    const double fisher = 4.0 * T * T * n0 * (n0 + 1.0) / ((1.0 - R * R) * n0 + 1.0);
    return report(Scheme::heterodyne, StateFamily::squeezed_thermal, fisher, n_copies);
}

VarianceReport heterodyne_var_coherent(double n_alpha, double n_beta, long long n_copies) {
    if (!(n_alpha > 0.0)) throw DomainError("heterodyne_var_coherent: zero amplitude carries no phase information");
    require_nonneg(n_beta, "n_beta");
    return report(Scheme::heterodyne, StateFamily::coherent_thermal, 2.0 * n_alpha / (n_beta + 1.0), n_copies);
}

double homodyne_fisher(double r, double delta) {
    const double ep = std::exp(2.0 * r);
    const double em = std::exp(-2.0 * r);
    const double c = std::cos(delta);
    const double s = std::sin(delta);
    const double q = std::sin(2.0 * delta) * (ep - em) / (ep * c * c + em * s * s);
    return 0.5 * q * q;
}

double homodyne_optimal_angle(double r) {
    if (!(r > 0.0)) throw DomainError("homodyne_optimal_angle: zero squeezing has no optimal angle");
    return std::atan(std::exp(2.0 * r));
}

VarianceReport homodyne_var_squeezed(double n_r, long long n_copies) {
    if (!(n_r > 0.0)) throw DomainError("homodyne_var_squeezed: zero squeezing carries no phase information");
    return report(Scheme::homodyne, StateFamily::squeezed_thermal, 8.0 * n_r * (n_r + 1.0), n_copies,
                  "independent of n_beta");
}

VarianceReport homodyne_var_lossy(double n0, double T, long long n_copies) {
    require_lossy(n0, T);
    const double fisher = 8.0 * T * T * n0 * (n0 + 1.0) / (1.0 + 4.0 * n0 * T * (1.0 - T));
    return report(Scheme::homodyne, StateFamily::squeezed_thermal, fisher, n_copies);
}

double homodyne_fisher_coherent(double n_alpha, double n_beta, double delta) {
    require_nonneg(n_alpha, "n_alpha");
    require_nonneg(n_beta, "n_beta");
    const double s = std::sin(delta);
    return 4.0 * n_alpha * s * s / (2.0 * n_beta + 1.0);
}

VarianceReport homodyne_var_coherent(double n_alpha, double n_beta, long long n_copies) {
    if (!(n_alpha > 0.0)) throw DomainError("homodyne_var_coherent: zero amplitude carries no phase information");
    return report(Scheme::homodyne, StateFamily::coherent_thermal,
                  homodyne_fisher_coherent(n_alpha, n_beta, 0.5 * std::numbers::pi), n_copies);
}

VarianceReport canonical_var_coherent(double n_alpha, double n_beta, long long n_copies) {
    if (!(n_alpha > 0.0)) throw DomainError("canonical_var_coherent: zero amplitude carries no phase information");
    require_nonneg(n_beta, "n_beta");
    const bool outside = n_alpha < kLargeAmplitude;
    return report(Scheme::canonical, StateFamily::coherent_thermal, 4.0 * n_alpha / (2.0 * n_beta + 1.0), n_copies,
                  outside ? "large-amplitude asymptotic; n_alpha < 10" : "large-amplitude asymptotic", outside);
}

VarianceReport canonical_var_squeezed_large(double n0, double T, long long n_copies) {
    require_lossy(n0, T);
    if (!(T < 1.0)) throw DomainError("canonical_var_squeezed_large: requires T < 1");
    const bool outside = n0 < kHighSqueezing;
    const double fisher = 2.0 * T * n0 / (1.0 - T);
    return report(Scheme::canonical, StateFamily::squeezed_thermal, fisher, n_copies,
                  outside ? "large-squeezing asymptotic; n0 < 10"
                          : "large-squeezing asymptotic",
                  outside);
}

VarianceReport canonical_var_squeezed_low(double n0, double T, long long n_copies) {
    require_lossy(n0, T);
    const bool outside = n0 > kLowSqueezing;
    return report(Scheme::canonical, StateFamily::squeezed_thermal, 4.0 * T * T * n0, n_copies,
                  outside ? "low-squeezing asymptotic; n0 > 0.1" : "low-squeezing asymptotic", outside);
}

double canonical_prob_large_squeezing(double phi_bar, double lambda0, double T) {
    if (!(lambda0 > 0.0 && lambda0 < 1.0)) throw DomainError("canonical_prob_large_squeezing: lambda0 in (0, 1)");
    if (!(T > 0.0 && T < 1.0)) throw DomainError("canonical_prob_large_squeezing: T in (0, 1)");
    const double ratio = T / (1.0 - T);
    const double sech = std::sqrt((1.0 - lambda0) * (1.0 + lambda0));
    const double denom = std::exp(2.0 * ratio * phi_bar * phi_bar) - lambda0;
    return lambda0 * sech / std::numbers::pi * std::sqrt(ratio) / denom;
}

}  // namespace gaussphase
