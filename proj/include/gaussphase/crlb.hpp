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

#include <string>

namespace gaussphase {

enum class Scheme { optimal, heterodyne, homodyne, canonical };
enum class StateFamily { coherent_thermal, squeezed_thermal };

const char* to_string(Scheme scheme);
const char* to_string(StateFamily family);

/// Fisher information per copy and the resulting Cramer-Rao variance 1/(N I) for N copies.
struct VarianceReport {
    Scheme scheme = Scheme::optimal;
    StateFamily state_family = StateFamily::squeezed_thermal;
    double fisher_per_copy = 0.0;
    double variance = 0.0;
    long long n_copies = 1;
    std::string regime_note;
    bool outside_regime = false;  // advisory only: the closed form is an asymptotic limit used outside it
};

// Optimal (quantum) bounds.
VarianceReport optimal_var_coherent(double n_alpha, double n_beta, long long n_copies);
VarianceReport optimal_var_squeezed(double n_r, double n_beta, long long n_copies);
VarianceReport optimal_var_squeezed_lossy(double n0, double T, long long n_copies);

// Heterodyne.
double heterodyne_fisher_squeezed(double n_r, double n_beta);
VarianceReport heterodyne_var_squeezed(double n_r, double n_beta, long long n_copies);
VarianceReport heterodyne_var_lossy(double n0, double T, long long n_copies);
VarianceReport heterodyne_var_coherent(double n_alpha, double n_beta, long long n_copies);

// Homodyne; delta = theta - phi. Squeezed-state homodyne Fisher does not depend on n_beta.
double homodyne_fisher(double r, double delta);
double homodyne_optimal_angle(double r);
VarianceReport homodyne_var_squeezed(double n_r, long long n_copies);
VarianceReport homodyne_var_lossy(double n0, double T, long long n_copies);
double homodyne_fisher_coherent(double n_alpha, double n_beta, double delta);
/// Homodyne at the quadrature orthogonal to the displacement (delta = pi/2).
VarianceReport homodyne_var_coherent(double n_alpha, double n_beta, long long n_copies);

// Canonical phase measurement, asymptotic regimes.
VarianceReport canonical_var_coherent(double n_alpha, double n_beta, long long n_copies);
VarianceReport canonical_var_squeezed_large(double n0, double T, long long n_copies);
VarianceReport canonical_var_squeezed_low(double n0, double T, long long n_copies);

/// Large-squeezing canonical phase density
/// lambda0 sqrt(1 - lambda0^2)/pi sqrt(T/R) / (exp(2 (T/R) phi_bar^2) - lambda0),
/// normalized over one pi-period.
double canonical_prob_large_squeezing(double phi_bar, double lambda0, double T);

}  // namespace gaussphase
