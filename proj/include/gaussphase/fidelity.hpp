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

#include "gaussphase/gaussian.hpp"

namespace gaussphase {

enum class FidelityMethod { quadrature, series, asymptotic_large, asymptotic_small };

const char* to_string(FidelityMethod method);

/// Single-copy optimal average fidelity F_l, l = 1 for displaced and l = 2 for squeezed states.
struct FidelityValue {
    double value = 0.0;
    FidelityMethod method = FidelityMethod::quadrature;
    double error_estimate = 0.0;
    bool converged = true;  // false when a series budget ran out; error_estimate is then the tail bound
};

/// F_1 for a displaced thermal state with amplitude |alpha| and n_beta thermal photons,
/// from its one-dimensional integral representation. Absolute error below 1e-9.
FidelityValue coherent_thermal_fidelity(double alpha_abs, double n_beta);

/// Large-amplitude expansion 1 - (2 n_beta + 1)/(8 n_alpha).
double coherent_fidelity_large_alpha(double n_alpha, double n_beta);

struct SmallAlphaFidelity {
    double value = 0.0;             // branch selected by n_beta against 1
    double high_temperature = 0.0;  // sqrt(pi/2) sqrt(n_alpha/(2 n_beta + 1))
    double low_temperature = 0.0;   // sqrt(n_alpha) (1 - (2 - sqrt 2) n_beta)
    bool near_boundary = false;     // n_beta within a factor 3 of 1; both branches are meaningful
};

/// Small-amplitude limits of F_1 at high and low temperature.
SmallAlphaFidelity coherent_fidelity_small_alpha(double n_alpha, double n_beta);

/// F_2 for squeezed vacuum (r0) sent through a loss channel of transmittance T.
/// Absolute error below 1e-9.
FidelityValue squeezed_thermal_fidelity(const LossChannelSpec& spec);

/// F_2 from its double power series in lambda0, summed directly up to `term_budget`
/// orders in n. Independent of the integral representation.
FidelityValue squeezed_thermal_fidelity_series(const LossChannelSpec& spec, int term_budget = 20000);

/// Large-squeezing deficit coefficient: F_2 = 1 - xi(T)/sqrt(n0) + ... . Absolute error below 1e-6.
double xi_of_T(double T);

/// Closed-form fit R/sqrt(T(1+R)) + 0.54/sqrt(2T) + 0.17 T.
double xi_interpolated(double T);

/// 1 - xi(T)/sqrt(n0).
double squeezed_fidelity_large(double n0, double T);

}  // namespace gaussphase
