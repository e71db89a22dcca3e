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

#include <utility>
#include <vector>

#include "gaussphase/crlb.hpp"

namespace gaussphase {

enum class FrequencyInput { coherent, squeezed };

const char* to_string(FrequencyInput input);

/// Optimal interrogation time for phi = omega t with loss T = e^{-eta t}.
struct FrequencyOptimum {
    Scheme scheme = Scheme::optimal;
    FrequencyInput input = FrequencyInput::squeezed;
    double input_parameter = 0.0;  // |alpha| or r0
    double eta = 1.0;
    long long n_copies = 1;
    double t_star = 0.0;
    double var_omega = 0.0;
    double eta_t_star = 0.0;
    double rescaled_var = 0.0;                         // N Var[omega] / eta^2, independent of N and eta
    double numeric_t_star = 0.0;                       // from the optimizer (equals t_star for squeezed input)
    std::vector<std::pair<double, double>> curve;      // (t, Var[omega](t)) on the scan grid
};

/// Var[phi] for one copy at transmittance T.
double single_copy_phase_variance(FrequencyInput input, Scheme scheme, double input_parameter, double T);

/// Var[omega](t) = Var[phi](e^{-eta t}) / (N t^2).
double frequency_variance(FrequencyInput input, Scheme scheme, double input_parameter, double eta,
                          long long n_copies, double t);

/// Closed form t* = 2/eta, Var[omega] = e^2 eta^2 / (16 N |alpha|^2), cross-checked numerically.
FrequencyOptimum coherent_freq_optimum(double alpha_abs, double eta, long long n_copies);

/// Minimizes Var[omega](t) over t in (0, 50/eta]: 200-point log scan, then golden-section to 1e-10.
FrequencyOptimum squeezed_freq_optimum(double r0, double eta, long long n_copies, Scheme scheme);

struct FrequencyComparisonRow {
    double n0 = 0.0;
    double coherent = 0.0;  // rescaled N eta^2 Var[omega]
    double squeezed_optimal = 0.0;
    double squeezed_homodyne = 0.0;
    double squeezed_heterodyne = 0.0;
    double eta_t_coherent = 0.0;
    double eta_t_optimal = 0.0;
    double eta_t_homodyne = 0.0;
    double eta_t_heterodyne = 0.0;
};

/// Rescaled optimal variances with inputs matched by mean photon number n0 (|alpha|^2 = sinh^2 r0 = n0).
std::vector<FrequencyComparisonRow> frequency_comparison_curve(double eta, long long n_copies,
                                                               const std::vector<double>& n0_grid);

/// Log-log slope of the optimized Var[omega] between n0_lo and n0_hi (n0_hi/n0_lo >= 100).
double scaling_exponent(FrequencyInput input, Scheme scheme, double n0_lo, double n0_hi, double eta);

/// Control without loss or time: slope of the lossless optimal Var[phi] between n0_lo and n0_hi.
double lossless_scaling_exponent(double n0_lo, double n0_hi);

}  // namespace gaussphase
