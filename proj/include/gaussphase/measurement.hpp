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

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "gaussphase/crlb.hpp"
#include "gaussphase/gaussian.hpp"

namespace gaussphase {

enum class MeasurementScheme { heterodyne, homodyne };

/// Outcomes of N single-copy measurements on the phase-shifted state.
struct MeasurementRecord {
    MeasurementScheme scheme = MeasurementScheme::heterodyne;
    std::vector<std::complex<double>> heterodyne;  // alpha' per copy
    std::vector<double> homodyne;                  // x per copy
    std::vector<double> angles;                    // homodyne angle theta per copy
    double true_phi = 0.0;
    std::uint64_t seed = 0;

    std::size_t size() const {
        return scheme == MeasurementScheme::heterodyne ? heterodyne.size() : homodyne.size();
    }
};

/// Exact standard normals: Marsaglia polar method on a 64-bit Mersenne Twister.
class NormalSampler {
   public:
    explicit NormalSampler(std::uint64_t seed) : engine_(seed) {}
    double operator()();

   private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

/// SplitMix64 finalizer; used to derive independent per-trial seeds.
std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t trial_seed(std::uint64_t master, std::uint64_t trial);

/// Heterodyne outcomes. Squeezed thermal (alpha = 0): zero-mean alpha' with covariance
/// (1/4) O_phi diag(V-, V+) O_phi^T, V+- = 1 + (2 n_beta + 1) e^{+-2r}. Coherent thermal (r = 0):
/// mean alpha e^{i phi}, per-axis variance (n_beta + 1)/2.
MeasurementRecord sample_heterodyne(const StateParams& params, std::size_t n_copies, std::uint64_t seed);

/// Homodyne variance sigma^2(delta) = (2 n_beta + 1)(e^{2r} cos^2 delta + e^{-2r} sin^2 delta), delta = theta - phi.
double homodyne_variance(double n_beta, double r, double delta);

/// Homodyne outcomes at angle theta on a squeezed thermal state (alpha = 0).
MeasurementRecord sample_homodyne(const StateParams& params, double theta, std::size_t n_copies,
                                  std::uint64_t seed);

/// Appends homodyne outcomes at angle theta to an existing record.
void append_homodyne(MeasurementRecord& record, const StateParams& params, double theta, std::size_t n_copies,
                     NormalSampler& normal);

struct MleResult {
    double phi = 0.0;
    double log_likelihood = 0.0;
    bool degenerate = false;  // the likelihood carries no phase information
};

struct MleWindow {
    double lo = 0.0;
    double hi = 0.0;
};

/// Default search window: [0, 2 pi) for coherent heterodyne, [0, pi) for squeezed states.
/// A homodyne record with a single angle theta is symmetric under phi -> 2 theta - phi, so
/// its default window is theta - phi in [0, pi/2].
MleWindow default_mle_window(const MeasurementRecord& record, const StateParams& known);

/// Maximum-likelihood phase: coarse grid of 360 points on the window, then golden-section
/// refinement to 1e-10. `known` supplies every state parameter except phi.
MleResult mle_phase(const MeasurementRecord& record, const StateParams& known);
MleResult mle_phase(const MeasurementRecord& record, const StateParams& known, MleWindow window);

struct AdaptiveResult {
    double phi_stage1 = 0.0;
    double phi = 0.0;
    MeasurementRecord record;
};

/// Two-step adaptive homodyne: ceil(fraction N) copies split between angles 0 and pi/4 give a
/// rough estimate phi1; the rest are measured at phi1 + arctan(e^{2r}). The returned estimate is
/// the likelihood maximum over all N outcomes within phi1 +- pi/2.
AdaptiveResult two_step_adaptive_homodyne(const StateParams& known, double true_phi, std::size_t n_copies,
                                          double fraction, std::uint64_t seed);

/// Wraps x into (-period/2, period/2].
double wrap_phase(double x, double period);

enum class ExperimentScheme { heterodyne, homodyne, adaptive_homodyne };
const char* to_string(ExperimentScheme scheme);

struct ExperimentConfig {
    ExperimentScheme scheme = ExperimentScheme::heterodyne;
    StateFamily family = StateFamily::coherent_thermal;
    double n_alpha = 0.0;
    double n_r = 0.0;
    double n_beta = 0.0;
    double r0 = -1.0;  // with T >= 0 selects the lossy-channel parametrization
    double T = -1.0;
    double phi = 0.3;
    double theta = std::numeric_limits<double>::quiet_NaN();  // homodyne angle; NaN selects phi + arctan(e^{2r})
    double fraction = 0.1;
    std::size_t n_copies = 10000;
    std::size_t trials = 200;
    std::uint64_t seed = 1;
    int threads = 1;

    /// Throws DomainError on invalid combinations.
    void validate() const;
    /// The state implied by family and parameters, at phi.
    StateParams state() const;
};

/// Flat `key = value` format, `#` comments. Unknown keys and malformed values throw DomainError.
ExperimentConfig parse_experiment_config(std::istream& in);

struct ExperimentSummary {
    std::size_t n_copies = 0;
    std::size_t n_trials = 0;
    double empirical_variance = 0.0;
    double predicted_crlb = 0.0;
    double ratio = 0.0;
    double confidence_halfwidth = 0.0;  // 95% chi-squared halfwidth, relative to the ratio
    std::vector<double> errors;         // wrapped phi_hat - phi per trial
};

/// Cramer-Rao variance expected for the configuration.
double predicted_crlb(const ExperimentConfig& config);

/// Runs config.trials independent records with per-trial seeds trial_seed(seed, i). Results are
/// bit-identical for a given configuration regardless of config.threads.
ExperimentSummary crlb_attainment_experiment(const ExperimentConfig& config);

/// `scheme,family,n_alpha,n_r,n_beta,phi,fraction,N,trials,seed,empirical_var,crlb,ratio,ci`.
std::string experiment_csv_header();
std::string experiment_csv_row(const ExperimentConfig& config, const ExperimentSummary& summary);

}  // namespace gaussphase
