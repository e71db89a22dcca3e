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
#include <vector>

#include <Eigen/Dense>

namespace gaussphase {

/// First and second moments of an M-mode Gaussian state.
///
/// Quadratures are ordered (x1, p1, x2, p2, ...) with x = (a + a^dag)/sqrt(2) and
/// p = i(a^dag - a)/sqrt(2). The covariance is the expectation of the
/// anticommutator {R_k - d_k, R_l - d_l}, so the vacuum has covariance identity.
/// Construction validates symmetry and the uncertainty relation
/// covariance + iJ >= 0; it throws DomainError otherwise.
class GaussianState {
   public:
    GaussianState(Eigen::VectorXd displacement, Eigen::MatrixXd covariance);

    static GaussianState vacuum(int modes = 1);

    int modes() const { return static_cast<int>(displacement_.size() / 2); }
    const Eigen::VectorXd& displacement() const { return displacement_; }
    const Eigen::MatrixXd& covariance() const { return covariance_; }

    /// Symplectic eigenvalues in ascending order; every value is >= 1 for a physical state.
    std::vector<double> symplectic_eigenvalues() const;

    /// Smallest eigenvalue of the Hermitian matrix covariance + iJ.
    double uncertainty_margin() const;

   private:
    Eigen::VectorXd displacement_;
    Eigen::MatrixXd covariance_;
};

/// Standard symplectic form for `modes` modes: block diagonal [[0, 1], [-1, 0]].
Eigen::MatrixXd symplectic_form(int modes);

/// Parameters of a displaced squeezed thermal state rotated by phi.
struct StateParams {
    double n_beta = 0.0;            // thermal mean photon number
    double r = 0.0;                 // squeezing parameter
    std::complex<double> alpha{};   // displacement amplitude
    double phi = 0.0;               // encoded phase
};

/// A squeezed vacuum with squeezing r0 sent through a pure-loss channel of transmittance T.
struct LossChannelSpec {
    double r0 = 0.0;
    double T = 1.0;

    double R() const { return 1.0 - T; }
    double lambda0() const;   // tanh r0
    double n0() const;        // sinh^2 r0, input mean photon number
    void validate() const;    // throws DomainError unless r0 >= 0 and 0 <= T <= 1
};

/// Loss channel spec from the input mean photon number n0 = sinh^2 r0.
LossChannelSpec loss_channel_from_n0(double n0, double T);

GaussianState thermal_state(double n_beta);
GaussianState squeeze(const GaussianState& state, double r);
GaussianState displace(const GaussianState& state, std::complex<double> alpha);
GaussianState rotate(const GaussianState& state, double phi);

/// Two-mode beam splitter B_theta with transmittance cos^2(theta). Acts as
/// covariance -> V^T covariance V and displacement -> V^T displacement.
GaussianState beamsplitter(const GaussianState& state, double theta);

/// Mixing angle theta in [0, pi/2] with cos^2(theta) = T.
double beamsplitter_angle(double T);

/// Direct sum of two states (a on the first modes, b on the following ones).
GaussianState tensor(const GaussianState& a, const GaussianState& b);

/// Marginal state of a single mode.
GaussianState reduce_to_mode(const GaussianState& state, int mode);

/// Single mode through a pure-loss channel: mixes with vacuum on a beam splitter of
/// transmittance T and traces out the environment.
GaussianState attenuate(const GaussianState& state, double T);

/// Output thermal photon number and squeezing of a lossy squeezed vacuum; alpha = 0, phi = 0.
StateParams lossy_channel_output(const LossChannelSpec& spec);

/// The state described by params: U(phi) D(alpha) S(r) rho_beta S(r)^dag D(alpha)^dag U(phi)^dag.
GaussianState make_state(const StateParams& params);

double mean_photon_number(const StateParams& params);

/// Mean photon number of a single-mode state from its moments.
double mean_photon_number(const GaussianState& state);

/// Squeezing of the pure state carrying the same mean photon number as the lossy output, T sinh^2 r0.
double energy_matched_squeeze(const LossChannelSpec& spec);

/// Hilbert-Schmidt overlap tr(rho_A rho_B) of two single-mode Gaussian states.
double overlap(const GaussianState& a, const GaussianState& b);

}  // namespace gaussphase
