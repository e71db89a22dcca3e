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
#include <functional>
#include <iosfwd>
#include <vector>

#include <Eigen/Dense>

#include "gaussphase/gaussian.hpp"

namespace gaussphase {

/// Truncated density matrix in the number basis |0>, ..., |n_max>.
///
/// The probability mass lost to truncation is carried as trace_deficit and never
/// renormalized away.
class FockMatrix {
   public:
    explicit FockMatrix(Eigen::MatrixXcd entries);

    int n_max() const { return static_cast<int>(entries_.rows()) - 1; }
    const Eigen::MatrixXcd& entries() const { return entries_; }
    std::complex<double> operator()(int n, int m) const { return entries_(n, m); }

    /// 1 - sum_n rho_{n,n}.
    double trace_deficit() const { return trace_deficit_; }

    bool is_hermitian(double tol = 1e-12) const;
    double min_eigenvalue() const;

   private:
    Eigen::MatrixXcd entries_;
    double trace_deficit_;
};

struct FockOptions {
    /// Constructors throw TruncationError when the trace deficit exceeds this.
    double max_trace_deficit = 1e-10;
};

FockMatrix thermal_fock(double n_beta, int n_max);

/// Smallest cutoff accepted by displacement_fock for amplitude alpha.
int min_cutoff_for_displacement(std::complex<double> alpha);

/// Matrix elements <m|D(alpha)|n> for 0 <= m <= n_max, 0 <= n <= n_cols - 1.
/// n_cols defaults to n_max + 1 (square block). Throws TruncationError when
/// n_max < min_cutoff_for_displacement(alpha).
Eigen::MatrixXcd displacement_fock(std::complex<double> alpha, int n_max, int n_cols = -1);

FockMatrix displaced_thermal_fock(std::complex<double> alpha, double n_beta, int n_max,
                                  const FockOptions& options = {});

FockMatrix squeezed_vacuum_fock(double r, int n_max, const FockOptions& options = {});

/// Squeezed vacuum through a loss channel, mode b traced out, at phi = 0.
FockMatrix lossy_squeezed_fock(const LossChannelSpec& spec, int n_max, const FockOptions& options = {});

/// rho_{n,m} -> e^{i phi (n - m)} rho_{n,m}.
FockMatrix phase_shift_fock(const FockMatrix& rho, double phi);

struct OptimalFidelity {
    double value = 0.0;       // partial sum of |rho_{n,n+l}| over the retained block
    double tail_bound = 0.0;  // upper bound on the omitted terms
};

/// Maximum single-copy average fidelity sum_n |rho_{n,n+l}| for l in {1, 2}.
OptimalFidelity optimal_fidelity(const FockMatrix& rho, int l);

/// Grows the cutoff geometrically from `start` until the trace deficit is below
/// 1e-10 and the boundary entries |rho_{n,n+l}| are below 1e-12. `build` is called
/// with candidate cutoffs and must not apply its own deficit check.
FockMatrix adaptive_fock(const std::function<FockMatrix(int)>& build, int l, int start = 16,
                         int limit = 20000);

/// Moments of a single-mode Fock matrix in the phase-space conventions of GaussianState.
struct FockMoments {
    Eigen::Vector2d displacement;
    Eigen::Matrix2d covariance;
    double mean_photon_number;
};
FockMoments fock_moments(const FockMatrix& rho);

struct PhaseDistribution {
    std::vector<double> grid;     // theta_j = 2 pi j / size
    std::vector<double> density;  // p(theta | phi)
    double phi = 0.0;

    /// Trapezoidal integral over one period.
    double integral() const;
};

/// Canonical phase measurement statistics
/// p(theta|phi) = (1/2pi) sum_{n,m} rho_{n,m} e^{i(phi - theta)(n - m)}.
PhaseDistribution canonical_phase_distribution(const FockMatrix& rho, double phi, int grid_size);

struct FisherEstimate {
    double value = 0.0;
    double error_estimate = 0.0;
};

/// Fisher information about phi from two distributions computed at phi and phi + h,
/// using the difference quotient and the midpoint density. The error estimate is the
/// change when the theta grid is halved.
FisherEstimate fisher_information_numeric(const PhaseDistribution& at_phi,
                                          const PhaseDistribution& at_phi_plus_h, double h);

/// Fisher information of the canonical phase measurement on rho with Richardson
/// extrapolation over steps h and h/2; error_estimate is |I(h) - I(h/2)|.
FisherEstimate canonical_fisher(const FockMatrix& rho, double phi, double h, int grid_size);

/// Same quantity with the phi-derivative taken exactly on the Fourier coefficients.
double canonical_fisher_spectral(const FockMatrix& rho, int grid_size);

/// Row-major CSV: header `# fock n_max=<k> trace_deficit=<v>`, then one line per row
/// holding re,im pairs.
void write_fock_csv(std::ostream& out, const FockMatrix& rho);
FockMatrix read_fock_csv(std::istream& in);

}  // namespace gaussphase
