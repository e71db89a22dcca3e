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

#include "gaussphase/fock.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>

#include "gaussphase/error.hpp"

namespace gaussphase {

namespace {

using cd = std::complex<double>;

double deficit_of(const Eigen::MatrixXcd& m) { return 1.0 - m.diagonal().real().sum(); }

void check_deficit(const FockMatrix& rho, const FockOptions& options, const char* op) {
    if (rho.trace_deficit() > options.max_trace_deficit) {
        std::ostringstream msg;
        msg << op << ": trace deficit " << rho.trace_deficit() << " exceeds " << options.max_trace_deficit
            << " at n_max=" << rho.n_max();
        throw TruncationError(msg.str());
    }
}

// ln C(n, k) + k ln R + (n - k) ln T, the log of the binomial loss probability.
double log_binomial_weight(int n, int k, double log_r, double log_t) {
    double out = std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
    if (k > 0) out += k * log_r;
    if (n - k > 0) out += (n - k) * log_t;
    return out;
}

}  // namespace

FockMatrix::FockMatrix(Eigen::MatrixXcd entries) : entries_(std::move(entries)) {
    if (entries_.rows() == 0 || entries_.rows() != entries_.cols()) {
        throw DomainError("FockMatrix: entries must be a non-empty square matrix");
    }
    trace_deficit_ = deficit_of(entries_);
}

bool FockMatrix::is_hermitian(double tol) const {
    return (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

double FockMatrix::min_eigenvalue() const {
    const Eigen::MatrixXcd h = 0.5 * (entries_ + entries_.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

FockMatrix thermal_fock(double n_beta, int n_max) {
    if (!(n_beta >= 0.0) || !std::isfinite(n_beta)) throw DomainError("thermal_fock: n_beta must be >= 0");
    if (n_max < 0) throw DomainError("thermal_fock: n_max must be >= 0");
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n_max + 1, n_max + 1);
    const double q = n_beta / (1.0 + n_beta);
    double p = 1.0 / (1.0 + n_beta);
    for (int n = 0; n <= n_max; ++n) {
        m(n, n) = p;
        p *= q;
    }
    return FockMatrix(std::move(m));
}

int min_cutoff_for_displacement(cd alpha) {
    const double na = std::norm(alpha);
    return static_cast<int>(std::ceil(na + 10.0 * std::sqrt(na + 1.0) + 20.0));
}

namespace {

// Real magnitudes d_n = |<k+n|D(alpha)|n>| up to the phase e^{i k arg alpha}, n = 0..len-1, from the
// Laguerre three-term recurrence along the k-th subdiagonal:
//   d_{n+1} sqrt((n+1)(n+k+1)) = (2n+1+k-x) d_n - sqrt(n(n+k)) d_{n-1},  x = |alpha|^2,
// started from the coherent amplitude d_0 = e^{-x/2} |alpha|^k / sqrt(k!). Running along the
// subdiagonal is stable; recursions across rows or columns are not.
void subdiagonal(double mod, int k, int len, double* out) {
    if (len <= 0) return;
    if (mod == 0.0) {
        for (int n = 0; n < len; ++n) out[n] = k == 0 ? 1.0 : 0.0;
        return;
    }
    const double x = mod * mod;
    // d is carried as scale * exp(log_scale) so that a vanishing d_0 cannot underflow the sequence.
    double log_scale = -0.5 * x + k * std::log(mod) - 0.5 * std::lgamma(k + 1.0);
    double prev = 0.0;
    double cur = 1.0;
    out[0] = std::exp(log_scale);
    for (int n = 0; n + 1 < len; ++n) {
        const double next = n == 0 ? (1.0 + k - x) / std::sqrt(k + 1.0)
                                   : ((2.0 * n + 1.0 + k - x) * cur - std::sqrt(static_cast<double>(n) * (n + k)) * prev) /
                                         std::sqrt((n + 1.0) * (n + k + 1.0));
        prev = cur;
        cur = next;
        if (std::fabs(cur) > 1e200) {
            prev *= 1e-200;
            cur *= 1e-200;
            log_scale += 200.0 * std::log(10.0);
        }
        out[n + 1] = cur * std::exp(log_scale);
    }
}

}  // namespace

Eigen::MatrixXcd displacement_fock(cd alpha, int n_max, int n_cols) {
    if (n_max < min_cutoff_for_displacement(alpha)) {
        throw TruncationError("displacement_fock: n_max=" + std::to_string(n_max) + " below the required " +
                              std::to_string(min_cutoff_for_displacement(alpha)));
    }
    if (n_cols < 0) n_cols = n_max + 1;
    const int rows = n_max + 1;
    Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(rows, n_cols);
    const double mod = std::abs(alpha);
    const double arg = std::arg(alpha);
    std::vector<double> seq(std::max(rows, n_cols));
    // m = n + k on and below the diagonal.
    for (int k = 0; k < rows; ++k) {
        const int len = std::min(rows - k, n_cols);
        subdiagonal(mod, k, len, seq.data());
        const cd phase = std::polar(1.0, k * arg);
        for (int n = 0; n < len; ++n) d(n + k, n) = phase * seq[n];
    }
    // Above the diagonal, parity gives D(-alpha) = P D(alpha) P, hence <m|D|m+k> = (-1)^k conj(<m+k|D|m>).
    for (int k = 1; k < n_cols; ++k) {
        const int len = std::min(rows, n_cols - k);
        if (len <= 0) break;
        subdiagonal(mod, k, len, seq.data());
        const cd phase = (k % 2 == 0 ? 1.0 : -1.0) * std::polar(1.0, -k * arg);
        for (int m = 0; m < len; ++m) d(m, m + k) = phase * seq[m];
    }
    return d;
}

FockMatrix displaced_thermal_fock(cd alpha, double n_beta, int n_max, const FockOptions& options) {
    if (!(n_beta >= 0.0) || !std::isfinite(n_beta)) {
        throw DomainError("displaced_thermal_fock: n_beta must be >= 0");
    }
    // Thermal components beyond n_max still feed the retained rows through D(alpha);
    // keep them until their weight is below 1e-20 (bounded to 2 n_max + 50).
    int k_max = 0;
    if (n_beta > 0.0) {
        const double q = n_beta / (1.0 + n_beta);
        k_max = static_cast<int>(std::ceil(std::log(1e-20) / std::log(q)));
        k_max = std::clamp(k_max, n_max, 2 * n_max + 50);
    }
    const Eigen::MatrixXcd d = displacement_fock(alpha, n_max, k_max + 1);
    Eigen::VectorXd p(k_max + 1);
    const double q = n_beta / (1.0 + n_beta);
    double w = 1.0 / (1.0 + n_beta);
    for (int k = 0; k <= k_max; ++k) {
        p(k) = w;
        w *= q;
    }
    Eigen::MatrixXcd rho = d * p.asDiagonal() * d.adjoint();
    rho = 0.5 * (rho + rho.adjoint()).eval();
    FockMatrix out(std::move(rho));
    check_deficit(out, options, "displaced_thermal_fock");
    return out;
}

FockMatrix squeezed_vacuum_fock(double r, int n_max, const FockOptions& options) {
    if (!std::isfinite(r)) throw DomainError("squeezed_vacuum_fock: r must be finite");
    if (n_max < 0) throw DomainError("squeezed_vacuum_fock: n_max must be >= 0");
    const double lambda = std::tanh(std::fabs(r));
    const double sign = r >= 0.0 ? -1.0 : 1.0;
    Eigen::VectorXd psi = Eigen::VectorXd::Zero(n_max + 1);
    psi(0) = std::pow(1.0 - lambda * lambda, 0.25);
    if (lambda > 0.0) {
        const double base = 0.25 * std::log1p(-lambda * lambda);
        const double log_half_lambda = std::log(0.5 * lambda);
        for (int n = 1; 2 * n <= n_max; ++n) {
            const double log_mag = base + n * log_half_lambda + 0.5 * std::lgamma(2.0 * n + 1.0) - std::lgamma(n + 1.0);
            psi(2 * n) = (n % 2 == 0 ? 1.0 : sign) * std::exp(log_mag);
        }
    }
    FockMatrix out((psi * psi.transpose()).cast<cd>());
    check_deficit(out, options, "squeezed_vacuum_fock");
    return out;
}

FockMatrix lossy_squeezed_fock(const LossChannelSpec& spec, int n_max, const FockOptions& options) {
    spec.validate();
    if (n_max < 0) throw DomainError("lossy_squeezed_fock: n_max must be >= 0");
    const double lambda = spec.lambda0();
    const double T = spec.T;
    const double R = spec.R();
    Eigen::MatrixXd rho = Eigen::MatrixXd::Zero(n_max + 1, n_max + 1);
    if (lambda == 0.0 || T == 0.0) {
        rho(0, 0) = 1.0;
        return FockMatrix(rho.cast<cd>());
    }
    if (R == 0.0) return squeezed_vacuum_fock(spec.r0, n_max, options);

    // Input amplitudes A_n = (1 - l^2)^{1/4} (-l/2)^n sqrt((2n)!)/n! on |2n>, in log form.
    // |A_n| is decreasing in n; stop once |A_n|^2 < 1e-20.
    const double log_amp0 = std::log(std::cosh(spec.r0)) * -0.5;  // (1 - l^2)^{1/4}
    const double log_half_lambda = std::log(0.5 * lambda);
    std::vector<double> log_amp;
    for (int n = 0;; ++n) {
        const double v = log_amp0 + n * log_half_lambda + 0.5 * std::lgamma(2.0 * n + 1.0) - std::lgamma(n + 1.0);
        if (n > 0 && 2.0 * v < std::log(1e-20)) break;
        log_amp.push_back(v);
        if (n > 2000000) throw TruncationError("lossy_squeezed_fock: input squeezing too large");
    }
    const int n_in = static_cast<int>(log_amp.size());

    // For each input pair count n, the loss index window where the binomial weight
    // p^{2n}_T(k) exceeds e^{-90}. Outside it every term is below ~1e-20.
    const double log_r = std::log(R);
    const double log_t = std::log(T);
    constexpr double kWindowLog = -90.0;
    std::vector<int> win_lo(n_in), win_hi(n_in);
    std::vector<double> log_start(n_in);  // 0.5 * log p^{2n}(win_lo)
    for (int n = 0; n < n_in; ++n) {
        const int total = 2 * n;
        const int mode = std::clamp(static_cast<int>(std::floor((total + 1) * R)), 0, total);
        int lo = mode;
        while (lo > 0 && log_binomial_weight(total, lo - 1, log_r, log_t) > kWindowLog) --lo;
        int hi = mode;
        while (hi < total && log_binomial_weight(total, hi + 1, log_r, log_t) > kWindowLog) ++hi;
        win_lo[n] = lo;
        win_hi[n] = hi;
    }
    const double ratio = R / T;
    const double log_cut = std::log(1e-20);

    // rho_{2a-k, 2b-k} += A_a A_b sqrt(p^{2a}(k) p^{2b}(k)); the matrix is real symmetric,
    // so only b >= a is accumulated.
    for (int a = 0; a < n_in; ++a) {
        for (int b = a; b < n_in; ++b) {
            if (log_amp[a] + log_amp[b] < log_cut) break;
            const int k_lo = std::max({0, 2 * b - n_max, win_lo[a], win_lo[b]});
            const int k_hi = std::min({2 * a, win_hi[a], win_hi[b]});
            if (k_lo > k_hi) {
                if (win_lo[b] > win_hi[a]) break;  // windows only move right with b
                continue;
            }
            const double sign = ((a + b) % 2 == 0) ? 1.0 : -1.0;
            double term = std::exp(log_amp[a] + log_amp[b] +
                                   0.5 * (log_binomial_weight(2 * a, k_lo, log_r, log_t) +
                                          log_binomial_weight(2 * b, k_lo, log_r, log_t)));
            for (int k = k_lo;; ++k) {
                const int row = 2 * a - k;
                const int col = 2 * b - k;
                rho(row, col) += sign * term;
                if (k == k_hi) break;
                term *= std::sqrt(static_cast<double>(row) * col) / (k + 1.0) * ratio;
            }
        }
    }
    for (int i = 0; i <= n_max; ++i) {
        for (int j = i + 1; j <= n_max; ++j) rho(j, i) = rho(i, j);
    }
    FockMatrix out(rho.cast<cd>());
    check_deficit(out, options, "lossy_squeezed_fock");
    return out;
}

FockMatrix phase_shift_fock(const FockMatrix& rho, double phi) {
    Eigen::MatrixXcd m = rho.entries();
    for (int n = 0; n <= rho.n_max(); ++n) {
        for (int k = 0; k <= rho.n_max(); ++k) {
            if (n != k) m(n, k) *= std::polar(1.0, phi * (n - k));
        }
    }
    return FockMatrix(std::move(m));
}

OptimalFidelity optimal_fidelity(const FockMatrix& rho, int l) {
    if (l != 1 && l != 2) throw DomainError("optimal_fidelity: l must be 1 or 2");
    OptimalFidelity out;
    const int n_max = rho.n_max();
    for (int n = 0; n + l <= n_max; ++n) out.value += std::abs(rho(n, n + l));
    // |rho_{n,n+l}| <= (rho_{n,n} + rho_{n+l,n+l})/2 bounds every omitted term.
    double boundary = 0.0;
    for (int n = std::max(0, n_max - l + 1); n <= n_max; ++n) boundary += rho(n, n).real();
    out.tail_bound = std::max(0.0, rho.trace_deficit()) + 0.5 * boundary;
    return out;
}

FockMatrix adaptive_fock(const std::function<FockMatrix(int)>& build, int l, int start, int limit) {
    int n_max = std::max(start, l + 1);
    while (n_max <= limit) {
        try {
            FockMatrix rho = build(n_max);
            const double edge = std::abs(rho(n_max - l, n_max));
            if (rho.trace_deficit() < 1e-10 && edge < 1e-12) return rho;
        } catch (const TruncationError&) {
            // cutoff below the operation's own minimum; grow and retry
        }
        n_max = static_cast<int>(std::ceil(1.5 * n_max));
    }
    throw TruncationError("adaptive_fock: no converged cutoff up to " + std::to_string(limit));
}

FockMoments fock_moments(const FockMatrix& rho) {
    const int n_max = rho.n_max();
    cd a1 = 0.0;
    cd a2 = 0.0;
    double n_mean = 0.0;
    for (int n = 0; n <= n_max; ++n) {
        n_mean += n * rho(n, n).real();
        if (n >= 1) a1 += rho(n, n - 1) * std::sqrt(static_cast<double>(n));
        if (n >= 2) a2 += rho(n, n - 2) * std::sqrt(static_cast<double>(n) * (n - 1));
    }
    const double trace = 1.0 - rho.trace_deficit();
    FockMoments out;
    out.displacement = Eigen::Vector2d(std::sqrt(2.0) * a1.real(), std::sqrt(2.0) * a1.imag());
    const double xm = out.displacement(0);
    const double pm = out.displacement(1);
    out.covariance(0, 0) = 2.0 * (a2.real() + n_mean + 0.5 * trace - xm * xm);
    out.covariance(1, 1) = 2.0 * (-a2.real() + n_mean + 0.5 * trace - pm * pm);
    out.covariance(0, 1) = out.covariance(1, 0) = 2.0 * (a2.imag() - xm * pm);
    out.mean_photon_number = n_mean;
    return out;
}

double PhaseDistribution::integral() const {
    if (density.empty()) return 0.0;
    double s = 0.0;
    for (double v : density) s += v;
    return s * 2.0 * std::numbers::pi / static_cast<double>(density.size());
}

namespace {

// c_d = sum_n rho_{n,n+d}.
std::vector<cd> diagonal_sums(const FockMatrix& rho) {
    const int n_max = rho.n_max();
    std::vector<cd> c(n_max + 1, 0.0);
    for (int d = 0; d <= n_max; ++d) {
        for (int n = 0; n + d <= n_max; ++n) c[d] += rho(n, n + d);
    }
    return c;
}

// Evaluates sum_{d>=1} w_d c_d z^d by Horner's rule, where w_d is 1 or d.
cd fourier_tail(const std::vector<cd>& c, cd z, bool weight_by_d) {
    cd acc = 0.0;
    for (std::size_t d = c.size() - 1; d >= 1; --d) {
        acc = acc * z + (weight_by_d ? static_cast<double>(d) : 1.0) * c[d];
    }
    return acc * z;
}

}  // namespace

PhaseDistribution canonical_phase_distribution(const FockMatrix& rho, double phi, int grid_size) {
    if (grid_size < 2) throw DomainError("canonical_phase_distribution: grid_size must be >= 2");
    const std::vector<cd> c = diagonal_sums(rho);
    PhaseDistribution out;
    out.phi = phi;
    out.grid.resize(grid_size);
    out.density.resize(grid_size);
    const double inv2pi = 0.5 / std::numbers::pi;
    for (int j = 0; j < grid_size; ++j) {
        const double theta = 2.0 * std::numbers::pi * j / grid_size;
        const cd z = std::polar(1.0, -(phi - theta));
        const double value = c[0].real() + 2.0 * fourier_tail(c, z, false).real();
        out.grid[j] = theta;
        out.density[j] = inv2pi * value;
    }
    return out;
}

FisherEstimate fisher_information_numeric(const PhaseDistribution& at_phi, const PhaseDistribution& at_phi_plus_h,
                                          double h) {
    if (at_phi.grid.size() != at_phi_plus_h.grid.size() || at_phi.grid.empty()) {
        throw DomainError("fisher_information_numeric: distributions are on different grids");
    }
    for (std::size_t j = 0; j < at_phi.grid.size(); ++j) {
        if (std::fabs(at_phi.grid[j] - at_phi_plus_h.grid[j]) > 1e-12) {
            throw DomainError("fisher_information_numeric: distributions are on different grids");
        }
    }
    if (!(h != 0.0) || !std::isfinite(h)) throw DomainError("fisher_information_numeric: step must be nonzero");
    const std::size_t size = at_phi.grid.size();
    double full = 0.0;
    double even = 0.0;
    for (std::size_t j = 0; j < size; ++j) {
        const double mid = 0.5 * (at_phi.density[j] + at_phi_plus_h.density[j]);
        if (!(mid > 1e-300)) continue;
        const double slope = (at_phi_plus_h.density[j] - at_phi.density[j]) / h;
        const double v = slope * slope / mid;
        full += v;
        if (j % 2 == 0) even += v;
    }
    const double dtheta = 2.0 * std::numbers::pi / static_cast<double>(size);
    FisherEstimate out;
    out.value = full * dtheta;
    out.error_estimate = std::fabs(out.value - even * 2.0 * dtheta);
    return out;
}

FisherEstimate canonical_fisher(const FockMatrix& rho, double phi, double h, int grid_size) {
    if (!(h > 0.0)) throw DomainError("canonical_fisher: step must be positive");
    auto at_step = [&](double step) {
        const PhaseDistribution lo = canonical_phase_distribution(rho, phi - 0.5 * step, grid_size);
        const PhaseDistribution hi = canonical_phase_distribution(rho, phi + 0.5 * step, grid_size);
        return fisher_information_numeric(lo, hi, step).value;
    };
    const double coarse = at_step(h);
    const double fine = at_step(0.5 * h);
    return {(4.0 * fine - coarse) / 3.0, std::fabs(coarse - fine)};
}

double canonical_fisher_spectral(const FockMatrix& rho, int grid_size) {
    if (grid_size < 2) throw DomainError("canonical_fisher_spectral: grid_size must be >= 2");
    const std::vector<cd> c = diagonal_sums(rho);
    double sum = 0.0;
    for (int j = 0; j < grid_size; ++j) {
        const double theta = 2.0 * std::numbers::pi * j / grid_size;
        const cd z = std::polar(1.0, theta);
        const double p = c[0].real() + 2.0 * fourier_tail(c, z, false).real();
        // d/dphi of z^d with z = e^{-i(phi - theta)} brings down -i d.
        const double dp = 2.0 * (cd(0.0, -1.0) * fourier_tail(c, z, true)).real();
        if (p > 1e-300) sum += dp * dp / p;
    }
    // Densities carry a 1/(2 pi) factor: (dp/2pi)^2/(p/2pi) = dp^2/(2 pi p).
    return sum / (2.0 * std::numbers::pi) * (2.0 * std::numbers::pi / grid_size);
}

void write_fock_csv(std::ostream& out, const FockMatrix& rho) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", rho.trace_deficit());
    out << "# fock n_max=" << rho.n_max() << " trace_deficit=" << buf << "\n";
    for (int n = 0; n <= rho.n_max(); ++n) {
        for (int m = 0; m <= rho.n_max(); ++m) {
            if (m > 0) out << ',';
            std::snprintf(buf, sizeof buf, "%.17g,%.17g", rho(n, m).real(), rho(n, m).imag());
            out << buf;
        }
        out << "\n";
    }
}

FockMatrix read_fock_csv(std::istream& in) {
    std::string header;
    if (!std::getline(in, header)) throw DomainError("read_fock_csv: empty input");
    int n_max = -1;
    if (std::sscanf(header.c_str(), "# fock n_max=%d", &n_max) != 1 || n_max < 0) {
        throw DomainError("read_fock_csv: malformed header");
    }
    Eigen::MatrixXcd m(n_max + 1, n_max + 1);
    std::string line;
    for (int n = 0; n <= n_max; ++n) {
        if (!std::getline(in, line)) throw DomainError("read_fock_csv: missing rows");
        std::stringstream row(line);
        std::string re, im;
        for (int k = 0; k <= n_max; ++k) {
            if (!std::getline(row, re, ',') || !std::getline(row, im, ',')) {
                throw DomainError("read_fock_csv: short row " + std::to_string(n));
            }
            m(n, k) = cd(std::stod(re), std::stod(im));
        }
    }
    return FockMatrix(std::move(m));
}

}  // namespace gaussphase
