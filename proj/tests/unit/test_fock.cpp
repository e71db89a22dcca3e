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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "gaussphase/crlb.hpp"
#include "gaussphase/error.hpp"
#include "gaussphase/fock.hpp"
#include "gaussphase/gaussian.hpp"

namespace gp = gaussphase;
using cd = std::complex<double>;

namespace {

double max_negative_entry(const gp::FockMatrix& rho) {
    double worst = 0.0;
    for (int n = 0; n <= rho.n_max(); ++n)
        for (int m = 0; m <= rho.n_max(); ++m) worst = std::min(worst, rho(n, m).real());
    return worst;
}

double max_imag(const gp::FockMatrix& rho) { return rho.entries().imag().cwiseAbs().maxCoeff(); }

}  // namespace

TEST(Fock, ThermalIsGeometric) {
    const auto rho = gp::thermal_fock(1.5, 60);
    const double q = 1.5 / 2.5;
    for (int n = 0; n <= 60; ++n) EXPECT_NEAR(rho(n, n).real(), std::pow(q, n) / 2.5, 1e-16);
    EXPECT_NEAR(rho.trace_deficit(), std::pow(q, 61), 1e-15);
    EXPECT_THROW(gp::thermal_fock(-1.0, 4), gp::DomainError);
}

TEST(Fock, DisplacementMatchesCoherentAmplitudes) {
    // <n|D(alpha)|0> = e^{-|alpha|^2/2} alpha^n / sqrt(n!).
    const cd alpha(2.0, 1.0);
    const auto d = gp::displacement_fock(alpha, 80);
    for (int n = 0; n <= 40; ++n) {
        const cd expected = std::exp(-0.5 * std::norm(alpha)) * std::pow(alpha, n) / std::sqrt(std::tgamma(n + 1.0));
        EXPECT_NEAR(std::abs(d(n, 0) - expected), 0.0, 1e-13) << n;
    }
    // Unitarity of the retained columns.
    const auto dd = gp::displacement_fock(cd(4.0, 0.0), 250, 100);
    const Eigen::MatrixXcd g = dd.adjoint() * dd;
    EXPECT_LE((g - Eigen::MatrixXcd::Identity(100, 100)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Fock, DisplacedThermalMatchesPFunctionQuadrature) {
    // Reference entries from two-dimensional quadrature of the Glauber P representation.
    const auto rho = gp::displaced_thermal_fock({1.0, 0.0}, 0.5, 60);
    struct Ref {
        int n, m;
        double value;
    };
    const Ref refs[] = {
        {0, 0, 0.342278079355061}, {1, 0, 0.228185386236708}, {2, 1, 0.179279371084053},
        {3, 3, 0.1021982559757},   {4, 1, 0.0368024864552976},
    };
    for (const auto& r : refs) {
        EXPECT_NEAR(rho(r.n, r.m).real(), r.value, 1e-12) << r.n << "," << r.m;
        EXPECT_NEAR(rho(r.n, r.m).imag(), 0.0, 1e-15);
    }
}

TEST(Fock, SqueezedVacuumClosedForm) {
    const double r = 0.8;
    const auto rho = gp::squeezed_vacuum_fock(r, 120);
    const double t = std::tanh(r);
    for (int n = 0; n <= 20; ++n) {
        const double amp = std::pow(-t, n) * std::sqrt(std::tgamma(2.0 * n + 1.0)) /
                           (std::pow(2.0, n) * std::tgamma(n + 1.0) * std::sqrt(std::cosh(r)));
        EXPECT_NEAR(rho(2 * n, 0).real(), amp / std::sqrt(std::cosh(r)), 1e-13);
        EXPECT_NEAR(rho(2 * n + 1, 2 * n + 1).real(), 0.0, 0.0);
    }
    const auto lossless = gp::lossy_squeezed_fock({r, 1.0}, 120);
    EXPECT_LE((lossless.entries() - rho.entries()).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Fock, LossySqueezedLimits) {
    const auto vac = gp::lossy_squeezed_fock({0.7, 0.0}, 10);
    EXPECT_NEAR(vac(0, 0).real(), 1.0, 0.0);
    EXPECT_NEAR(vac.trace_deficit(), 0.0, 1e-16);
    const auto small = gp::lossy_squeezed_fock({0.0, 0.5}, 10);
    EXPECT_NEAR(small(0, 0).real(), 1.0, 0.0);
}

TEST(Fock, TruncationIsReported) {
    EXPECT_THROW(gp::displaced_thermal_fock({3.0, 0.0}, 1.0, 12), gp::TruncationError);
    EXPECT_THROW(gp::lossy_squeezed_fock({1.5, 0.5}, 10), gp::TruncationError);
    EXPECT_NO_THROW(gp::lossy_squeezed_fock({1.5, 0.5}, 10, gp::FockOptions{1.0}));
    const auto loose = gp::lossy_squeezed_fock({1.5, 0.5}, 10, gp::FockOptions{1.0});
    EXPECT_GT(loose.trace_deficit(), 1e-3);
}

TEST(Fock, AdaptiveCutoffConverges) {
    const auto rho = gp::adaptive_fock(
        [](int n) { return gp::displaced_thermal_fock({2.0, 0.0}, 1.5, n, gp::FockOptions{1.0}); }, 1);
    EXPECT_LT(rho.trace_deficit(), 1e-10);
    EXPECT_THROW(gp::adaptive_fock([](int n) { return gp::thermal_fock(1e6, n); }, 1, 16, 200),
                 gp::TruncationError);
}

TEST(Fock, CsvRoundTrip) {
    const auto rho = gp::phase_shift_fock(gp::displaced_thermal_fock({0.7, 0.2}, 0.3, 40), 0.4);
    std::stringstream buf;
    gp::write_fock_csv(buf, rho);
    const auto back = gp::read_fock_csv(buf);
    EXPECT_EQ(back.n_max(), rho.n_max());
    EXPECT_EQ((back.entries() - rho.entries()).cwiseAbs().maxCoeff(), 0.0);
    EXPECT_EQ(back.trace_deficit(), rho.trace_deficit());
    std::stringstream bad("# fock n_max=2 trace_deficit=0\n1,0\n");
    EXPECT_THROW(gp::read_fock_csv(bad), gp::DomainError);
}

TEST(Fock, CanonicalDistributionNormalizedAndPeaked) {
    const auto rho = gp::displaced_thermal_fock({2.0, 0.0}, 0.5, 80);
    const auto d = gp::canonical_phase_distribution(rho, 0.9, 512);
    EXPECT_NEAR(d.integral(), 1.0 - rho.trace_deficit(), 1e-12);
    const auto peak = std::max_element(d.density.begin(), d.density.end()) - d.density.begin();
    EXPECT_NEAR(d.grid[peak], 0.9, 2.0 * std::numbers::pi / 512);
    for (double v : d.density) EXPECT_GE(v, -1e-12);
}

TEST(Fock, CanonicalFisherMatchesClosedFormsAndSpectral) {
    const auto low = gp::lossy_squeezed_fock(gp::loss_channel_from_n0(0.01, 0.8), 60);
    const auto f_low = gp::canonical_fisher(low, 0.0, 1e-3, 256);
    EXPECT_NEAR(f_low.value / gp::canonical_var_squeezed_low(0.01, 0.8, 1).fisher_per_copy, 1.0, 0.05);
    EXPECT_NEAR(f_low.value, gp::canonical_fisher_spectral(low, 256), 1e-6 * f_low.value);
    // Coherent state: canonical phase variance 1/(4n) + 1/(8n^2) + ..., so the Fisher information is 4n - 2 + O(1/n).
    for (double a : {5.0, 10.0}) {
        const auto coh = gp::displaced_thermal_fock({a, 0.0}, 0.0, gp::min_cutoff_for_displacement({a, 0.0}) + 40);
        EXPECT_NEAR(4.0 * a * a - gp::canonical_fisher_spectral(coh, 2048), 2.0, 1.5 / (a * a)) << a;
    }
}

TEST(Fock, CanonicalDistributionMatchesLargeSqueezingForm) {
    // The closed form is normalized over one pi-period; the Fock density over 2 pi.
    const gp::LossChannelSpec spec = gp::loss_channel_from_n0(50.0, 0.5);
    const auto rho = gp::phase_shift_fock(gp::lossy_squeezed_fock(spec, 1300), 0.5 * std::numbers::pi);
    const int grid = 4096;
    const auto d = gp::canonical_phase_distribution(rho, 0.0, grid);
    // The closed form drops corrections in (T/R) theta^2 that do not shrink with n0.
    const double width = 0.2 * std::sqrt(spec.R() / spec.T);
    for (int j = 0; j < grid; ++j) {
        double theta = d.grid[j];
        if (theta > std::numbers::pi) theta -= 2.0 * std::numbers::pi;
        if (std::abs(theta) > width) continue;
        const double closed = gp::canonical_prob_large_squeezing(theta, spec.lambda0(), spec.T);
        EXPECT_NEAR(2.0 * d.density[j] / closed, 1.0, 0.05) << "theta=" << theta;
    }
}

TEST(FockProperty, MonotoneTruncation) {
    for (auto build : std::vector<std::function<gp::FockMatrix(int)>>{
             [](int n) { return gp::displaced_thermal_fock({2.0, 0.0}, 1.5, n, gp::FockOptions{1.0}); },
             [](int n) { return gp::lossy_squeezed_fock({1.0, 0.5}, n, gp::FockOptions{1.0}); }}) {
        for (int l : {1, 2}) {
            double prev = -1.0;
            for (int n = 48; n <= 160; n += 4) {
                const double v = gp::optimal_fidelity(build(n), l).value;
                EXPECT_GE(v, prev - 1e-15) << "n_max=" << n;
                prev = v;
            }
        }
    }
}

TEST(FockProperty, PhaseCovariance) {
    const auto coh = gp::displaced_thermal_fock({1.5, 0.0}, 0.5, 60);
    const auto sq = gp::lossy_squeezed_fock({0.8, 0.6}, 80);
    for (double phi : {0.1, 1.0, 2.5, -3.0}) {
        for (int l : {1, 2}) {
            EXPECT_NEAR(gp::optimal_fidelity(gp::phase_shift_fock(coh, phi), l).value, gp::optimal_fidelity(coh, l).value,
                        1e-14);
            EXPECT_NEAR(gp::optimal_fidelity(gp::phase_shift_fock(sq, phi), l).value, gp::optimal_fidelity(sq, l).value,
                        1e-14);
        }
    }
}

TEST(FockProperty, HermitianAndPositive) {
    std::vector<gp::FockMatrix> states;
    for (double a : {0.0, 0.5, 2.0, 4.0})
        for (double nb : {0.0, 0.5, 2.5}) states.push_back(gp::displaced_thermal_fock({a, 0.0}, nb, 140));
    states.push_back(gp::displaced_thermal_fock({1.0, -2.0}, 0.7, 100));
    for (double r0 : {0.25, 1.0, 1.5})
        for (double T : {0.3, 0.8, 1.0}) states.push_back(gp::lossy_squeezed_fock({r0, T}, 220));
    states.push_back(gp::squeezed_vacuum_fock(-0.6, 80));
    states.push_back(gp::thermal_fock(3.0, 150));
    for (const auto& rho : states) {
        EXPECT_TRUE(rho.is_hermitian(1e-12));
        EXPECT_GE(rho.min_eigenvalue(), -1e-9);
    }
}

TEST(FockProperty, NonnegativeEntriesForRealAmplitudes) {
    for (double a : {0.5, 2.0, 4.0})
        for (double nb : {0.0, 0.5, 2.5}) {
            const auto rho = gp::displaced_thermal_fock({a, 0.0}, nb, 140);
            EXPECT_GE(max_negative_entry(rho), -1e-12);
            EXPECT_LE(max_imag(rho), 1e-12);
        }
    // Squeezing along x puts the sign (-1)^{(n-m)/2} on the entries; a quarter-turn removes it.
    for (double r0 : {0.25, 1.0})
        for (double T : {0.3, 1.0}) {
            const auto rho = gp::phase_shift_fock(gp::lossy_squeezed_fock({r0, T}, 160), 0.5 * std::numbers::pi);
            EXPECT_GE(max_negative_entry(rho), -1e-12);
            EXPECT_LE(max_imag(rho), 1e-12);
        }
}

TEST(FockProperty, MomentsReproduceCovariance) {
    const gp::StateParams thermal_disp{0.6, 0.0, {1.2, -0.5}, 0.0};
    const auto rho1 = gp::displaced_thermal_fock(thermal_disp.alpha, thermal_disp.n_beta, 120);
    const auto m1 = gp::fock_moments(rho1);
    const auto g1 = gp::make_state(thermal_disp);
    EXPECT_LE((m1.displacement - g1.displacement()).cwiseAbs().maxCoeff(), 1e-8);
    EXPECT_LE((m1.covariance - g1.covariance()).cwiseAbs().maxCoeff(), 1e-8);
    EXPECT_NEAR(m1.mean_photon_number, gp::mean_photon_number(thermal_disp), 1e-8);

    const gp::LossChannelSpec spec{0.8, 0.6};
    const auto m2 = gp::fock_moments(gp::lossy_squeezed_fock(spec, 200));
    const auto g2 = gp::make_state(gp::lossy_channel_output(spec));
    EXPECT_LE(m2.displacement.cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LE((m2.covariance - g2.covariance()).cwiseAbs().maxCoeff(), 1e-8);
    EXPECT_NEAR(m2.mean_photon_number, spec.T * spec.n0(), 1e-8);
}
