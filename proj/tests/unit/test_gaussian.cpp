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

#include "gaussphase/error.hpp"
#include "gaussphase/gaussian.hpp"

namespace gp = gaussphase;

namespace {

void expect_matrix_near(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, double tol) {
    ASSERT_EQ(a.rows(), b.rows());
    ASSERT_EQ(a.cols(), b.cols());
    EXPECT_LE((a - b).cwiseAbs().maxCoeff(), tol) << "a=\n" << a << "\nb=\n" << b;
}

std::vector<gp::StateParams> sample_params() {
    std::vector<gp::StateParams> out;
    for (double nb : {0.0, 0.3, 2.0})
        for (double r : {0.0, 0.4, 1.2})
            for (auto alpha : {std::complex<double>(0, 0), std::complex<double>(1.5, -0.4)})
                for (double phi : {0.0, 0.7, -2.1}) out.push_back({nb, r, alpha, phi});
    return out;
}

}  // namespace

TEST(Gaussian, VacuumAndThermalConventions) {
    const auto vac = gp::GaussianState::vacuum();
    expect_matrix_near(vac.covariance(), Eigen::Matrix2d::Identity(), 0.0);
    const auto th = gp::thermal_state(1.5);
    expect_matrix_near(th.covariance(), 4.0 * Eigen::Matrix2d::Identity(), 1e-15);
    EXPECT_NEAR(gp::mean_photon_number(th), 1.5, 1e-15);
    EXPECT_THROW(gp::thermal_state(-0.1), gp::DomainError);
}

TEST(Gaussian, SqueezeDisplaceRotate) {
    const auto sq = gp::squeeze(gp::GaussianState::vacuum(), 0.5);
    EXPECT_NEAR(sq.covariance()(0, 0), std::exp(-1.0), 1e-15);
    EXPECT_NEAR(sq.covariance()(1, 1), std::exp(1.0), 1e-14);
    const std::complex<double> alpha(1.0, 0.5);
    const auto d = gp::rotate(gp::displace(gp::GaussianState::vacuum(), alpha), 0.8);
    const auto rotated = alpha * std::polar(1.0, 0.8);
    EXPECT_NEAR(d.displacement()(0), std::sqrt(2.0) * rotated.real(), 1e-14);
    EXPECT_NEAR(d.displacement()(1), std::sqrt(2.0) * rotated.imag(), 1e-14);
    EXPECT_NEAR(gp::mean_photon_number(d), std::norm(alpha), 1e-14);
}

TEST(Gaussian, MeanPhotonNumberAgreesForParamsAndState) {
    for (const auto& p : sample_params()) {
        EXPECT_NEAR(gp::mean_photon_number(p), gp::mean_photon_number(gp::make_state(p)), 1e-12);
    }
}

TEST(Gaussian, ConstructorRejectsUnphysicalCovariance) {
    Eigen::Matrix2d g = 0.5 * Eigen::Matrix2d::Identity();
    EXPECT_THROW(gp::GaussianState(Eigen::Vector2d::Zero(), g), gp::DomainError);
    Eigen::Matrix2d asym;
    asym << 1.0, 0.2, 0.0, 1.0;
    EXPECT_THROW(gp::GaussianState(Eigen::Vector2d::Zero(), asym), gp::DomainError);
}

TEST(Gaussian, LossyChannelOutputMatchesAttenuatedSqueezedVacuum) {
    for (double r0 : {0.0, 0.25, 1.0, 2.5}) {
        for (double T : {0.0, 0.3, 0.5, 1.0}) {
            const auto p = gp::lossy_channel_output({r0, T});
            const auto direct = gp::attenuate(gp::squeeze(gp::GaussianState::vacuum(), r0), T);
            expect_matrix_near(gp::make_state(p).covariance(), direct.covariance(), 1e-12);
        }
    }
    EXPECT_THROW(gp::lossy_channel_output({-0.1, 0.5}), gp::DomainError);
    EXPECT_THROW(gp::lossy_channel_output({0.5, 1.2}), gp::DomainError);
}

TEST(Gaussian, LossChannelHelpers) {
    const gp::LossChannelSpec spec{0.7, 0.4};
    EXPECT_NEAR(spec.R(), 0.6, 1e-16);
    EXPECT_NEAR(spec.lambda0(), std::tanh(0.7), 2e-16);
    EXPECT_NEAR(spec.n0(), std::sinh(0.7) * std::sinh(0.7), 1e-15);
    const auto from_n0 = gp::loss_channel_from_n0(spec.n0(), 0.4);
    EXPECT_NEAR(from_n0.r0, 0.7, 1e-14);
    const double matched = gp::energy_matched_squeeze(spec);
    EXPECT_NEAR(std::sinh(matched) * std::sinh(matched), spec.T * spec.n0(), 1e-14);
}

TEST(Gaussian, OverlapIsPurity) {
    for (double nb : {0.0, 0.5, 3.0}) {
        const auto s = gp::make_state({nb, 0.6, {0.3, 0.2}, 0.4});
        EXPECT_NEAR(gp::overlap(s, s), 1.0 / (2.0 * nb + 1.0), 1e-13);
    }
    // Coherent-state overlap |<a|b>|^2 = exp(-|a - b|^2).
    const auto a = gp::displace(gp::GaussianState::vacuum(), {1.0, 0.0});
    const auto b = gp::displace(gp::GaussianState::vacuum(), {0.2, 0.5});
    EXPECT_NEAR(gp::overlap(a, b), std::exp(-std::norm(std::complex<double>(0.8, -0.5))), 1e-14);
}

TEST(Gaussian, TensorAndReduce) {
    const auto a = gp::make_state({0.2, 0.3, {1.0, 0.0}, 0.0});
    const auto b = gp::thermal_state(0.7);
    const auto ab = gp::tensor(a, b);
    EXPECT_EQ(ab.modes(), 2);
    expect_matrix_near(gp::reduce_to_mode(ab, 0).covariance(), a.covariance(), 0.0);
    expect_matrix_near(gp::reduce_to_mode(ab, 1).covariance(), b.covariance(), 0.0);
    EXPECT_THROW(gp::reduce_to_mode(ab, 2), gp::DomainError);
    EXPECT_THROW(gp::beamsplitter(a, 0.3), gp::DomainError);
}

TEST(GaussianProperty, SymplecticInvariance) {
    for (const auto& p : sample_params()) {
        const auto s = gp::make_state(p);
        const auto before = s.symplectic_eigenvalues();
        const double det = s.covariance().determinant();
        for (double phi : {0.3, -1.7, 3.0}) {
            const auto r = gp::rotate(s, phi);
            EXPECT_NEAR(r.covariance().determinant(), det, 1e-10 * std::max(1.0, det));
            EXPECT_NEAR(r.symplectic_eigenvalues()[0], before[0], 1e-10 * before[0]);
        }
        const auto two = gp::tensor(s, gp::make_state({0.4, 0.9, {0.0, 1.0}, 0.2}));
        const auto ev = two.symplectic_eigenvalues();
        const double det2 = two.covariance().determinant();
        for (double theta : {0.1, 0.785, 1.3}) {
            const auto mixed = gp::beamsplitter(two, theta);
            EXPECT_NEAR(mixed.covariance().determinant(), det2, 1e-10 * std::max(1.0, det2));
            const auto ev2 = mixed.symplectic_eigenvalues();
            ASSERT_EQ(ev2.size(), ev.size());
            for (size_t i = 0; i < ev.size(); ++i) EXPECT_NEAR(ev2[i], ev[i], 1e-10 * ev[i]);
        }
    }
}

TEST(GaussianProperty, EveryOperationStaysPhysical) {
    for (const auto& p : sample_params()) {
        const auto s = gp::make_state(p);
        EXPECT_GE(s.uncertainty_margin(), -1e-12);
        EXPECT_GE(gp::squeeze(s, 0.8).uncertainty_margin(), -1e-12);
        EXPECT_GE(gp::rotate(s, 1.1).uncertainty_margin(), -1e-12);
        EXPECT_GE(gp::displace(s, {0.5, -1.0}).uncertainty_margin(), -1e-12);
        for (double T : {0.0, 0.2, 0.9, 1.0}) EXPECT_GE(gp::attenuate(s, T).uncertainty_margin(), -1e-12);
        const auto two = gp::beamsplitter(gp::tensor(s, gp::thermal_state(0.5)), 0.6);
        EXPECT_GE(two.uncertainty_margin(), -1e-12);
        EXPECT_GE(gp::reduce_to_mode(two, 1).uncertainty_margin(), -1e-12);
        for (double v : s.symplectic_eigenvalues()) EXPECT_GE(v, 1.0 - 1e-12);
    }
}

TEST(GaussianProperty, LossComposition) {
    for (double r0 : {0.2, 0.8, 1.6}) {
        for (auto [T1, T2] : {std::pair{0.5, 0.6}, std::pair{0.9, 0.3}, std::pair{1.0, 0.45}}) {
            const auto direct = gp::make_state(gp::lossy_channel_output({r0, T1 * T2}));
            const auto first = gp::make_state(gp::lossy_channel_output({r0, T1}));
            const auto staged = gp::attenuate(first, T2);
            expect_matrix_near(staged.covariance(), direct.covariance(), 1e-10);
            const auto via_bs = gp::reduce_to_mode(
                gp::beamsplitter(gp::tensor(first, gp::GaussianState::vacuum()), gp::beamsplitter_angle(T2)), 0);
            expect_matrix_near(via_bs.covariance(), direct.covariance(), 1e-10);
        }
    }
}

TEST(GaussianProperty, LossyOutputSolvesDefiningRelations) {
    for (double r0 : {0.0, 0.1, 0.5, 1.0, 2.0, 4.0}) {
        for (double T : {0.0, 0.05, 0.3, 0.5, 0.8, 1.0}) {
            const auto p = gp::lossy_channel_output({r0, T});
            const double gamma = 2.0 * p.n_beta + 1.0;
            const double R = 1.0 - T;
            const double lo = T * std::exp(-2.0 * r0) + R;
            const double hi = T * std::exp(2.0 * r0) + R;
            EXPECT_LE(std::abs(gamma * std::exp(-2.0 * p.r) - lo), 1e-12 * std::max(1.0, lo));
            EXPECT_LE(std::abs(gamma * std::exp(2.0 * p.r) - hi), 1e-12 * std::max(1.0, hi));
            EXPECT_GE(p.n_beta, 0.0);
            EXPECT_GE(p.r, 0.0);
        }
    }
}
