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

#include "gaussphase/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gaussphase/error.hpp"

namespace gaussphase {

namespace {

constexpr double kSymmetryTol = 1e-12;
constexpr double kPhysicalTol = 1e-10;

void require_single_mode(const GaussianState& s, const char* op) {
    if (s.modes() != 1) throw DomainError(std::string(op) + ": expects a single-mode state");
}

Eigen::Matrix2d rotation(double phi) {
    Eigen::Matrix2d o;
    o << std::cos(phi), -std::sin(phi), std::sin(phi), std::cos(phi);
    return o;
}

}  // namespace

Eigen::MatrixXd symplectic_form(int modes) {
    Eigen::MatrixXd j = Eigen::MatrixXd::Zero(2 * modes, 2 * modes);
    for (int k = 0; k < modes; ++k) {
        j(2 * k, 2 * k + 1) = 1.0;
        j(2 * k + 1, 2 * k) = -1.0;
    }
    return j;
}

GaussianState::GaussianState(Eigen::VectorXd displacement, Eigen::MatrixXd covariance)
    : displacement_(std::move(displacement)), covariance_(std::move(covariance)) {
    const auto n = displacement_.size();
    if (n == 0 || n % 2 != 0) throw DomainError("GaussianState: displacement length must be 2M");
    if (covariance_.rows() != n || covariance_.cols() != n) {
        throw DomainError("GaussianState: covariance must be 2M x 2M");
    }
    if (!displacement_.allFinite() || !covariance_.allFinite()) {
        throw DomainError("GaussianState: non-finite moments");
    }
    const double scale = std::max(1.0, covariance_.cwiseAbs().maxCoeff());
    if ((covariance_ - covariance_.transpose()).cwiseAbs().maxCoeff() > kSymmetryTol * scale) {
        throw DomainError("GaussianState: covariance is not symmetric");
    }
    covariance_ = 0.5 * (covariance_ + covariance_.transpose()).eval();
    if (uncertainty_margin() < -kPhysicalTol * scale) {
        throw DomainError("GaussianState: covariance violates the uncertainty relation");
    }
}

GaussianState GaussianState::vacuum(int modes) {
    if (modes < 1) throw DomainError("vacuum: need at least one mode");
    return GaussianState(Eigen::VectorXd::Zero(2 * modes), Eigen::MatrixXd::Identity(2 * modes, 2 * modes));
}

double GaussianState::uncertainty_margin() const {
    const Eigen::MatrixXcd h = covariance_.cast<std::complex<double>>() +
                               std::complex<double>(0.0, 1.0) * symplectic_form(modes()).cast<std::complex<double>>();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

std::vector<double> GaussianState::symplectic_eigenvalues() const {
    // Eigenvalues of the Hermitian matrix sqrt(G) iJ sqrt(G) are +-nu_k.
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> g(covariance_);
    const Eigen::VectorXd ev = g.eigenvalues().cwiseMax(0.0);
    const Eigen::MatrixXd root = g.eigenvectors() * ev.cwiseSqrt().asDiagonal() * g.eigenvectors().transpose();
    const Eigen::MatrixXcd h = std::complex<double>(0.0, 1.0) *
                               (root * symplectic_form(modes()) * root).cast<std::complex<double>>();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h, Eigen::EigenvaluesOnly);
    std::vector<double> out;
    for (int i = 0; i < solver.eigenvalues().size(); ++i) {
        if (solver.eigenvalues()(i) > 0.0) out.push_back(solver.eigenvalues()(i));
    }
    // The spectrum is +-nu; keep exactly M values even with degenerate zeros.
    out.resize(static_cast<std::size_t>(modes()), 0.0);
    std::sort(out.begin(), out.end());
    return out;
}

double LossChannelSpec::lambda0() const { return std::tanh(r0); }

double LossChannelSpec::n0() const {
    const double s = std::sinh(r0);
    return s * s;
}

void LossChannelSpec::validate() const {
    if (!(r0 >= 0.0) || !std::isfinite(r0)) throw DomainError("loss channel: r0 must be >= 0");
    if (!(T >= 0.0 && T <= 1.0)) throw DomainError("loss channel: T must lie in [0, 1]");
}

LossChannelSpec loss_channel_from_n0(double n0, double T) {
    if (!(n0 >= 0.0) || !std::isfinite(n0)) throw DomainError("loss channel: n0 must be >= 0");
    LossChannelSpec spec{std::asinh(std::sqrt(n0)), T};
    spec.validate();
    return spec;
}

GaussianState thermal_state(double n_beta) {
    if (!(n_beta >= 0.0) || !std::isfinite(n_beta)) throw DomainError("thermal_state: n_beta must be >= 0");
    return GaussianState(Eigen::VectorXd::Zero(2), (2.0 * n_beta + 1.0) * Eigen::MatrixXd::Identity(2, 2));
}

GaussianState squeeze(const GaussianState& state, double r) {
    require_single_mode(state, "squeeze");
    const Eigen::Matrix2d s = Eigen::Vector2d(std::exp(-r), std::exp(r)).asDiagonal();
    return GaussianState(s * state.displacement(), s * state.covariance() * s);
}

GaussianState displace(const GaussianState& state, std::complex<double> alpha) {
    require_single_mode(state, "displace");
    Eigen::VectorXd d = state.displacement();
    d(0) += std::sqrt(2.0) * alpha.real();
    d(1) += std::sqrt(2.0) * alpha.imag();
    return GaussianState(d, state.covariance());
}

GaussianState rotate(const GaussianState& state, double phi) {
    require_single_mode(state, "rotate");
    const Eigen::Matrix2d o = rotation(phi);
    return GaussianState(o * state.displacement(), o * state.covariance() * o.transpose());
}

GaussianState beamsplitter(const GaussianState& state, double theta) {
    if (state.modes() != 2) throw DomainError("beamsplitter: expects exactly two modes");
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    Eigen::Matrix4d v;
    v << c, 0, s, 0,
         0, c, 0, s,
        -s, 0, c, 0,
         0, -s, 0, c;
    return GaussianState(v.transpose() * state.displacement(), v.transpose() * state.covariance() * v);
}

double beamsplitter_angle(double T) {
    if (!(T >= 0.0 && T <= 1.0)) throw DomainError("beamsplitter_angle: T must lie in [0, 1]");
    return std::acos(std::sqrt(T));
}

GaussianState tensor(const GaussianState& a, const GaussianState& b) {
    const auto na = a.displacement().size();
    const auto nb = b.displacement().size();
    Eigen::VectorXd d(na + nb);
    d << a.displacement(), b.displacement();
    Eigen::MatrixXd g = Eigen::MatrixXd::Zero(na + nb, na + nb);
    g.topLeftCorner(na, na) = a.covariance();
    g.bottomRightCorner(nb, nb) = b.covariance();
    return GaussianState(d, g);
}

GaussianState reduce_to_mode(const GaussianState& state, int mode) {
    if (mode < 0 || mode >= state.modes()) throw DomainError("reduce_to_mode: mode index out of range");
    return GaussianState(state.displacement().segment(2 * mode, 2),
                         state.covariance().block(2 * mode, 2 * mode, 2, 2));
}

GaussianState attenuate(const GaussianState& state, double T) {
    require_single_mode(state, "attenuate");
    const GaussianState joint = beamsplitter(tensor(state, GaussianState::vacuum(1)), beamsplitter_angle(T));
    return reduce_to_mode(joint, 0);
}

StateParams lossy_channel_output(const LossChannelSpec& spec) {
    spec.validate();
    const double T = spec.T;
    const double R = spec.R();
    const double gamma = std::sqrt(T * T + 2.0 * T * R * std::cosh(2.0 * spec.r0) + R * R);
    StateParams out;
    out.n_beta = std::max(0.0, 0.5 * (gamma - 1.0));
    // e^{2r} = sqrt((e^{2 r0} T + R) / (e^{-2 r0} T + R)).
    const double up = std::exp(2.0 * spec.r0) * T + R;
    const double down = std::exp(-2.0 * spec.r0) * T + R;
    out.r = 0.25 * std::log(up / down);
    return out;
}

GaussianState make_state(const StateParams& params) {
    return rotate(displace(squeeze(thermal_state(params.n_beta), params.r), params.alpha), params.phi);
}

double energy_matched_squeeze(const LossChannelSpec& spec) {
    spec.validate();
    return std::asinh(std::sqrt(spec.T) * std::sinh(spec.r0));
}

double mean_photon_number(const StateParams& params) {
    const double s = std::sinh(params.r);
    return std::norm(params.alpha) + params.n_beta + (2.0 * params.n_beta + 1.0) * s * s;
}

double mean_photon_number(const GaussianState& state) {
    require_single_mode(state, "mean_photon_number");
    const auto& g = state.covariance();
    const auto& d = state.displacement();
    return 0.25 * (g(0, 0) + g(1, 1)) + 0.5 * d.squaredNorm() - 0.5;
}

double overlap(const GaussianState& a, const GaussianState& b) {
    require_single_mode(a, "overlap");
    require_single_mode(b, "overlap");
    const Eigen::Matrix2d sum = a.covariance() + b.covariance();
    const double det = sum.determinant();
    if (!(det > 0.0)) throw DomainError("overlap: singular covariance sum");
    const Eigen::Vector2d delta = a.displacement() - b.displacement();
    return 2.0 / std::sqrt(det) * std::exp(-delta.dot(sum.inverse() * delta));
}

}  // namespace gaussphase
