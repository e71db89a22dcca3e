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

#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/lambert_w.hpp>
#include <cmath>
#include <numbers>

#include "gaussphase/error.hpp"
#include "gaussphase/numerics.hpp"

namespace gp = gaussphase;

TEST(Bessel, MatchesBoostAcrossBothBranches) {
    for (double t : {0.0, 1e-6, 0.1, 1.0, 5.0, 14.9, 15.0, 15.1, 29.9, 30.0, 30.1, 50.0, 100.0, 300.0, 700.0}) {
        const double ref = boost::math::cyl_bessel_i(0, t);
        EXPECT_NEAR(gp::bessel_i0(t) / ref, 1.0, 2e-15) << "t=" << t;
        EXPECT_NEAR(gp::bessel_i0e(t) / (ref * std::exp(-t)), 1.0, 2e-15) << "t=" << t;
    }
}

TEST(Bessel, ScaledComplementIsAccurateNearZero) {
    // 1 - e^{-t} I0(t) = t - 3t^2/4 + 5t^3/12 + O(t^4).
    for (double t : {1e-12, 1e-8, 1e-5}) {
        const double series = t - 0.75 * t * t + (5.0 / 12.0) * t * t * t;
        EXPECT_NEAR(gp::one_minus_bessel_i0e(t) / series, 1.0, 1e-12) << "t=" << t;
    }
    for (double t : {0.5, 3.0, 40.0}) {
        const double ref = 1.0 - boost::math::cyl_bessel_i(0, t) * std::exp(-t);
        EXPECT_NEAR(gp::one_minus_bessel_i0e(t), ref, 1e-14) << "t=" << t;
    }
}

TEST(Bessel, ErrorsOnOverflowAndNonFinite) {
    EXPECT_THROW(gp::bessel_i0(800.0), gp::OverflowError);
    EXPECT_THROW(gp::bessel_i0(NAN), gp::DomainError);
    EXPECT_NO_THROW(gp::bessel_i0e(1e6));
}

TEST(BesselProperty, AtLeastOneEvenAndMonotone) {
    double prev = 0.0;
    for (int i = 0; i <= 2000; ++i) {
        const double t = 0.35 * i;
        const double v = gp::bessel_i0(t);
        EXPECT_GE(v, 1.0);
        EXPECT_EQ(v, gp::bessel_i0(-t));
        EXPECT_GE(v, prev) << "t=" << t;
        prev = v;
    }
}

TEST(LambertW, MatchesBoostAndSpecialPoints) {
    EXPECT_NEAR(gp::lambert_w0(-1.0 / std::numbers::e), -1.0, 1e-7);
    EXPECT_EQ(gp::lambert_w0(0.0), 0.0);
    EXPECT_NEAR(gp::lambert_w0(std::numbers::e), 1.0, 1e-15);
    for (double x : {-0.3, -0.1, 0.5, 2.0, 10.0, 1e3, 1e6}) {
        EXPECT_NEAR(gp::lambert_w0(x), boost::math::lambert_w0(x), 1e-14 * std::max(1.0, std::abs(x)));
    }
    // The value entering the heterodyne optimal time.
    EXPECT_NEAR(2.0 + gp::lambert_w0(-std::exp(-2.0)), 1.8414056604369606, 1e-14);
    EXPECT_NEAR(2.0 + gp::lambert_w0(-2.0 * std::exp(-2.0)), 1.5936242600400401, 1e-14);
}

TEST(LambertW, RejectsBelowBranchPoint) {
    EXPECT_THROW(gp::lambert_w0(-0.5), gp::DomainError);
    EXPECT_THROW(gp::lambert_w0(NAN), gp::DomainError);
}

TEST(LambertWProperty, RoundTripOnLogGrid) {
    const double branch = -1.0 / std::numbers::e;
    std::vector<double> xs;
    for (double k = -6.0; k <= std::log10(-branch); k += 0.05) {
        const double x = branch + std::pow(10.0, k);
        if (x < 0.0) xs.push_back(x);
    }
    for (double k = -12.0; k <= 6.0; k += 0.05) xs.push_back(std::pow(10.0, k));
    for (double x : xs) {
        const double w = gp::lambert_w0(x);
        EXPECT_LE(std::abs(w * std::exp(w) - x), 1e-12 * std::max(1.0, std::abs(x))) << "x=" << x;
    }
}

TEST(Integrate, EndpointSingularitiesAndSmoothIntegrands) {
    auto inv_sqrt = gp::integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, 1e-12, 1e-12);
    EXPECT_NEAR(inv_sqrt.value, 2.0, 1e-10);
    auto log_int = gp::integrate([](double x) { return std::log(x); }, 0.0, 1.0, 1e-12, 1e-12);
    EXPECT_NEAR(log_int.value, -1.0, 1e-10);
    auto sine = gp::integrate([](double x) { return std::sin(x); }, 0.0, std::numbers::pi, 1e-13, 1e-13);
    EXPECT_NEAR(sine.value, 2.0, 1e-12);
    EXPECT_LE(sine.error_estimate, 1e-12);
    EXPECT_GT(sine.evaluations, 0u);
}

TEST(Integrate, ReportsFailures) {
    EXPECT_THROW(gp::integrate([](double) { return 1.0; }, 1.0, 0.0, 1e-10, 1e-10), gp::DomainError);
    EXPECT_THROW(gp::integrate([](double) { return NAN; }, 0.0, 1.0, 1e-10, 1e-10), gp::ConvergenceError);
    EXPECT_THROW(gp::integrate([](double x) { return std::sin(1.0 / x) / x; }, 0.0, 1.0, 1e-14, 0.0, 20),
                 gp::ConvergenceError);
}

TEST(IntegrateProperty, LinearOnPolynomials) {
    auto f = [](double x) { return 3.0 * x * x * x - x + 0.5; };
    auto g = [](double x) { return x * x * x * x * x - 2.0 * x * x; };
    for (auto [a, b] : {std::pair{0.0, 1.0}, std::pair{-2.0, 3.0}, std::pair{1.5, 7.0}}) {
        for (auto [ca, cb] : {std::pair{1.0, 1.0}, std::pair{2.5, -0.75}, std::pair{-3.0, 4.0}}) {
            const auto lhs = gp::integrate([&](double x) { return ca * f(x) + cb * g(x); }, a, b, 1e-12, 1e-12);
            const auto fi = gp::integrate(f, a, b, 1e-12, 1e-12);
            const auto gi = gp::integrate(g, a, b, 1e-12, 1e-12);
            const double tol = lhs.error_estimate + std::abs(ca) * fi.error_estimate + std::abs(cb) * gi.error_estimate +
                               1e-12 * std::max(1.0, std::abs(lhs.value));
            EXPECT_NEAR(lhs.value, ca * fi.value + cb * gi.value, tol);
        }
    }
}

TEST(Minimize, GoldenSectionAndLogScan) {
    const auto gs = gp::golden_section_minimize([](double x) { return (x - 1.3) * (x - 1.3) + 2.0; }, -4.0, 5.0, 1e-10);
    // Function comparisons resolve a quadratic minimum only to ~sqrt(eps) relative.
    EXPECT_NEAR(gs.x, 1.3, 5e-8);
    EXPECT_NEAR(gs.value, 2.0, 1e-15);
    const auto abs_stop = gp::golden_section_minimize([](double x) { return std::cos(x); }, 2.0, 4.0, 0.0, 1e-11);
    EXPECT_NEAR(abs_stop.x, std::numbers::pi, 5e-8);
    // e^x / x^2 has its minimum at x = 2.
    const auto scan = gp::log_scan_minimize([](double x) { return std::exp(x) / (x * x); }, 1e-4, 50.0, 200, 1e-12);
    EXPECT_NEAR(scan.x, 2.0, 1e-7);
    EXPECT_THROW(gp::log_scan_minimize([](double x) { return x; }, 1.0, 10.0, 50, 1e-8), gp::ConvergenceError);
    EXPECT_THROW(gp::golden_section_minimize([](double x) { return x; }, 1.0, 1.0, 1e-8), gp::DomainError);
}
