// ofdma-cci: downlink co-channel interference statistics for OFDMA cellular systems
// Copyright 2026 The ofdma-cci Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <gtest/gtest.h>

#include "cci/bessel.hpp"
#include "k0_oracle.hpp"

using namespace cci;

TEST(BesselK0, TabulatedValues) {
    EXPECT_NEAR(bessel_k0(1.0), 0.42102443824, 5e-12);
    EXPECT_NEAR(bessel_k0(2.0), 0.11389387275, 5e-12);
}

TEST(BesselK0, MatchesOracleAtTabulatedPoints) {
    for (double x : {1e-6, 1e-3, 0.5, 1.0, 1.999, 2.0, 2.001, 5.0, 29.0, 31.0, 100.0, 700.0})
        EXPECT_LE(std::abs(bessel_k0(x) / test::k0_oracle(x) - 1.0), 1e-10) << "x=" << x;
}

TEST(BesselK0, LogDivergenceNearZero) {
    EXPECT_GT(bessel_k0(1e-8), 17.0);
    EXPECT_NEAR(bessel_k0(1e-8), -std::log(0.5e-8) - 0.5772156649015329, 1e-12);
}

TEST(BesselK0, DomainAndUnderflow) {
    EXPECT_THROW(bessel_k0(0.0), DomainError);
    EXPECT_THROW(bessel_k0(-1.0), DomainError);
    EXPECT_THROW(bessel_k0(std::nan("")), DomainError);
    EXPECT_EQ(bessel_k0(800.0), 0.0);
    EXPECT_GT(bessel_k0(700.0), 0.0);
}

TEST(BesselK0, LogGridAgainstOracle) {
    const int n = 2000;
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = 1e-6 * std::pow(700.0 / 1e-6, static_cast<double>(i) / (n - 1));
        worst = std::max(worst, std::abs(bessel_k0(x) / test::k0_oracle(x) - 1.0));
    }
    EXPECT_LE(worst, 1e-10);
}

TEST(BesselK0, AgreesWithStandardLibrary) {
    for (double x = 0.01; x < 600.0; x *= 1.37)
        EXPECT_LE(std::abs(bessel_k0(x) / std::cyl_bessel_k(0.0, x) - 1.0), 1e-12) << "x=" << x;
}

TEST(BesselK0Integral, MatchesAdaptiveQuadrature) {
    for (double a : {1e-4, 0.01, 0.5, 1.9, 2.0, 3.0, 10.0, 40.0}) {
        // Subtract the log singularity so Gauss-Kronrod sees a smooth integrand.
        auto smooth = [](double t) { return test::k0_oracle(t) + std::log(t); };
        const double q = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(smooth, 0.0, a, 15, 1e-14);
        const double expected = q - (a * std::log(a) - a);
        EXPECT_NEAR(bessel_k0_integral(a), expected, 1e-12 * std::max(1.0, std::abs(expected))) << "a=" << a;
    }
    EXPECT_NEAR(bessel_k0_integral(200.0), 3.14159265358979 / 2.0, 1e-12);
}
