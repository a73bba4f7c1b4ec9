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

#include <algorithm>
#include <cmath>
#include <random>

#include <boost/math/distributions/normal.hpp>
#include <gtest/gtest.h>

#include "cci/closed_form.hpp"
#include "cci/montecarlo.hpp"

using namespace cci;

namespace {

LinkBudget budget(double e0, std::vector<double> e) {
    LinkBudget b;
    b.received_powers.push_back(e0);
    b.received_powers.insert(b.received_powers.end(), e.begin(), e.end());
    return b;
}

// Two-sided z for a family of tests with overall false-alarm rate alpha.
double family_z(double alpha, std::size_t k) {
    return boost::math::quantile(boost::math::complement(boost::math::normal_distribution<>(), alpha / (2.0 * k)));
}

double max_z(const EmpiricalPdf &emp, const std::vector<double> &q, double min_count, std::size_t &used) {
    const double n = static_cast<double>(emp.sample_count);
    double worst = 0.0;
    used = 0;
    for (std::size_t i = 0; i < q.size(); ++i) {
        if (n * q[i] < min_count)
            continue;
        ++used;
        worst = std::max(worst, std::abs(emp.probabilities[i] - q[i]) * n / std::sqrt(n * q[i] * (1.0 - q[i])));
    }
    return worst;
}

const Scenario fig2 = uniform_scenario(1, 1.0, 1.0, 4.0, 0.5, 1e-3);

} // namespace

TEST(Sample, IdleInterferersGiveExactZeros) {
    const LinkBudget b = budget(1.0, {0.5, 0.3});
    const SampleBatch s = sample(b, std::vector<double>{0.0, 0.0}, 0.0, SignalTag::I, 1000, 1);
    EXPECT_TRUE(std::all_of(s.values.begin(), s.values.end(), [](double v) { return v == 0.0; }));
    EXPECT_EQ(s.tag, SignalTag::I);
    EXPECT_EQ(s.seed, 1u);
}

TEST(Sample, InterferenceMoments) {
    const LinkBudget b = link_budget(fig2, trajectory(Trajectory::two_cell_edge, 0.5));
    const std::size_t n = 1'000'000;
    const SampleBatch s = sample(b, fig2.loading_rates, 0.0, SignalTag::I, n, 99);
    double v = 0.0;
    for (std::size_t m = 0; m < fig2.loading_rates.size(); ++m)
        v += fig2.loading_rates[m] * b.interferer_powers()[m];
    EXPECT_LE(std::abs(s.mean()), 4.0 * std::sqrt(v / n));
    EXPECT_NEAR(s.variance() / v, 1.0, 0.01);
}

TEST(Sample, ReceivedSignalVariance) {
    const LinkBudget b = link_budget(fig2, trajectory(Trajectory::two_cell_edge, 0.5));
    const SampleBatch s = sample(b, fig2.loading_rates, fig2.noise_variance, SignalTag::Y, 10'000'000, 5);
    double v = b.desired_power() + fig2.noise_variance;
    for (std::size_t m = 0; m < fig2.loading_rates.size(); ++m)
        v += fig2.loading_rates[m] * b.interferer_powers()[m];
    EXPECT_NEAR(s.variance() / v, 1.0, 0.01);
}

TEST(Sample, NoiseOnlyPassesKolmogorovSmirnov) {
    const LinkBudget b = budget(1.0, {});
    const std::size_t n = 200'000;
    SampleBatch s = sample(b, std::vector<double>{}, 0.25, SignalTag::Z, n, 17);
    std::sort(s.values.begin(), s.values.end());
    double d = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double f = normal_cdf(s.values[i], 0.25);
        d = std::max({d, f - double(i) / n, double(i + 1) / n - f});
    }
    EXPECT_LT(d, 1.628 / std::sqrt(double(n))); // 1% critical value
}

TEST(Sample, ReproducibleAndWorkerIndependent) {
    const LinkBudget b = link_budget(fig2, trajectory(Trajectory::three_cell_corner, 0.7));
    const std::size_t n = 300'000; // several chunks
    const SampleBatch a = sample(b, fig2.loading_rates, 1e-3, SignalTag::Y, n, 123, 1);
    const SampleBatch c = sample(b, fig2.loading_rates, 1e-3, SignalTag::Y, n, 123, 4);
    const SampleBatch d = sample(b, fig2.loading_rates, 1e-3, SignalTag::Y, n, 124, 1);
    EXPECT_EQ(a.values, c.values);
    EXPECT_NE(a.values, d.values);
    const SampleBatch z = sample(b, fig2.loading_rates, 1e-3, SignalTag::Z, n, 123, 1);
    EXPECT_NE(a.values, z.values); // streams differ per tag
}

TEST(Sample, RejectsBadInputs) {
    const LinkBudget b = budget(1.0, {0.5});
    EXPECT_THROW(sample(b, std::vector<double>{0.5, 0.5}, 0.0, SignalTag::I, 10, 1), InvalidArgument);
    EXPECT_THROW(sample(b, std::vector<double>{0.5}, 0.0, SignalTag::I, 0, 1), InvalidArgument);
    EXPECT_THROW(sample(b, std::vector<double>{0.5}, -1.0, SignalTag::Z, 10, 1), InvalidArgument);
}

TEST(EmpiricalPdf, ConstantZeroBatchFillsZeroBin) {
    SampleBatch s;
    s.values.assign(1000, 0.0);
    const BinGrid g = BinGrid::symmetric(1.0, 11);
    const EmpiricalPdf e = empirical_pdf(s, g);
    EXPECT_DOUBLE_EQ(e.probabilities[g.index(0.0)], 1.0);
    EXPECT_EQ(e.probabilities[5], 1.0);
}

TEST(EmpiricalPdf, OutOfRangeGoesToEndBins) {
    SampleBatch s;
    s.values = {-5.0, 5.0, 0.1, 0.2};
    const EmpiricalPdf e = empirical_pdf(s, BinGrid::symmetric(1.0, 10));
    EXPECT_EQ(e.underflow, 1u);
    EXPECT_EQ(e.overflow, 1u);
    EXPECT_DOUBLE_EQ(e.probabilities.front(), 0.25);
    EXPECT_DOUBLE_EQ(e.probabilities.back(), 0.25);
    double sum = 0.0;
    for (double p : e.probabilities)
        sum += p;
    EXPECT_DOUBLE_EQ(sum, 1.0);
}

TEST(EmpiricalPdf, RejectsEmptyOrTooFewBins) {
    SampleBatch s;
    EXPECT_THROW(empirical_pdf(s, BinGrid::symmetric(1.0, 10)), InvalidArgument);
    s.values = {0.0};
    EXPECT_THROW(empirical_pdf(s, BinGrid::symmetric(1.0, 9)), InvalidArgument);
}

TEST(EmpiricalPdf, StandardNormalHistogram) {
    const LinkBudget b = budget(1.0, {});
    const SampleBatch s = sample(b, std::vector<double>{}, 1.0, SignalTag::Z, 1'000'000, 31);
    const BinGrid g{-6.0, 6.0, 101};
    const EmpiricalPdf e = empirical_pdf(s, g);
    const auto q = discretize_gaussian(1.0, g);
    std::size_t used = 0;
    const double z = max_z(e, q, 1.0, used);
    EXPECT_LT(z, family_z(1e-3, used));
}

TEST(EmpiricalPdf, TwoEqualPowerHistogramMatchesLaplace) {
    const LinkBudget b = budget(1.0, {1.0, 1.0});
    const SampleBatch s = sample(b, std::vector<double>{1.0, 1.0}, 0.0, SignalTag::I, 2'000'000, 8);
    const BinGrid g = default_bins(2.0, 81);
    const EmpiricalPdf e = empirical_pdf(s, g);
    const auto q = discretize_cdf([](double x) { return x < 0 ? 0.5 * std::exp(x) : 1.0 - 0.5 * std::exp(-x); }, g);
    std::size_t used = 0;
    const double z = max_z(e, q, 1000.0, used);
    EXPECT_GT(used, 20u);
    EXPECT_LT(z, family_z(1e-3, used));
}

TEST(Discretize, NumericPdfMassesIncludeAtom) {
    const NumericPdf f = pdf_single_cci(1.0, 0.4);
    const BinGrid g = default_bins(0.4, 41);
    const auto with = discretize(f, g);
    const auto without = discretize(f, g, false);
    double s = 0.0, s2 = 0.0;
    for (std::size_t i = 0; i < with.size(); ++i) {
        s += with[i];
        s2 += without[i];
    }
    EXPECT_NEAR(s, 1.0, 1e-12);
    EXPECT_NEAR(s2, 0.4, 1e-3);
    // Renormalised with the atom added to the zero bin.
    const std::size_t z = g.index(0.0);
    EXPECT_NEAR(with[z] * (s2 + 0.6) - without[z], 0.6, 1e-12);
    EXPECT_NEAR(with[z + 3] * (s2 + 0.6), without[z + 3], 1e-15);
}

TEST(KlDistance, IdentityAndSupport) {
    const BinGrid g = default_bins(1.0);
    const auto p = discretize_gaussian(1.0, g);
    EXPECT_EQ(kl_distance(p, p), 0.0);
    std::vector<double> f(p.size(), 0.0), h(p.size(), 0.0);
    f[3] = 1.0;
    h[4] = 1.0;
    EXPECT_TRUE(std::isinf(kl_distance(f, h)));
    EXPECT_THROW(kl_distance(f, std::vector<double>(3, 0.1)), InvalidArgument);
}

TEST(KlDistanceProperty, GibbsInequalityOnRandomLaws) {
    std::mt19937_64 eng(77);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t n = 2 + trial % 30;
        std::vector<double> f(n), g(n);
        double sf = 0, sg = 0;
        for (std::size_t i = 0; i < n; ++i) {
            f[i] = u(eng) < 0.2 ? 0.0 : u(eng);
            g[i] = 1e-3 + u(eng);
            sf += f[i];
            sg += g[i];
        }
        if (sf == 0.0)
            continue;
        for (std::size_t i = 0; i < n; ++i) {
            f[i] /= sf;
            g[i] /= sg;
        }
        const double d = kl_distance(f, g);
        EXPECT_GE(d, 0.0);
        if (f != g) {
            EXPECT_GT(d, 0.0);
        }
        // Oracle: the direct sum in long double.
        long double ref = 0.0L;
        for (std::size_t i = 0; i < n; ++i)
            if (f[i] > 0)
                ref += f[i] * std::log(static_cast<long double>(f[i]) / g[i]);
        EXPECT_NEAR(d, static_cast<double>(ref), 1e-12);
    }
}

TEST(KlDistance, LaplaceAgainstMatchedGaussian) {
    // h(Gaussian, var 2) - h(Laplace, scale 1) = 0.5 ln(4 pi e) - (1 + ln 2).
    const double analytic = 0.5 * std::log(4.0 * M_PI * std::exp(1.0)) - (1.0 + std::log(2.0));
    EXPECT_NEAR(analytic, 0.0724, 5e-5);
    EXPECT_NEAR(kl_to_matched_gaussian(pdf_equal_power(2, 1.0), 2.0), analytic, 5e-3);
}

TEST(KlDistance, DecreasesWithInterfererCount) {
    double prev = INFINITY;
    for (int m : {1, 2, 4, 6}) {
        const double kl = kl_to_matched_gaussian(pdf_equal_power(m, 1.0), m);
        EXPECT_LT(kl, prev) << m;
        prev = kl;
    }
}

TEST(KlDistance, EmpiricalTracksAnalytic) {
    const LinkBudget b = budget(1.0, {1.0, 1.0});
    const SampleBatch s = sample(b, std::vector<double>{1.0, 1.0}, 0.0, SignalTag::I, 2'000'000, 4);
    const double emp = kl_to_matched_gaussian(empirical_pdf(s, default_bins(2.0)), 2.0);
    EXPECT_NEAR(emp, kl_to_matched_gaussian(pdf_equal_power(2, 1.0), 2.0), 2e-3);
}
