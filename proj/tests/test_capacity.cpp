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
#include <numbers>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <gtest/gtest.h>

#include "cci/capacity.hpp"

using namespace cci;

namespace {

LinkBudget budget(double e0, std::vector<double> e) {
    LinkBudget b;
    b.received_powers.push_back(e0);
    b.received_powers.insert(b.received_powers.end(), e.begin(), e.end());
    return b;
}

// E[1/2 log2(1 + c H^2)] for H standard normal by adaptive quadrature in h.
double awgn_oracle(double c) {
    auto f = [c](double h) { return std::log1p(c * h * h) * std::exp(-0.5 * h * h); };
    const double knee = 1.0 / std::sqrt(c);
    using gk = boost::math::quadrature::gauss_kronrod<double, 61>;
    double s = gk::integrate(f, 0.0, knee, 20, 1e-14) + gk::integrate(f, knee, 1.0, 20, 1e-14) +
               gk::integrate(f, 1.0, 40.0, 20, 1e-14);
    return s * 2.0 / std::sqrt(2.0 * std::numbers::pi) * 0.5 / std::numbers::ln2;
}

const Scenario fig = uniform_scenario(1, 1.0, 1.0, 4.0, 0.5, 1e-3);

} // namespace

TEST(FadingQuadrature, WeightsAndMoments) {
    const auto q = FadingQuadrature::make(1e6);
    // The rule stops near |h| = 3e-7, dropping about that much probability.
    EXPECT_NEAR(q.expectation([](double) { return 1.0; }), 1.0, 1e-6);
    EXPECT_NEAR(q.expectation([](double h) { return h * h; }), 1.0, 1e-6);
    EXPECT_NEAR(q.expectation([](double h) { return h * h * h * h; }), 3.0, 1e-5);
    const auto fine = FadingQuadrature::make(1e6, 0.125);
    EXPECT_NEAR(fine.expectation([](double h) { return h * h; }), 1.0, 1e-12);
}

TEST(FadingQuadrature, LogIntegrandAgainstOracle) {
    for (double c : {0.1, 3.0, 1e3, 1e6}) {
        const auto q = FadingQuadrature::make(c);
        const double v = q.expectation([c](double h) { return 0.5 * std::log1p(c * h * h) / std::numbers::ln2; });
        EXPECT_NEAR(v, awgn_oracle(c), 1e-6) << c;
    }
}

TEST(ICsi, NoSignalIsExactlyZero) {
    const Estimate e = i_csi(budget(0.0, {}), std::vector<double>{}, 1e-3, 10'000, 1);
    EXPECT_EQ(e.value, 0.0);
    EXPECT_EQ(e.std_error, 0.0);
}

TEST(ICsi, AwgnValue) {
    const Estimate e = i_csi(budget(1.0, {}), std::vector<double>{}, 1e-3, 4'000'000, 2);
    const double ref = awgn_oracle(1000.0);
    EXPECT_NEAR(ref, 4.1229858435, 1e-8);
    EXPECT_NEAR(e.value, ref, 4.0 * e.std_error);
}

TEST(ICsi, InterferenceLowersEveryPath) {
    const Estimate clean = i_csi(budget(1.0, {}), std::vector<double>{}, 1e-2, 50'000, 9);
    const Estimate dirty = i_csi(budget(1.0, {0.3, 0.2}), std::vector<double>{0.5, 0.5}, 1e-2, 50'000, 9);
    EXPECT_LT(dirty.value, clean.value);
}

TEST(ICsi, RequiresEnoughDraws) {
    EXPECT_THROW(i_csi(budget(1.0, {}), std::vector<double>{}, 1e-3, 9'999, 1), InvalidArgument);
}

TEST(IGa, MatchesCsiWithoutInterferenceAndMonteCarlo) {
    const Estimate q = i_ga(budget(1.0, {}), std::vector<double>{}, 1e-3);
    EXPECT_NEAR(q.value, awgn_oracle(1000.0), 1e-6);
    EXPECT_EQ(i_ga(budget(0.0, {0.4}), std::vector<double>{0.5}, 1e-3).value, 0.0);
    // Cell-edge SINR keeps the Monte Carlo spread small enough to resolve 1e-3.
    const LinkBudget edge = link_budget(fig, trajectory(Trajectory::two_cell_edge, 1.0));
    const Estimate a = i_ga(edge, fig.loading_rates, fig.noise_variance);
    const Estimate m = i_ga(edge, fig.loading_rates, fig.noise_variance, ExpectationMethod::monte_carlo, 4'000'000, 3);
    EXPECT_LT(m.std_error, 3e-4);
    EXPECT_NEAR(a.value, m.value, 1e-3);
}

TEST(IGa, InterferenceLimitedScaleInvariance) {
    const Scenario s1 = uniform_scenario(1, 1.0, 1.0, 4.0, 1.0, 1e-6);
    const Scenario s2 = uniform_scenario(1, 1.0, 2.0, 4.0, 1.0, 1e-6);
    const Point ms = trajectory(Trajectory::two_cell_edge, 0.6);
    const LinkBudget b1 = link_budget(s1, ms), b2 = link_budget(s2, ms);
    double v = 0.0;
    for (double e : b1.interferer_powers())
        v += e;
    ASSERT_GE(v / 1e-6, 1e3);
    EXPECT_NEAR(i_ga(b1, s1.loading_rates, 1e-6).value, i_ga(b2, s2.loading_rates, 1e-6).value, 1e-2);
}

TEST(IGa, StrictlyDecreasesWithNoise) {
    const LinkBudget b = link_budget(fig, trajectory(Trajectory::two_cell_edge, 0.4));
    double prev = INFINITY;
    for (double n : {1e-4, 1e-3, 1e-2, 1e-1}) {
        const double v = i_ga(b, fig.loading_rates, n).value;
        EXPECT_LT(v, prev);
        prev = v;
    }
}

TEST(IP, AwgnReduction) {
    const LinkBudget b = budget(1.0, {});
    const IpResult r = i_p(b, std::vector<double>{}, 1e-3);
    EXPECT_NEAR(r.value, awgn_oracle(1000.0), 2e-3);
    EXPECT_LT(r.refinement_delta, 1e-6);
}

TEST(IP, NoSignal) {
    EXPECT_EQ(i_p(budget(0.0, {0.3}), std::vector<double>{0.5}, 1e-3).value, 0.0);
    EXPECT_THROW(i_p(budget(1.0, {0.3}), std::vector<double>{0.5}, 0.0), InvalidArgument);
}

TEST(IP, BracketedByTheOtherEstimators) {
    const LinkBudget b = link_budget(fig, trajectory(Trajectory::two_cell_edge, 0.5));
    const Estimate csi = i_csi(b, fig.loading_rates, fig.noise_variance, 100'000, 12);
    const Estimate ga = i_ga(b, fig.loading_rates, fig.noise_variance);
    const IpResult ip = i_p(b, fig.loading_rates, fig.noise_variance);
    EXPECT_GT(ip.value, ga.value);
    EXPECT_LT(ip.value, csi.value);
    EXPECT_GT(csi.value - ga.value, 3.0 * csi.std_error);
    EXPECT_LT(ip.refinement_delta, 1e-3);
}

TEST(IP, AgreesWithDirectScoring) {
    const LinkBudget b = link_budget(fig, trajectory(Trajectory::two_cell_edge, 0.8));
    IpSettings s;
    s.refine = false;
    const double direct = i_p(b, fig.loading_rates, fig.noise_variance, s).value;
    const Estimate mc = i_p_monte_carlo(b, fig.loading_rates, fig.noise_variance, 50'000, 21, s);
    EXPECT_NEAR(direct, mc.value, 5e-3);
}

TEST(CapacityProperty, RelabellingInterferers) {
    const LinkBudget b = link_budget(fig, trajectory(Trajectory::three_cell_corner, 0.6));
    const auto e = b.interferer_powers();
    std::vector<double> load{0.1, 0.9, 0.4, 0.7, 0.2, 0.5};
    std::vector<double> perm_e(e.rbegin(), e.rend()), perm_l(load.rbegin(), load.rend());
    const LinkBudget pb = budget(b.desired_power(), perm_e);
    IpSettings s;
    s.refine = false;
    EXPECT_NEAR(i_p(b, load, 1e-3, s).value, i_p(pb, perm_l, 1e-3, s).value, 1e-9);
    EXPECT_NEAR(i_ga(b, load, 1e-3).value, i_ga(pb, perm_l, 1e-3).value, 1e-12);
    const Estimate x = i_csi(b, load, 1e-3, 100'000, 4), y = i_csi(pb, perm_l, 1e-3, 100'000, 5);
    EXPECT_NEAR(x.value, y.value, 3.0 * std::hypot(x.std_error, y.std_error));
}

TEST(DiffFactors, Arithmetic) {
    const DiffFactors d = diff_factors(2.0, 2.5, 2.0);
    EXPECT_DOUBLE_EQ(d.csi_pct, 25.0);
    EXPECT_DOUBLE_EQ(d.ga_pct, 0.0);
    EXPECT_THROW(diff_factors(0.0, 1.0, 1.0), UndefinedRatio);
}
