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
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "cci/geometry.hpp"

using namespace cci;

namespace {

// Brute-force distance oracle, independent of link_budget.
double brute_distance(double ax, double ay, double bx, double by) {
    return std::sqrt((ax - bx) * (ax - bx) + (ay - by) * (ay - by));
}

Point rotate(Point p, double angle) {
    return {p.x * std::cos(angle) - p.y * std::sin(angle), p.x * std::sin(angle) + p.y * std::cos(angle)};
}

} // namespace

TEST(HexLayout, OneRingHasSevenSitesAtInterSiteDistance) {
    const auto pos = hex_layout(1, 1.0);
    ASSERT_EQ(pos.size(), 7u);
    EXPECT_EQ(pos[0], (Point{0.0, 0.0}));
    for (std::size_t i = 1; i < 7; ++i)
        EXPECT_NEAR(distance(pos[0], pos[i]), 1.7320508075688772, 1e-12);
    for (std::size_t i = 1; i < 7; ++i) {
        const double angle = std::atan2(pos[i].y, pos[i].x);
        const double expected = std::numbers::pi / 3.0 * static_cast<double>(i - 1);
        EXPECT_NEAR(std::remainder(angle - expected, 2.0 * std::numbers::pi), 0.0, 1e-12);
    }
}

TEST(HexLayout, TwoRingsHaveNineteenSites) { EXPECT_EQ(hex_layout(2, 1.0).size(), 19u); }

TEST(HexLayout, CountFormulaHoldsForSeveralRings) {
    for (int k = 1; k <= 5; ++k)
        EXPECT_EQ(hex_layout(k, 1.0).size(), static_cast<std::size_t>(1 + 3 * k * (k + 1)));
}

TEST(HexLayout, ScalesWithRadius) {
    const auto pos = hex_layout(1, 2.0);
    for (std::size_t i = 1; i < 7; ++i)
        EXPECT_NEAR(distance(pos[0], pos[i]), 3.4641016151377544, 1e-12);
}

TEST(HexLayout, RejectsBadArguments) {
    EXPECT_THROW(hex_layout(0, 1.0), InvalidArgument);
    EXPECT_THROW(hex_layout(1, 0.0), InvalidArgument);
    EXPECT_THROW(hex_layout(1, -1.0), InvalidArgument);
}

TEST(HexLayout, SitesAreOnTheTriangularLatticeAndDistinct) {
    const auto pos = hex_layout(3, 1.0);
    const double isd = std::sqrt(3.0);
    for (std::size_t i = 0; i < pos.size(); ++i) {
        double nearest = 1e9;
        for (std::size_t j = 0; j < pos.size(); ++j)
            if (i != j)
                nearest = std::min(nearest, distance(pos[i], pos[j]));
        EXPECT_NEAR(nearest, isd, 1e-9);
    }
}

TEST(HexLayoutProperty, RotationBySixtyDegreesPreservesTheSet) {
    for (int rings : {1, 2, 3}) {
        const auto pos = hex_layout(rings, 1.3);
        for (const Point &p : pos) {
            const Point q = rotate(p, std::numbers::pi / 3.0);
            const bool found = std::any_of(pos.begin(), pos.end(), [&](const Point &r) { return distance(q, r) < 1e-9; });
            EXPECT_TRUE(found);
        }
    }
}

TEST(LinkBudget, PowerLawExamples) {
    Scenario s;
    s.bs_positions = {{0, 0}, {3, 0}};
    s.tx_powers = {1, 1};
    s.pathloss_exponents = {4, 4};
    s.loading_rates = {1};
    const LinkBudget at1 = link_budget(s, {1, 0});
    EXPECT_DOUBLE_EQ(at1.received_powers[0], 1.0);
    EXPECT_DOUBLE_EQ(at1.received_powers[1], 0.0625);
    EXPECT_DOUBLE_EQ(at1.path_gains[1], 0.0625);
    EXPECT_DOUBLE_EQ(at1.distances[1], 2.0);
}

TEST(LinkBudget, HalfRadiusTowardsFirstRing) {
    const Scenario s = uniform_scenario(1, 1.0, 1.0, 4.0, 1.0, 0.0);
    const Point ms{0.5, 0.0};
    const LinkBudget lb = link_budget(s, ms);
    EXPECT_NEAR(lb.desired_power(), 16.0, 1e-12);
    const double d1 = brute_distance(0.5, 0.0, std::sqrt(3.0), 0.0);
    EXPECT_NEAR(d1, 1.2320508075688772, 1e-12);
    EXPECT_NEAR(lb.received_powers[1], std::pow(d1, -4.0), 1e-12);
    EXPECT_NEAR(lb.received_powers[1], 0.4339, 1e-4);
    for (std::size_t m = 0; m < s.bs_positions.size(); ++m)
        EXPECT_NEAR(lb.distances[m],
                    brute_distance(ms.x, ms.y, s.bs_positions[m].x, s.bs_positions[m].y), 1e-14);
}

TEST(LinkBudget, CoincidentPositionIsDegenerate) {
    const Scenario s = uniform_scenario(1, 1.0, 1.0, 4.0, 1.0, 0.0);
    EXPECT_THROW(link_budget(s, s.bs_positions[3]), DegenerateGeometry);
}

TEST(LinkBudgetProperty, SortingByDistanceSortsPowersDescending) {
    const Scenario s = uniform_scenario(2, 1.0, 2.0, 3.5, 1.0, 0.0);
    std::mt19937_64 eng(42);
    std::uniform_real_distribution<double> u(-0.8, 0.8);
    for (int trial = 0; trial < 200; ++trial) {
        const LinkBudget lb = link_budget(s, {u(eng), u(eng)});
        std::vector<std::size_t> idx(lb.distances.size());
        for (std::size_t i = 0; i < idx.size(); ++i)
            idx[i] = i;
        std::sort(idx.begin(), idx.end(), [&](auto a, auto b) { return lb.distances[a] < lb.distances[b]; });
        for (std::size_t i = 1; i < idx.size(); ++i)
            EXPECT_GE(lb.received_powers[idx[i - 1]], lb.received_powers[idx[i]]);
    }
}

TEST(EdgeSnrNoise, Examples) {
    EXPECT_NEAR(edge_snr_noise(1.0, 1.0, 4.0, 30.0), 1e-3, 1e-18);
    EXPECT_NEAR(edge_snr_noise(1.0, 1.0, 4.0, 0.0), 1.0, 1e-15);
    EXPECT_NEAR(edge_snr_noise(2.0, 2.0, 4.0, 30.0), 1.25e-4, 1e-18);
    EXPECT_THROW(edge_snr_noise(1.0, 1.0, 4.0, std::nan("")), InvalidArgument);
}

TEST(Trajectory, EndPoints) {
    for (auto kind : {Trajectory::two_cell_edge, Trajectory::three_cell_corner})
        EXPECT_EQ(trajectory(kind, 0.0), (Point{0.0, 0.0}));
    const auto pos = hex_layout(1, 1.0);
    const Point edge = trajectory(Trajectory::two_cell_edge, 1.0);
    EXPECT_NEAR(distance(edge, pos[0]), std::sqrt(3.0) / 2.0, 1e-14);
    EXPECT_NEAR(distance(edge, pos[1]), std::sqrt(3.0) / 2.0, 1e-14);
    const Point corner = trajectory(Trajectory::three_cell_corner, 1.0);
    EXPECT_NEAR(distance(corner, pos[0]), 1.0, 1e-14);
    // The two nearest first-ring sites sit at distance R as well.
    std::vector<double> d;
    for (std::size_t i = 1; i < 7; ++i)
        d.push_back(distance(corner, pos[i]));
    std::sort(d.begin(), d.end());
    EXPECT_NEAR(d[0], 1.0, 1e-14);
    EXPECT_NEAR(d[1], 1.0, 1e-14);
}

TEST(Trajectory, CornerPairsInterferers) {
    const Scenario s = uniform_scenario(1, 1.0, 1.0, 4.0, 1.0, 0.0);
    const LinkBudget lb = link_budget(s, trajectory(Trajectory::three_cell_corner, 1.0));
    const auto e = lb.interferer_powers();
    for (std::size_t m = 0; m < 3; ++m)
        EXPECT_NEAR(e[m], e[5 - m], 1e-12 * e[m]);
    std::vector<double> sorted(e.begin(), e.end());
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    EXPECT_NEAR(sorted[0], 1.0, 1e-12);
    EXPECT_NEAR(sorted[2], 1.0 / 16.0, 1e-12);
    EXPECT_NEAR(sorted[4], 1.0 / 49.0, 1e-12);
}

TEST(Trajectory, RejectsOutOfRangeFraction) {
    EXPECT_THROW(trajectory(Trajectory::two_cell_edge, -0.1), InvalidArgument);
    EXPECT_THROW(trajectory(Trajectory::three_cell_corner, 1.5), InvalidArgument);
    EXPECT_THROW(parse_trajectory("diagonal"), InvalidArgument);
    EXPECT_EQ(parse_trajectory("two-cell-edge"), Trajectory::two_cell_edge);
}

TEST(Scenario, ValidateCatchesBadFields) {
    Scenario s = uniform_scenario(1, 1.0, 1.0, 4.0, 0.5, 0.0);
    EXPECT_NO_THROW(s.validate());
    s.loading_rates[2] = 1.5;
    EXPECT_THROW(s.validate(), InvalidArgument);
    s = uniform_scenario(1, 1.0, 1.0, 4.0, 0.5, 0.0);
    s.bs_positions[2] = s.bs_positions[1];
    EXPECT_THROW(s.validate(), InvalidArgument);
    s = uniform_scenario(1, 1.0, 1.0, 4.0, 0.5, 0.0);
    s.tx_powers[0] = 0.0;
    EXPECT_THROW(s.validate(), InvalidArgument);
}
