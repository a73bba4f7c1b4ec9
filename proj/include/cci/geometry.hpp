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

#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cci/errors.hpp"

namespace cci {

struct Point {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point &, const Point &) = default;
};

inline double distance(Point a, Point b) noexcept { return std::hypot(a.x - b.x, a.y - b.y); }

/// Downlink cell layout and link parameters. Index 0 of every per-BS vector is
/// the serving base station; `loading_rates` covers the M interferers only.
struct Scenario {
    double cell_radius = 1.0;
    std::vector<Point> bs_positions;
    std::vector<double> tx_powers;
    std::vector<double> pathloss_exponents;
    std::vector<double> loading_rates;
    double noise_variance = 0.0;

    std::size_t interferer_count() const noexcept { return bs_positions.empty() ? 0 : bs_positions.size() - 1; }

    void validate() const {
        if (!(cell_radius > 0.0))
            throw InvalidArgument("Scenario: cell radius must be positive.");
        if (bs_positions.empty())
            throw InvalidArgument("Scenario: at least the serving base station is required.");
        const std::size_t n = bs_positions.size();
        if (tx_powers.size() != n || pathloss_exponents.size() != n)
            throw InvalidArgument("Scenario: tx_powers and pathloss_exponents need one entry per base station.");
        if (loading_rates.size() != n - 1)
            throw InvalidArgument("Scenario: loading_rates needs one entry per interfering base station.");
        for (double p : tx_powers)
            if (!(p > 0.0))
                throw InvalidArgument("Scenario: transmit powers must be positive.");
        for (double a : pathloss_exponents)
            if (!(a > 0.0))
                throw InvalidArgument("Scenario: path loss exponents must be positive.");
        for (double p : loading_rates)
            if (!(p >= 0.0 && p <= 1.0))
                throw InvalidArgument("Scenario: loading rates must lie in [0, 1].");
        if (!(noise_variance >= 0.0))
            throw InvalidArgument("Scenario: noise variance must be non-negative.");
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (bs_positions[i] == bs_positions[j])
                    throw InvalidArgument("Scenario: base station positions must be pairwise distinct.");
    }
};

/// Per-position link budget; `received_powers[0]` is the desired-signal power E_0.
struct LinkBudget {
    Point ms_position;
    std::vector<double> distances;
    std::vector<double> path_gains;
    std::vector<double> received_powers;

    double desired_power() const { return received_powers.at(0); }

    std::span<const double> interferer_powers() const {
        return std::span<const double>(received_powers).subspan(received_powers.empty() ? 0 : 1);
    }
};

/// Hexagonal layout with inter-site distance sqrt(3) R. Position 0 is the
/// origin; ring k is listed counter-clockwise starting from angle 0.
inline std::vector<Point> hex_layout(int rings, double cell_radius) {
    if (rings < 1)
        throw InvalidArgument("hex_layout: at least one ring is required.");
    if (!(cell_radius > 0.0))
        throw InvalidArgument("hex_layout: cell radius must be positive.");

    const double isd = std::numbers::sqrt3 * cell_radius;
    std::vector<Point> out;
    out.reserve(1 + 3 * static_cast<std::size_t>(rings) * static_cast<std::size_t>(rings + 1));
    out.push_back({0.0, 0.0});

    auto corner = [isd](int ring, int j) {
        const double angle = std::numbers::pi / 3.0 * j;
        return Point{ring * isd * std::cos(angle), ring * isd * std::sin(angle)};
    };
    for (int k = 1; k <= rings; ++k) {
        for (int j = 0; j < 6; ++j) {
            const Point a = corner(k, j);
            const Point b = corner(k, j + 1);
            for (int s = 0; s < k; ++s) {
                const double t = static_cast<double>(s) / k;
                out.push_back({a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)});
            }
        }
    }
    return out;
}

inline LinkBudget link_budget(const Scenario &scenario, Point ms_position) {
    const std::size_t n = scenario.bs_positions.size();
    if (scenario.tx_powers.size() != n || scenario.pathloss_exponents.size() != n)
        throw InvalidArgument("link_budget: inconsistent scenario vector lengths.");

    LinkBudget lb;
    lb.ms_position = ms_position;
    lb.distances.resize(n);
    lb.path_gains.resize(n);
    lb.received_powers.resize(n);
    for (std::size_t m = 0; m < n; ++m) {
        const double d = distance(ms_position, scenario.bs_positions[m]);
        if (!(d > 0.0))
            throw DegenerateGeometry("link_budget: mobile station coincides with base station " + std::to_string(m) + ".");
        lb.distances[m] = d;
        lb.path_gains[m] = std::pow(d, -scenario.pathloss_exponents[m]);
        lb.received_powers[m] = scenario.tx_powers[m] * lb.path_gains[m];
    }
    return lb;
}

/// Noise variance giving the requested SNR for the serving link at distance R.
inline double edge_snr_noise(double tx_power, double cell_radius, double pathloss_exponent, double edge_snr_db) {
    if (!std::isfinite(edge_snr_db))
        throw InvalidArgument("edge_snr_noise: SNR must be finite.");
    if (!(tx_power > 0.0) || !(cell_radius > 0.0) || !(pathloss_exponent > 0.0))
        throw InvalidArgument("edge_snr_noise: power, radius and exponent must be positive.");
    return tx_power * std::pow(cell_radius, -pathloss_exponent) / std::pow(10.0, edge_snr_db / 10.0);
}

inline double edge_snr_noise(const Scenario &scenario, double edge_snr_db) {
    if (scenario.tx_powers.empty() || scenario.pathloss_exponents.empty())
        throw InvalidArgument("edge_snr_noise: scenario has no serving base station.");
    return edge_snr_noise(scenario.tx_powers[0], scenario.cell_radius, scenario.pathloss_exponents[0], edge_snr_db);
}

enum class Trajectory {
    two_cell_edge,     // towards the midpoint shared with the first-ring BS at angle 0
    three_cell_corner, // towards the hexagon vertex at angle -30 degrees
};

inline std::string_view to_string(Trajectory t) noexcept {
    return t == Trajectory::two_cell_edge ? "two-cell-edge" : "three-cell-corner";
}

inline Trajectory parse_trajectory(std::string_view s) {
    if (s == "two-cell-edge")
        return Trajectory::two_cell_edge;
    if (s == "three-cell-corner")
        return Trajectory::three_cell_corner;
    throw InvalidArgument("unknown trajectory '" + std::string(s) + "'");
}

/// Distance from the serving BS to the end point of a trajectory.
inline double trajectory_length(Trajectory kind, double cell_radius) noexcept {
    return kind == Trajectory::two_cell_edge ? std::numbers::sqrt3 / 2.0 * cell_radius : cell_radius;
}

/// MS position a given fraction of the way from the cell centre to the cell
/// edge. The three-cell corner sits on the bisector of the BSs at 0 and 300
/// degrees, so that interferers m and 7 - m of the first ring are equidistant.
inline Point trajectory(Trajectory kind, double fraction, double cell_radius = 1.0) {
    if (!(fraction >= 0.0 && fraction <= 1.0))
        throw InvalidArgument("trajectory: fraction must lie in [0, 1].");
    if (!(cell_radius > 0.0))
        throw InvalidArgument("trajectory: cell radius must be positive.");
    const double r = fraction * trajectory_length(kind, cell_radius);
    if (kind == Trajectory::two_cell_edge)
        return {r, 0.0};
    const double angle = -std::numbers::pi / 6.0;
    return {r * std::cos(angle), r * std::sin(angle)};
}

/// Homogeneous layout: equal powers, exponents and loading rates for every BS.
inline Scenario uniform_scenario(int rings, double cell_radius, double tx_power, double pathloss_exponent,
                                 double loading_rate, double noise_variance) {
    Scenario s;
    s.cell_radius = cell_radius;
    s.bs_positions = hex_layout(rings, cell_radius);
    const std::size_t n = s.bs_positions.size();
    s.tx_powers.assign(n, tx_power);
    s.pathloss_exponents.assign(n, pathloss_exponent);
    s.loading_rates.assign(n - 1, loading_rate);
    s.noise_variance = noise_variance;
    s.validate();
    return s;
}

} // namespace cci
