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

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "cci/csv.hpp"
#include "cci/errors.hpp"

namespace cci {

inline constexpr double normalization_tolerance = 1e-3;

/// Uniform grid symmetric about zero: x_i = i * dx for |i| <= half_points.
struct GridSpec {
    double dx = 0.01;
    double half_width = 12.0;

    std::size_t half_points() const {
        if (!(dx > 0.0) || !(half_width > 0.0))
            throw InvalidArgument("GridSpec: spacing and half-width must be positive");
        return static_cast<std::size_t>(std::ceil(half_width / dx - 1e-9));
    }
};

/// Spacing of 1% and half-width of 12 standard deviations. When a Gaussian
/// component much narrower than the total is present, the spacing shrinks so
/// that component keeps at least four points per standard deviation. A lightly
/// loaded strong interferer has tails set by its own power rather than by the
/// total variance, so `largest_power` widens the grid to 12 sqrt(E_max).
inline GridSpec default_grid(double total_variance, double gaussian_variance = 0.0, double largest_power = 0.0) {
    if (!(total_variance > 0.0))
        throw InvalidArgument("default_grid: variance must be positive");
    const double sigma = std::sqrt(total_variance);
    double dx = 0.01 * sigma;
    if (gaussian_variance > 0.0)
        dx = std::min(dx, 0.25 * std::sqrt(gaussian_variance));
    return {dx, 12.0 * std::max(sigma, std::sqrt(largest_power))};
}

/// Symmetric density sampled on a uniform grid plus a point mass at zero.
///
/// For laws whose density is log-singular at zero, the value stored at x = 0
/// is the mean of the density over [-dx/2, dx/2], so grid quadrature stays
/// exact on the central cell.
class NumericPdf {
public:
    NumericPdf() = default;

    /// `half_values[i]` is the density at x = i * dx, i >= 0.
    static NumericPdf from_half(double dx, std::vector<double> half_values, double atom_mass,
                                bool cell_average_at_zero = false) {
        if (half_values.empty())
            throw InvalidArgument("NumericPdf: empty grid");
        NumericPdf pdf;
        pdf.dx_ = dx;
        pdf.atom_mass_ = atom_mass;
        pdf.cell_average_at_zero_ = cell_average_at_zero;
        pdf.half_ = half_values.size() - 1;
        pdf.values_.resize(2 * pdf.half_ + 1);
        for (std::size_t i = 0; i <= pdf.half_; ++i) {
            pdf.values_[pdf.half_ + i] = half_values[i];
            pdf.values_[pdf.half_ - i] = half_values[i];
        }
        return pdf;
    }

    double dx() const noexcept { return dx_; }
    double atom_mass() const noexcept { return atom_mass_; }
    bool cell_average_at_zero() const noexcept { return cell_average_at_zero_; }
    std::size_t size() const noexcept { return values_.size(); }
    std::size_t half_points() const noexcept { return half_; }
    double half_width() const noexcept { return dx_ * static_cast<double>(half_); }
    double x(std::size_t i) const noexcept { return (static_cast<double>(i) - static_cast<double>(half_)) * dx_; }
    const std::vector<double> &values() const noexcept { return values_; }
    double operator[](std::size_t i) const { return values_[i]; }

    double continuous_mass() const { return integrate([](double, double f) { return f; }); }
    double total_mass() const { return continuous_mass() + atom_mass_; }

    /// Second moment; the atom at zero contributes nothing.
    double variance() const { return integrate([](double x, double f) { return x * x * f; }); }

    /// Linear interpolation between grid points, zero outside the grid.
    double value_at(double x) const {
        const double u = std::abs(x) / dx_;
        const auto i = static_cast<std::size_t>(u);
        if (i >= half_)
            return i == half_ && u == static_cast<double>(half_) ? values_.back() : 0.0;
        const double t = u - static_cast<double>(i);
        return (1.0 - t) * values_[half_ + i] + t * values_[half_ + i + 1];
    }

    /// -int f ln f on the grid. Only defined without an atom.
    double differential_entropy() const {
        if (atom_mass_ > 0.0)
            throw DomainError("differential entropy is undefined for a law with a point mass");
        return integrate([](double, double f) { return f > 0.0 ? -f * std::log(f) : 0.0; });
    }

    template <class F>
    double integrate(F &&fn) const {
        double sum = 0.0;
        for (std::size_t i = 0; i < values_.size(); ++i) {
            const double w = (i == 0 || i + 1 == values_.size()) ? 0.5 : 1.0;
            sum += w * fn(x(i), values_[i]);
        }
        return sum * dx_;
    }

    bool is_normalized(double tol = normalization_tolerance) const { return std::abs(total_mass() - 1.0) <= tol; }

    /// "# numeric_pdf ..." metadata line, then x,density rows.
    void write_csv(std::ostream &out) const {
        csv::write_meta(out, {{"numeric_pdf", "1"},
                              {"atom_mass", csv::number(atom_mass_)},
                              {"dx", csv::number(dx_)},
                              {"half_width", csv::number(half_width())},
                              {"points", std::to_string(values_.size())},
                              {"cell_average_at_zero", cell_average_at_zero_ ? "1" : "0"}});
        out << "x,density\n";
        for (std::size_t i = 0; i < values_.size(); ++i)
            out << csv::number(x(i)) << ',' << csv::number(values_[i]) << '\n';
    }

    static NumericPdf read_csv(std::istream &in) {
        std::string line;
        double atom = 0.0;
        bool cell_avg = false;
        std::vector<double> xs, fs;
        while (std::getline(in, line)) {
            if (line.empty())
                continue;
            if (line[0] == '#') {
                std::istringstream ss(line.substr(1));
                std::string item;
                while (ss >> item) {
                    const auto eq = item.find('=');
                    if (eq == std::string::npos)
                        continue;
                    const auto key = item.substr(0, eq);
                    const auto value = item.substr(eq + 1);
                    if (key == "atom_mass")
                        atom = csv::parse_number(value);
                    else if (key == "cell_average_at_zero")
                        cell_avg = value == "1";
                }
                continue;
            }
            if (line.rfind("x,", 0) == 0)
                continue;
            const auto comma = line.find(',');
            if (comma == std::string::npos)
                throw InvalidArgument("NumericPdf::read_csv: malformed row '" + line + "'");
            xs.push_back(csv::parse_number(std::string_view(line).substr(0, comma)));
            fs.push_back(csv::parse_number(std::string_view(line).substr(comma + 1)));
        }
        if (xs.size() < 3 || xs.size() % 2 == 0)
            throw InvalidArgument("NumericPdf::read_csv: expected an odd number of symmetric grid points");
        const std::size_t half = xs.size() / 2;
        std::vector<double> half_values(fs.begin() + static_cast<std::ptrdiff_t>(half), fs.end());
        return from_half(xs[half + 1] - xs[half], std::move(half_values), atom, cell_avg);
    }

private:
    double dx_ = 0.0;
    double atom_mass_ = 0.0;
    bool cell_average_at_zero_ = false;
    std::size_t half_ = 0;
    std::vector<double> values_;
};

/// Evaluates an even density at x = i * dx, i = 0..n.
template <class F>
std::vector<double> sample_half_grid(const GridSpec &grid, F &&density) {
    const std::size_t n = grid.half_points();
    std::vector<double> out(n + 1);
    for (std::size_t i = 0; i <= n; ++i)
        out[i] = density(static_cast<double>(i) * grid.dx);
    return out;
}

} // namespace cci
