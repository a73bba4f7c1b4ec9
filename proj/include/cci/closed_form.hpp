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
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "cci/bessel.hpp"
#include "cci/errors.hpp"
#include "cci/numeric_pdf.hpp"

namespace cci {

// ---------------------------------------------------------------------------
// Pointwise closed forms, all for full loading.
// ---------------------------------------------------------------------------

/// Density of sqrt(E) H X with H, X independent standard normals.
inline double single_cci_density(double x, double power) {
    const double s = std::sqrt(power);
    if (x == 0.0)
        return std::numeric_limits<double>::infinity();
    return bessel_k0(std::abs(x) / s) / (std::numbers::pi * s);
}

/// Mean of single_cci_density over [-dx/2, dx/2].
inline double single_cci_cell_average(double dx, double power) {
    const double s = std::sqrt(power);
    return 2.0 / dx * bessel_k0_integral(0.5 * dx / s) / std::numbers::pi;
}

/// Inverse transform of (1 + E w^2)^-n, n >= 1: the law of a sum of 2n equal-power
/// interferers at full loading.
inline double equal_power_density(int n, double x, double power) {
    if (n < 1)
        throw InvalidArgument("equal_power_density: order must be at least 1");
    const double s = std::sqrt(power);
    const double y = std::abs(x) / s;
    // (2n-k-2)! / (k! (n-k-1)!) * (2y)^k, accumulated in floating point.
    double sum = 0.0;
    for (int k = 0; k < n; ++k) {
        const double c = std::tgamma(2.0 * n - k - 1) / (std::tgamma(k + 1.0) * std::tgamma(static_cast<double>(n - k)));
        sum += c * std::pow(2.0 * y, k);
    }
    const double norm = std::pow(2.0, 2 * n - 1) * std::tgamma(static_cast<double>(n)) * s;
    return std::exp(-y) * sum / norm;
}

/// Laplace density with variance 2E, i.e. equal_power_density(1, x, E).
inline double laplace_kernel(double x, double power) {
    const double s = std::sqrt(power);
    return std::exp(-std::abs(x) / s) / (2.0 * s);
}

/// Partial-fraction weights of 1 / prod_m (1 + E_m w^2); they sum to one.
inline std::array<double, 3> three_pair_coefficients(double e1, double e2, double e3) {
    return {e1 * e1 / ((e1 - e2) * (e1 - e3)), e2 * e2 / ((e2 - e1) * (e2 - e3)), e3 * e3 / ((e3 - e1) * (e3 - e2))};
}

/// Relative power gap below which two pair powers are treated as equal.
inline constexpr double merge_gap = 1e-4;

enum class ThreePairForm {
    distinct,    // three Laplace kernels
    two_merged,  // a repeated pole plus one distinct pole
    all_merged,  // the six-equal-power form
};

struct ThreePairLaw {
    ThreePairForm form = ThreePairForm::distinct;
    std::array<double, 3> powers{};       // cluster powers, descending; unused slots 0
    std::array<double, 3> coefficients{}; // weights of the basis functions below

    /// distinct: sum_m c_m L(E_m); two_merged: c0 L(E) + c1 f2(E) + c2 L(E3);
    /// all_merged: f3(E).
    double operator()(double x) const {
        switch (form) {
        case ThreePairForm::distinct:
            return coefficients[0] * laplace_kernel(x, powers[0]) + coefficients[1] * laplace_kernel(x, powers[1]) +
                   coefficients[2] * laplace_kernel(x, powers[2]);
        case ThreePairForm::two_merged:
            return coefficients[0] * laplace_kernel(x, powers[0]) +
                   coefficients[1] * equal_power_density(2, x, powers[0]) +
                   coefficients[2] * laplace_kernel(x, powers[1]);
        case ThreePairForm::all_merged:
            return equal_power_density(3, x, powers[0]);
        }
        return 0.0;
    }

    double coefficient_sum() const {
        return form == ThreePairForm::all_merged ? 1.0 : coefficients[0] + coefficients[1] + coefficients[2];
    }
};

/// Law of I = sum of six full-load interferers with powers pairwise equal
/// (E1, E1, E2, E2, E3, E3). Powers closer than `merge_gap` (relative) are
/// replaced by their mean, which is second-order accurate in the gap.
inline ThreePairLaw three_pair_law(double e1, double e2, double e3) {
    if (!(e1 > 0.0 && e2 > 0.0 && e3 > 0.0))
        throw InvalidArgument("three_pair_law: powers must be positive");
    std::array<double, 3> e{e1, e2, e3};
    std::sort(e.begin(), e.end(), std::greater<>());
    auto close = [](double a, double b) { return std::abs(a - b) < merge_gap * std::max(a, b); };

    ThreePairLaw law;
    const bool c01 = close(e[0], e[1]);
    const bool c12 = close(e[1], e[2]);
    if (c01 && c12) {
        law.form = ThreePairForm::all_merged;
        law.powers = {(e[0] + e[1] + e[2]) / 3.0, 0.0, 0.0};
        law.coefficients = {1.0, 0.0, 0.0};
        return law;
    }
    if (c01 || c12) {
        const double merged = c01 ? 0.5 * (e[0] + e[1]) : 0.5 * (e[1] + e[2]);
        const double other = c01 ? e[2] : e[0];
        // 1/((1+E s)^2 (1+E3 s)) = A/(1+E s) + B/(1+E s)^2 + C/(1+E3 s)
        const double diff = other - merged;
        law.form = ThreePairForm::two_merged;
        law.powers = {merged, other, 0.0};
        law.coefficients = {-merged * other / (diff * diff), -merged / diff, other * other / (diff * diff)};
        return law;
    }
    law.form = ThreePairForm::distinct;
    law.powers = e;
    law.coefficients = three_pair_coefficients(e[0], e[1], e[2]);
    return law;
}

inline double three_pair_density(double x, double e1, double e2, double e3) { return three_pair_law(e1, e2, e3)(x); }

// ---------------------------------------------------------------------------
// Grid-sampled closed forms.
// ---------------------------------------------------------------------------

/// Single interferer with loading p: continuous part p K0(|x|/sqrt(E))/(pi sqrt(E))
/// and an atom 1 - p.
inline NumericPdf pdf_single_cci(double power, double loading, const GridSpec &grid) {
    if (!(power > 0.0))
        throw InvalidArgument("pdf_single_cci: power must be positive");
    if (!(loading >= 0.0 && loading <= 1.0))
        throw InvalidArgument("pdf_single_cci: loading must lie in [0, 1]");
    auto half = sample_half_grid(grid, [&](double x) {
        return x == 0.0 ? loading * single_cci_cell_average(grid.dx, power) : loading * single_cci_density(x, power);
    });
    return NumericPdf::from_half(grid.dx, std::move(half), 1.0 - loading, true);
}

inline NumericPdf pdf_single_cci(double power, double loading) {
    return pdf_single_cci(power, loading, default_grid(std::max(loading, 1e-3) * power, 0.0, power));
}

/// M equal-power interferers at full loading, M in {1, 2, 4, 6}.
inline NumericPdf pdf_equal_power(int interferers, double power, const GridSpec &grid) {
    if (!(power > 0.0))
        throw InvalidArgument("pdf_equal_power: power must be positive");
    switch (interferers) {
    case 1:
        return pdf_single_cci(power, 1.0, grid);
    case 2:
    case 4:
    case 6: {
        const int n = interferers / 2;
        auto half = sample_half_grid(grid, [&](double x) { return equal_power_density(n, x, power); });
        return NumericPdf::from_half(grid.dx, std::move(half), 0.0);
    }
    default:
        throw InvalidArgument("pdf_equal_power: closed form available for M = 1, 2, 4, 6 only (got " +
                              std::to_string(interferers) + "); use invert_cf");
    }
}

inline NumericPdf pdf_equal_power(int interferers, double power) {
    return pdf_equal_power(interferers, power, default_grid(interferers * power));
}

inline NumericPdf pdf_three_pair(double e1, double e2, double e3, const GridSpec &grid) {
    const ThreePairLaw law = three_pair_law(e1, e2, e3);
    auto half = sample_half_grid(grid, law);
    return NumericPdf::from_half(grid.dx, std::move(half), 0.0);
}

inline NumericPdf pdf_three_pair(double e1, double e2, double e3) {
    return pdf_three_pair(e1, e2, e3, default_grid(2.0 * (e1 + e2 + e3)));
}

} // namespace cci
