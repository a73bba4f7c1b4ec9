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
#include <numbers>
#include <type_traits>
#include <vector>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/ooura_fourier_integrals.hpp>

#include "cci/characteristic.hpp"
#include "cci/closed_form.hpp"
#include "cci/errors.hpp"
#include "cci/numeric_pdf.hpp"

namespace cci {

struct InversionOptions {
    /// Relative tolerance of the double-exponential Fourier quadrature used
    /// when the transform decays algebraically.
    double relative_tolerance = 1e-8;
    /// Gauss-Legendre nodes per panel when a Gaussian factor bounds the decay.
    int panel_order = 10;
    double normalization_tolerance = cci::normalization_tolerance;
};

struct InversionDiagnostics {
    double total_mass = 0.0;
    double max_relative_error_estimate = 0.0;
    double most_negative_value = 0.0;
    bool analytic_kernels = false;
};

namespace detail {

struct GaussLegendreRule {
    std::vector<double> nodes;   // on [-1, 1]
    std::vector<double> weights;
};

/// Nodes by Newton iteration on the Legendre recurrence.
inline GaussLegendreRule make_gauss_legendre(int order) {
    GaussLegendreRule rule;
    rule.nodes.resize(static_cast<std::size_t>(order));
    rule.weights.resize(static_cast<std::size_t>(order));
    for (int i = 0; i < order; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= order; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = order * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16)
                break;
        }
        rule.nodes[static_cast<std::size_t>(i)] = x;
        rule.weights[static_cast<std::size_t>(i)] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return rule;
}

inline const GaussLegendreRule &gauss_legendre_rule(int order) {
    if (order < 2 || order > 64)
        throw InvalidArgument("Gauss-Legendre order must lie in [2, 64]");
    static const std::vector<GaussLegendreRule> rules = [] {
        std::vector<GaussLegendreRule> r(65);
        for (int k = 2; k <= 64; ++k)
            r[static_cast<std::size_t>(k)] = make_gauss_legendre(k);
        return r;
    }();
    return rules[static_cast<std::size_t>(order)];
}

/// (1/pi) int_0^inf g(w) cos(w x) dw for each x = i dx, i = 0..n, with g even,
/// smooth and integrable. Uses the double-exponential transform of Ooura and
/// Mori for x > 0 and an exp-sinh rule at x = 0. A fresh quadrature object per
/// call keeps results independent of earlier calls.
template <class G>
std::vector<double> cosine_transform(const G &g, double dx, std::size_t n, const InversionOptions &opt,
                                     InversionDiagnostics &diag) {
    boost::math::quadrature::ooura_fourier_cos<double> oscillatory(opt.relative_tolerance, 8);
    boost::math::quadrature::exp_sinh<double> half_line;
    std::vector<double> out(n + 1);
    out[0] = half_line.integrate(g, opt.relative_tolerance) / std::numbers::pi;
    for (std::size_t i = 1; i <= n; ++i) {
        const auto [value, rel_err] = oscillatory.integrate(g, static_cast<double>(i) * dx);
        out[i] = value / std::numbers::pi;
        if (std::isfinite(rel_err) && std::abs(value) > 1e-12)
            diag.max_relative_error_estimate = std::max(diag.max_relative_error_estimate, rel_err);
    }
    return out;
}

/// Same transform for integrands bounded by exp(-s w^2 / 2), s > 0. The
/// half-line is cut at W with exp(-s W^2 / 2) = e^-45 and split into panels no
/// wider than half the shortest oscillation period on the grid and half the
/// integrand's own feature scale, each integrated by a fixed Gauss-Legendre
/// rule. The integrand is sampled once and shared by every grid point.
template <class G>
std::vector<double> panel_cosine_transform(const G &g, double gaussian_variance, double feature_scale, double dx,
                                           std::size_t n, const InversionOptions &opt) {
    const double cutoff = std::sqrt(90.0 / gaussian_variance);
    const double x_max = std::max(static_cast<double>(n) * dx, dx);
    const double width = std::min(std::numbers::pi / x_max, 0.5 * feature_scale);
    const auto panels = static_cast<std::size_t>(std::ceil(cutoff / width));
    const double h = cutoff / static_cast<double>(panels);

    const auto &rule = gauss_legendre_rule(opt.panel_order);
    std::vector<double> out(n + 1, 0.0);
    for (std::size_t p = 0; p < panels; ++p) {
        const double mid = (static_cast<double>(p) + 0.5) * h;
        for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
            const double w = mid + 0.5 * h * rule.nodes[k];
            const double a = 0.5 * h * rule.weights[k] * g(w) / std::numbers::pi;
            if (a == 0.0)
                continue;
            // cos(i w dx) by complex rotation, re-anchored every 64 steps.
            const double step_c = std::cos(w * dx);
            const double step_s = std::sin(w * dx);
            double c = 1.0, s = 0.0;
            for (std::size_t i = 0; i <= n; ++i) {
                if ((i & 63u) == 0 && i != 0) {
                    c = std::cos(static_cast<double>(i) * w * dx);
                    s = std::sin(static_cast<double>(i) * w * dx);
                }
                out[i] += a * c;
                const double nc = c * step_c - s * step_s;
                s = s * step_c + c * step_s;
                c = nc;
            }
        }
    }
    return out;
}

inline NumericPdf finish_inversion(double dx, std::vector<double> half, double atom, bool cell_average,
                                   const InversionOptions &opt, InversionDiagnostics &diag) {
    double peak = 0.0;
    for (double v : half)
        peak = std::max(peak, v);
    // Quadrature noise in the far tail can dip just below zero.
    for (double &v : half) {
        diag.most_negative_value = std::min(diag.most_negative_value, v);
        if (v < 0.0)
            v = 0.0;
    }
    NumericPdf pdf = NumericPdf::from_half(dx, std::move(half), atom, cell_average);
    diag.total_mass = pdf.total_mass();
    if (diag.most_negative_value < -1e-6 * std::max(peak, 1.0))
        throw InversionFailure("invert_cf: density went significantly negative", diag.total_mass,
                               diag.max_relative_error_estimate);
    if (std::abs(diag.total_mass - 1.0) > opt.normalization_tolerance)
        throw InversionFailure("invert_cf: inverted density is not normalised (grid too narrow or too coarse?)",
                               diag.total_mass, diag.max_relative_error_estimate);
    return pdf;
}

} // namespace detail

/// Density f(x) = (1/pi) int_0^inf [Psi(w) - atom] cos(w x) dw on a symmetric grid.
///
/// For interference laws without a Gaussian component the atom and the
/// single-interferer K0 terms are added in closed form and only the remainder,
/// which decays at least like w^-2, is transformed numerically. Throws
/// InversionFailure when the result misses the normalisation tolerance.
template <CharacteristicFunction Cf>
NumericPdf invert_cf(const Cf &cf, const GridSpec &grid, const InversionOptions &opt = {},
                     InversionDiagnostics *diagnostics = nullptr) {
    InversionDiagnostics diag;
    const std::size_t n = grid.half_points();
    const double dx = grid.dx;

    if constexpr (std::is_same_v<Cf, InterferenceCf>) {
        if (cf.gaussian_variance() == 0.0 && !cf.kernel_terms().empty()) {
            diag.analytic_kernels = true;
            std::vector<double> half(n + 1, 0.0);
            if (cf.powers().size() >= 2)
                half = detail::cosine_transform([&cf](double w) { return cf.remainder(w); }, dx, n, opt, diag);
            for (const KernelTerm &k : cf.kernel_terms()) {
                half[0] += k.weight * single_cci_cell_average(dx, k.power);
                for (std::size_t i = 1; i <= n; ++i)
                    half[i] += k.weight * single_cci_density(static_cast<double>(i) * dx, k.power);
            }
            NumericPdf pdf = detail::finish_inversion(dx, std::move(half), cf.atom_mass(), true, opt, diag);
            if (diagnostics)
                *diagnostics = diag;
            return pdf;
        }
    }

    if constexpr (std::is_same_v<Cf, InterferenceCf>) {
        if (cf.gaussian_variance() > 0.0) {
            double largest = cf.gaussian_variance();
            for (double e : cf.powers())
                largest = std::max(largest, e);
            auto half = detail::panel_cosine_transform(cf, cf.gaussian_variance(), 1.0 / std::sqrt(largest), dx, n, opt);
            NumericPdf pdf = detail::finish_inversion(dx, std::move(half), 0.0, false, opt, diag);
            if (diagnostics)
                *diagnostics = diag;
            return pdf;
        }
    }

    const double atom = cf.atom_mass();
    auto half = detail::cosine_transform([&cf, atom](double w) { return cf(w) - atom; }, dx, n, opt, diag);
    NumericPdf pdf = detail::finish_inversion(dx, std::move(half), atom, false, opt, diag);
    if (diagnostics)
        *diagnostics = diag;
    return pdf;
}

/// Inversion on the default grid for the law's own variance.
inline NumericPdf invert_cf(const InterferenceCf &cf, const InversionOptions &opt = {},
                            InversionDiagnostics *diagnostics = nullptr) {
    return invert_cf(cf, default_grid(cf), opt, diagnostics);
}

} // namespace cci
