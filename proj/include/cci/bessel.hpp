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

#include "cci/errors.hpp"

namespace cci {

namespace detail {

// Ascending series, K0(x) = sum_k (x^2/4)^k / (k!)^2 * (H_k - ln(x/2) - gamma).
// Cancellation against I0 costs about one digit at x = 2.
inline double bessel_k0_series(double x) noexcept {
    const double t = 0.25 * x * x;
    const double log_term = std::log(0.5 * x) + std::numbers::egamma;
    double power = 1.0;
    double harmonic = 0.0;
    double sum = -log_term;
    for (int k = 1; k < 64; ++k) {
        power *= t / (static_cast<double>(k) * k);
        harmonic += 1.0 / k;
        const double term = power * (harmonic - log_term);
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum))
            break;
    }
    return sum;
}

// K0(x) = exp(-x) * int_0^inf exp(-2 x sinh^2(t/2)) dt. The integrand is
// analytic in a strip about the real axis, so the trapezoidal rule converges
// geometrically; the step shrinks like x^-1/2 to resolve the peak at t = 0.
inline double bessel_k0_integral_rep(double x) noexcept {
    const double h = std::min(0.25, 0.5 / std::sqrt(x));
    double sum = 0.5;
    for (int k = 1; k < 4096; ++k) {
        const double s = std::sinh(0.5 * k * h);
        const double v = std::exp(-2.0 * x * s * s);
        sum += v;
        if (v < 1e-18)
            break;
    }
    return std::exp(-x) * sum * h;
}

} // namespace detail

/// Modified Bessel function of the second kind, order zero. Underflows to 0
/// beyond x ~ 745.
inline double bessel_k0(double x) {
    if (!(x > 0.0))
        throw DomainError("bessel_k0: argument must be positive");
    if (x <= 2.0)
        return detail::bessel_k0_series(x);
    if (x > 750.0)
        return 0.0;
    return detail::bessel_k0_integral_rep(x);
}

/// int_0^a K0(t) dt. Finite for every a >= 0 although K0 is log-singular at 0.
inline double bessel_k0_integral(double a) {
    if (!(a >= 0.0))
        throw DomainError("bessel_k0_integral: upper limit must be non-negative");
    if (a == 0.0)
        return 0.0;
    const double head = std::min(a, 2.0);
    // Term-wise integration of the ascending series.
    const double log_head = std::log(head);
    double sum = 0.0;
    double coeff = 1.0; // 1 / (4^k (k!)^2)
    double harmonic = 0.0;
    double power = head; // head^(2k+1)
    for (int k = 0; k < 64; ++k) {
        if (k > 0) {
            coeff /= 4.0 * k * k;
            harmonic += 1.0 / k;
            power *= head * head;
        }
        const double odd = 2.0 * k + 1.0;
        const double c = harmonic + std::numbers::ln2 - std::numbers::egamma;
        const double term = coeff * power / odd * (c - log_head + 1.0 / odd);
        sum += term;
        if (k > 0 && std::abs(term) < 1e-17 * std::abs(sum))
            break;
    }
    if (a <= 2.0)
        return sum;
    // Smooth remainder on [2, a]: 16-point Gauss-Legendre per unit panel.
    static constexpr double nodes[8] = {0.0950125098376374, 0.2816035507792589, 0.4580167776572274,
                                        0.6178762444026438, 0.7554044083550030, 0.8656312023878318,
                                        0.9445750230732326, 0.9894009349916499};
    static constexpr double weights[8] = {0.1894506104550685, 0.1826034150449236, 0.1691565193950025,
                                          0.1495959888165767, 0.1246289712555339, 0.0951585116824928,
                                          0.0622535239386479, 0.0271524594117541};
    const double upper = std::min(a, 60.0);
    const int panels = static_cast<int>(std::ceil(upper - 2.0));
    const double width = (upper - 2.0) / panels;
    for (int p = 0; p < panels; ++p) {
        const double mid = 2.0 + (p + 0.5) * width;
        double acc = 0.0;
        for (int i = 0; i < 8; ++i)
            acc += weights[i] * (bessel_k0(mid - 0.5 * width * nodes[i]) + bessel_k0(mid + 0.5 * width * nodes[i]));
        sum += 0.5 * width * acc;
    }
    return sum;
}

} // namespace cci
