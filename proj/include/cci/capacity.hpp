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
#include <cstdint>
#include <numbers>
#include <random>
#include <span>
#include <vector>

#include "cci/characteristic.hpp"
#include "cci/errors.hpp"
#include "cci/geometry.hpp"
#include "cci/inversion.hpp"
#include "cci/montecarlo.hpp"
#include "cci/numeric_pdf.hpp"
#include "cci/random.hpp"

namespace cci {

/// Monte Carlo (or deterministic) estimate with its standard error.
struct Estimate {
    double value = 0.0;
    double std_error = 0.0;
};

inline constexpr std::size_t min_mc_draws = 10'000;

namespace detail {

inline double half_log2_1p(double snr) { return 0.5 * std::log1p(snr) / std::numbers::ln2; }

inline double mean_interference(std::span<const double> powers, std::span<const double> loading) {
    double v = 0.0;
    for (std::size_t m = 0; m < powers.size(); ++m)
        v += loading[m] * powers[m];
    return v;
}

inline void check_inputs(const LinkBudget &budget, std::span<const double> loading, double noise_variance) {
    if (budget.received_powers.empty())
        throw InvalidArgument("capacity: link budget has no serving base station");
    if (budget.interferer_powers().size() != loading.size())
        throw InvalidArgument("capacity: loading vector length does not match the interferer count");
    if (!(noise_variance >= 0.0))
        throw InvalidArgument("capacity: noise variance must be non-negative");
}

inline Estimate mean_and_error(const std::vector<double> &values) {
    double s = 0.0;
    for (double v : values)
        s += v;
    const double n = static_cast<double>(values.size());
    const double mean = s / n;
    double ss = 0.0;
    for (double v : values)
        ss += (v - mean) * (v - mean);
    return {mean, std::sqrt(ss / (n - 1.0) / n)};
}

} // namespace detail

/// Nodes and weights for E[F(H)] with H standard normal and F even.
///
/// Substituting |h| = e^u turns the half-line integral into one over the real
/// line whose integrand is analytic in a strip and decays at both ends, so the
/// plain trapezoidal rule converges geometrically in 1/step. Fixed-order
/// Gauss-Hermite rules lose accuracy badly once F(h) = log(1 + c h^2) has
/// large c, which is the regime of every cell-centre position.
struct FadingQuadrature {
    std::vector<double> nodes;   // |h0| values
    std::vector<double> weights; // sum to ~1

    /// `snr_scale` bounds c in F ~ log(1 + c h^2); it sets how far towards
    /// h0 = 0 the nodes must reach.
    static FadingQuadrature make(double snr_scale, double step = 0.25) {
        FadingQuadrature q;
        const double u_max = 2.6;
        const double u_min = -0.5 * std::log(std::max(snr_scale, 1.0)) - 8.0;
        const double norm = 2.0 / std::sqrt(2.0 * std::numbers::pi);
        for (double u = u_max; u >= u_min; u -= step) {
            const double h = std::exp(u);
            q.nodes.push_back(h);
            q.weights.push_back(step * norm * std::exp(-0.5 * h * h) * h);
        }
        return q;
    }

    template <class F>
    double expectation(F &&fn) const {
        double s = 0.0;
        for (std::size_t k = 0; k < nodes.size(); ++k)
            s += weights[k] * fn(nodes[k]);
        return s;
    }
};

/// Rate with full CSI of the desired and interfering links:
/// E[1/2 log2(1 + E0 H0^2 / (sum_m Phi_m E_m H_m^2 + noise))].
inline Estimate i_csi(const LinkBudget &budget, std::span<const double> loading, double noise_variance,
                      std::size_t draws, std::uint64_t seed, unsigned workers = 1) {
    detail::check_inputs(budget, loading, noise_variance);
    if (draws < min_mc_draws)
        throw InvalidArgument("i_csi: at least 10^4 Monte Carlo draws are required");
    const double e0 = budget.desired_power();
    if (e0 == 0.0)
        return {0.0, 0.0};
    const auto powers = budget.interferer_powers();
    std::vector<double> values(draws);
    for_each_chunk(chunk_count(draws), workers, [&](std::size_t c) {
        // Separate streams keep the H0 sequence identical whatever the interferers.
        Engine desired(derive_seed(seed, 10, c));
        Engine interf(derive_seed(seed, 11, c));
        std::normal_distribution<double> normal_d, normal_i;
        std::uniform_real_distribution<double> unit;
        const std::size_t begin = c * chunk_size;
        const std::size_t end = std::min(draws, begin + chunk_size);
        for (std::size_t i = begin; i < end; ++i) {
            const double h0 = normal_d(desired);
            double denom = noise_variance;
            for (std::size_t m = 0; m < powers.size(); ++m) {
                const bool active = unit(interf) < loading[m];
                const double h = normal_i(interf);
                if (active)
                    denom += powers[m] * h * h;
            }
            const double num = e0 * h0 * h0;
            values[i] = denom > 0.0 ? detail::half_log2_1p(num / denom) : (num > 0.0 ? HUGE_VAL : 0.0);
        }
    });
    return detail::mean_and_error(values);
}

enum class ExpectationMethod { quadrature, monte_carlo };

/// Rate under the Gaussian-interference assumption:
/// E_H0[1/2 log2(1 + E0 H0^2 / (sum_m p_m E_m + noise))].
inline Estimate i_ga(const LinkBudget &budget, std::span<const double> loading, double noise_variance,
                     ExpectationMethod method = ExpectationMethod::quadrature, std::size_t draws = 100'000,
                     std::uint64_t seed = 1) {
    detail::check_inputs(budget, loading, noise_variance);
    const double e0 = budget.desired_power();
    if (e0 == 0.0)
        return {0.0, 0.0};
    const double denom = detail::mean_interference(budget.interferer_powers(), loading) + noise_variance;
    if (!(denom > 0.0))
        throw DomainError("i_ga: no interference and no noise, the rate is unbounded");
    const double c = e0 / denom;
    if (method == ExpectationMethod::quadrature) {
        const auto q = FadingQuadrature::make(c);
        return {q.expectation([c](double h) { return detail::half_log2_1p(c * h * h); }), 0.0};
    }
    if (draws < min_mc_draws)
        throw InvalidArgument("i_ga: at least 10^4 Monte Carlo draws are required");
    std::vector<double> values(draws);
    for_each_chunk(chunk_count(draws), 1, [&](std::size_t k) {
        Engine desired(derive_seed(seed, 10, k));
        std::normal_distribution<double> normal;
        const std::size_t begin = k * chunk_size;
        const std::size_t end = std::min(draws, begin + chunk_size);
        for (std::size_t i = begin; i < end; ++i) {
            const double h0 = normal(desired);
            values[i] = detail::half_log2_1p(c * h0 * h0);
        }
    });
    return detail::mean_and_error(values);
}

struct IpSettings {
    InversionOptions inversion;
    /// Step of the log-substituted fading quadrature.
    double fading_step = 0.25;
    /// Multiplies the default grid spacing.
    double grid_scale = 1.0;
    /// Half-width of the density grids in units of max(sigma, sqrt(E_max)).
    double grid_sigmas = 12.0;
    /// Repeat at half the grid spacing and report the change.
    bool refine = true;
};

struct IpResult {
    double value = 0.0;
    /// |value(dx / 2) - value(dx)|, zero when refinement is off.
    double refinement_delta = 0.0;
    std::size_t fading_nodes = 0;
};

namespace detail {

inline GridSpec capacity_grid(const InterferenceCf &cf, const IpSettings &s, double scale) {
    GridSpec g = default_grid(cf);
    g.dx *= s.grid_scale * scale;
    g.half_width *= s.grid_sigmas / 12.0;
    return g;
}

/// h(Y | h0) - h(Z) in nats for each fading node, together with the densities.
struct ConditionalLaws {
    FadingQuadrature fading;
    NumericPdf noise_law;              // f_Z
    std::vector<NumericPdf> received;  // f_{Y|h0} per node
    std::vector<double> information;   // nats per node
};

inline ConditionalLaws conditional_laws(const LinkBudget &budget, std::span<const double> loading,
                                        double noise_variance, const IpSettings &s, double grid_factor,
                                        bool keep_densities) {
    const auto powers = budget.interferer_powers();
    const double e0 = budget.desired_power();
    ConditionalLaws out;
    // J(h0) <= 1/2 log(1 + E0 h0^2 / noise), so E0 / noise bounds the scale.
    out.fading = FadingQuadrature::make(e0 / noise_variance, s.fading_step);
    const InterferenceCf z_cf(powers, loading, noise_variance);
    NumericPdf z = invert_cf(z_cf, capacity_grid(z_cf, s, grid_factor), s.inversion);
    const double hz = z.differential_entropy();
    out.information.reserve(out.fading.nodes.size());
    for (double h0 : out.fading.nodes) {
        const InterferenceCf y_cf(powers, loading, noise_variance + e0 * h0 * h0);
        NumericPdf y = invert_cf(y_cf, capacity_grid(y_cf, s, grid_factor), s.inversion);
        out.information.push_back(y.differential_entropy() - hz);
        if (keep_densities)
            out.received.push_back(std::move(y));
    }
    if (keep_densities)
        out.noise_law = std::move(z);
    return out;
}

inline double integrate_information(const ConditionalLaws &laws) {
    double s = 0.0;
    for (std::size_t k = 0; k < laws.information.size(); ++k)
        s += laws.fading.weights[k] * laws.information[k];
    return std::max(0.0, s / std::numbers::ln2);
}

} // namespace detail

/// Mutual information I(X0; Y | E0, H0) under the exact interference law,
/// E_H0[h(Y | H0)] - h(Z), in bits per real channel use. Each conditional
/// entropy comes from a numerically inverted density on its own grid.
inline IpResult i_p(const LinkBudget &budget, std::span<const double> loading, double noise_variance,
                    const IpSettings &settings = {}) {
    detail::check_inputs(budget, loading, noise_variance);
    if (!(noise_variance > 0.0))
        throw InvalidArgument("i_p: thermal noise variance must be positive");
    IpResult r;
    if (budget.desired_power() == 0.0)
        return r;
    const auto coarse = detail::conditional_laws(budget, loading, noise_variance, settings, 1.0, false);
    r.fading_nodes = coarse.fading.nodes.size();
    r.value = detail::integrate_information(coarse);
    if (settings.refine) {
        const auto fine = detail::conditional_laws(budget, loading, noise_variance, settings, 0.5, false);
        const double v = detail::integrate_information(fine);
        r.refinement_delta = std::abs(v - r.value);
        r.value = v;
    }
    return r;
}

/// Independent check of i_p: the same fading nodes, but each inner
/// expectation E[ln f_Z(Z) - ln f_{Y|h0}(Y)] is estimated by scoring sampled
/// Z and Y = Z + sqrt(E0) h0 X0 against the inverted densities.
inline Estimate i_p_monte_carlo(const LinkBudget &budget, std::span<const double> loading, double noise_variance,
                                std::size_t samples_per_node, std::uint64_t seed, IpSettings settings = {}) {
    detail::check_inputs(budget, loading, noise_variance);
    if (!(noise_variance > 0.0))
        throw InvalidArgument("i_p_monte_carlo: thermal noise variance must be positive");
    if (samples_per_node < 1000)
        throw InvalidArgument("i_p_monte_carlo: at least 1000 samples per node are required");
    const double e0 = budget.desired_power();
    if (e0 == 0.0)
        return {0.0, 0.0};
    // Wide grids so that sampled tails stay inside the tabulated range.
    settings.grid_sigmas = std::max(settings.grid_sigmas, 24.0);
    const auto laws = detail::conditional_laws(budget, loading, noise_variance, settings, 1.0, true);

    double value = 0.0;
    double variance = 0.0;
    for (std::size_t k = 0; k < laws.fading.nodes.size(); ++k) {
        const double amp = std::sqrt(e0) * laws.fading.nodes[k];
        const SampleBatch z = sample(budget, loading, noise_variance, SignalTag::Z, samples_per_node,
                                     derive_seed(seed, 20, k));
        Engine eng(derive_seed(seed, 21, k));
        std::normal_distribution<double> normal;
        std::vector<double> scores(samples_per_node);
        for (std::size_t i = 0; i < samples_per_node; ++i) {
            const double zi = z.values[i];
            const double yi = zi + amp * normal(eng);
            const double fz = laws.noise_law.value_at(zi);
            const double fy = laws.received[k].value_at(yi);
            scores[i] = (fz > 0.0 && fy > 0.0) ? std::log(fz) - std::log(fy) : 0.0;
        }
        const Estimate e = detail::mean_and_error(scores);
        value += laws.fading.weights[k] * e.value;
        variance += laws.fading.weights[k] * laws.fading.weights[k] * e.std_error * e.std_error;
    }
    return {value / std::numbers::ln2, std::sqrt(variance) / std::numbers::ln2};
}

struct DiffFactors {
    double csi_pct = 0.0;
    double ga_pct = 0.0;
};

/// Relative gaps |I_p - I_CSI| / I_p and |I_p - I_GA| / I_p in percent.
inline DiffFactors diff_factors(double ip, double icsi, double iga) {
    if (!(ip > 0.0))
        throw UndefinedRatio("diff_factors: I_p must be positive");
    return {std::abs(ip - icsi) / ip * 100.0, std::abs(ip - iga) / ip * 100.0};
}

struct CapacityReport {
    double d_over_r = 0.0;
    double loading = 0.0;
    double i_csi = 0.0;
    double i_ga = 0.0;
    double i_p = 0.0;
    double d_csi_pct = 0.0;
    double d_ga_pct = 0.0;
    double i_csi_stderr = 0.0;
    double i_ga_stderr = 0.0;
    double i_p_delta = 0.0;
};

struct CapacitySettings {
    std::size_t mc_draws = 100'000;
    std::uint64_t seed = 1;
    ExpectationMethod ga_method = ExpectationMethod::quadrature;
    IpSettings ip;
    unsigned workers = 1;
};

inline CapacityReport evaluate_capacity(const LinkBudget &budget, std::span<const double> loading,
                                        double noise_variance, const CapacitySettings &s) {
    CapacityReport r;
    const Estimate csi = i_csi(budget, loading, noise_variance, s.mc_draws, s.seed, s.workers);
    const Estimate ga = i_ga(budget, loading, noise_variance, s.ga_method, s.mc_draws, s.seed);
    const IpResult ip = i_p(budget, loading, noise_variance, s.ip);
    r.i_csi = csi.value;
    r.i_csi_stderr = csi.std_error;
    r.i_ga = ga.value;
    r.i_ga_stderr = ga.std_error;
    r.i_p = ip.value;
    r.i_p_delta = ip.refinement_delta;
    if (ip.value > 0.0) {
        const DiffFactors d = diff_factors(ip.value, csi.value, ga.value);
        r.d_csi_pct = d.csi_pct;
        r.d_ga_pct = d.ga_pct;
    }
    return r;
}

} // namespace cci
