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
#include <limits>
#include <numbers>
#include <ostream>
#include <random>
#include <span>
#include <string_view>
#include <vector>

#include "cci/csv.hpp"
#include "cci/errors.hpp"
#include "cci/geometry.hpp"
#include "cci/numeric_pdf.hpp"
#include "cci/random.hpp"

namespace cci {

/// Which part of the received signal a batch holds: interference only,
/// interference plus noise, or the full received signal.
enum class SignalTag : std::uint8_t { I = 0, Z = 1, Y = 2 };

inline std::string_view to_string(SignalTag t) noexcept {
    switch (t) {
    case SignalTag::I:
        return "I";
    case SignalTag::Z:
        return "Z";
    case SignalTag::Y:
        return "Y";
    }
    return "?";
}

struct SampleBatch {
    std::vector<double> values;
    std::uint64_t seed = 0;
    SignalTag tag = SignalTag::I;

    std::size_t count() const noexcept { return values.size(); }

    double mean() const {
        double s = 0.0;
        for (double v : values)
            s += v;
        return values.empty() ? 0.0 : s / static_cast<double>(values.size());
    }

    /// Unbiased sample variance.
    double variance() const {
        if (values.size() < 2)
            return 0.0;
        const double m = mean();
        double s = 0.0;
        for (double v : values)
            s += (v - m) * (v - m);
        return s / static_cast<double>(values.size() - 1);
    }
};

/// Draws n realisations of I = sum_m Phi_m sqrt(E_m) H_m X_m, optionally
/// adding N ~ N(0, noise) (tag Z) and S = sqrt(E_0) H_0 X_0 (tag Y).
inline SampleBatch sample(const LinkBudget &budget, std::span<const double> loading, double noise_variance,
                          SignalTag tag, std::size_t n, std::uint64_t seed, unsigned workers = 1) {
    const auto powers = budget.interferer_powers();
    if (powers.size() != loading.size())
        throw InvalidArgument("sample: loading vector length does not match the interferer count");
    if (n == 0)
        throw InvalidArgument("sample: sample count must be positive");
    if (!(noise_variance >= 0.0))
        throw InvalidArgument("sample: noise variance must be non-negative");

    std::vector<double> amplitude(powers.size());
    for (std::size_t m = 0; m < powers.size(); ++m)
        amplitude[m] = std::sqrt(powers[m]);
    const double noise_sd = std::sqrt(noise_variance);
    const double desired_amp = tag == SignalTag::Y ? std::sqrt(budget.desired_power()) : 0.0;

    SampleBatch batch;
    batch.seed = seed;
    batch.tag = tag;
    batch.values.resize(n);
    const std::uint64_t stream = static_cast<std::uint64_t>(tag);
    for_each_chunk(chunk_count(n), workers, [&](std::size_t c) {
        Engine eng(derive_seed(seed, stream, c));
        std::normal_distribution<double> normal;
        std::uniform_real_distribution<double> unit;
        const std::size_t begin = c * chunk_size;
        const std::size_t end = std::min(n, begin + chunk_size);
        for (std::size_t i = begin; i < end; ++i) {
            double v = 0.0;
            for (std::size_t m = 0; m < amplitude.size(); ++m) {
                const bool active = unit(eng) < loading[m];
                const double h = normal(eng);
                const double x = normal(eng);
                if (active)
                    v += amplitude[m] * h * x;
            }
            if (tag != SignalTag::I)
                v += noise_sd * normal(eng);
            if (tag == SignalTag::Y) {
                const double h0 = normal(eng);
                const double x0 = normal(eng);
                v += desired_amp * h0 * x0;
            }
            batch.values[i] = v;
        }
    });
    return batch;
}

inline SampleBatch sample(const Scenario &scenario, Point ms_position, SignalTag tag, std::size_t n,
                          std::uint64_t seed, unsigned workers = 1) {
    return sample(link_budget(scenario, ms_position), scenario.loading_rates, scenario.noise_variance, tag, n, seed,
                  workers);
}

/// Uniform bins on [lo, hi].
struct BinGrid {
    double lo = -1.0;
    double hi = 1.0;
    std::size_t bins = 401;

    double width() const noexcept { return (hi - lo) / static_cast<double>(bins); }
    double edge(std::size_t i) const noexcept { return lo + static_cast<double>(i) * width(); }
    double center(std::size_t i) const noexcept { return lo + (static_cast<double>(i) + 0.5) * width(); }

    /// Index of the bin holding x; out-of-range values land in the end bins.
    std::size_t index(double x) const noexcept {
        if (!(x >= lo))
            return 0;
        const auto i = static_cast<std::size_t>((x - lo) / width());
        return std::min(i, bins - 1);
    }

    static BinGrid symmetric(double half_width, std::size_t bins) { return {-half_width, half_width, bins}; }
};

/// Default KL/histogram bins: 401 over +-8 standard deviations.
inline BinGrid default_bins(double variance, std::size_t bins = 401, double sigmas = 8.0) {
    if (!(variance > 0.0))
        throw InvalidArgument("default_bins: variance must be positive");
    return BinGrid::symmetric(sigmas * std::sqrt(variance), bins);
}

struct EmpiricalPdf {
    BinGrid grid;
    std::vector<double> probabilities;
    std::size_t sample_count = 0;
    std::size_t underflow = 0; // samples below lo, counted in the first bin
    std::size_t overflow = 0;  // samples above hi, counted in the last bin

    double density(std::size_t i) const { return probabilities[i] / grid.width(); }

    void write_csv(std::ostream &out) const {
        csv::write_meta(out, {{"empirical_pdf", "1"},
                              {"atom_mass", "0"},
                              {"dx", csv::number(grid.width())},
                              {"lo", csv::number(grid.lo)},
                              {"hi", csv::number(grid.hi)},
                              {"samples", std::to_string(sample_count)},
                              {"underflow", std::to_string(underflow)},
                              {"overflow", std::to_string(overflow)}});
        out << "x,density\n";
        for (std::size_t i = 0; i < probabilities.size(); ++i)
            out << csv::number(grid.center(i)) << ',' << csv::number(density(i)) << '\n';
    }
};

inline EmpiricalPdf empirical_pdf(const SampleBatch &batch, const BinGrid &grid) {
    if (batch.values.empty())
        throw InvalidArgument("empirical_pdf: empty batch");
    if (grid.bins < 10)
        throw InvalidArgument("empirical_pdf: at least 10 bins are required");
    if (!(grid.hi > grid.lo))
        throw InvalidArgument("empirical_pdf: empty range");
    EmpiricalPdf out;
    out.grid = grid;
    out.sample_count = batch.values.size();
    std::vector<std::size_t> counts(grid.bins, 0);
    for (double v : batch.values) {
        if (v < grid.lo)
            ++out.underflow;
        else if (v > grid.hi)
            ++out.overflow;
        ++counts[grid.index(v)];
    }
    out.probabilities.resize(grid.bins);
    const double inv = 1.0 / static_cast<double>(batch.values.size());
    for (std::size_t i = 0; i < grid.bins; ++i)
        out.probabilities[i] = static_cast<double>(counts[i]) * inv;
    return out;
}

inline EmpiricalPdf empirical_pdf(const SampleBatch &batch, std::size_t bins, double lo, double hi) {
    return empirical_pdf(batch, BinGrid{lo, hi, bins});
}

// ---------------------------------------------------------------------------
// Discretised laws and Kullback-Leibler distance.
// ---------------------------------------------------------------------------

/// Bin masses of a law given by its CDF; tail mass goes to the end bins.
template <class Cdf>
std::vector<double> discretize_cdf(Cdf &&cdf, const BinGrid &grid) {
    std::vector<double> p(grid.bins);
    double prev = 0.0;
    for (std::size_t i = 0; i < grid.bins; ++i) {
        const double next = i + 1 == grid.bins ? 1.0 : cdf(grid.edge(i + 1));
        p[i] = std::max(0.0, next - prev);
        prev = next;
    }
    return p;
}

inline double normal_cdf(double x, double variance) {
    return 0.5 * std::erfc(-x / std::sqrt(2.0 * variance));
}

inline std::vector<double> discretize_gaussian(double variance, const BinGrid &grid) {
    return discretize_cdf([variance](double x) { return normal_cdf(x, variance); }, grid);
}

/// Bin masses of a NumericPdf: the piecewise-linear density integrated over
/// each bin, the atom added to the bin holding zero, renormalised to one.
/// With `with_atom` false the continuous part alone is integrated, without
/// renormalisation.
inline std::vector<double> discretize(const NumericPdf &pdf, const BinGrid &grid, bool with_atom = true) {
    const auto &v = pdf.values();
    const double dx = pdf.dx();
    const double x0 = pdf.x(0);
    // cumulative trapezoid at grid points
    std::vector<double> cum(v.size(), 0.0);
    for (std::size_t i = 1; i < v.size(); ++i)
        cum[i] = cum[i - 1] + 0.5 * dx * (v[i - 1] + v[i]);
    auto cdf = [&](double x) {
        if (x <= x0)
            return 0.0;
        const double u = (x - x0) / dx;
        const auto i = static_cast<std::size_t>(u);
        if (i + 1 >= v.size())
            return cum.back();
        const double t = (u - static_cast<double>(i)) * dx;
        const double slope = (v[i + 1] - v[i]) / dx;
        return cum[i] + v[i] * t + 0.5 * slope * t * t;
    };
    std::vector<double> p(grid.bins);
    double prev = 0.0;
    for (std::size_t i = 0; i < grid.bins; ++i) {
        const double next = i + 1 == grid.bins ? cum.back() : cdf(grid.edge(i + 1));
        p[i] = std::max(0.0, next - prev);
        prev = next;
    }
    if (!with_atom)
        return p;
    p[grid.index(0.0)] += pdf.atom_mass();
    double total = 0.0;
    for (double q : p)
        total += q;
    for (double &q : p)
        q /= total;
    return p;
}

/// sum_i f_i ln(f_i / g_i) in nats with 0 ln 0 = 0; +infinity when f puts
/// mass where g has none.
inline double kl_distance(std::span<const double> f, std::span<const double> g) {
    if (f.size() != g.size())
        throw InvalidArgument("kl_distance: laws are on different bin grids");
    double d = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (f[i] < 0.0 || g[i] < 0.0)
            throw InvalidArgument("kl_distance: negative probability");
        if (f[i] == 0.0)
            continue;
        if (g[i] == 0.0)
            return std::numeric_limits<double>::infinity();
        d += f[i] * std::log(f[i] / g[i]);
    }
    return std::max(d, 0.0);
}

/// KL of a law against the zero-mean Gaussian of equal variance, both
/// discretised on `grid` (default: 401 bins over +-8 sigma).
inline double kl_to_matched_gaussian(const NumericPdf &pdf, double variance, const BinGrid &grid) {
    return kl_distance(discretize(pdf, grid), discretize_gaussian(variance, grid));
}

inline double kl_to_matched_gaussian(const NumericPdf &pdf, double variance) {
    return kl_to_matched_gaussian(pdf, variance, default_bins(variance));
}

inline double kl_to_matched_gaussian(const EmpiricalPdf &emp, double variance) {
    return kl_distance(emp.probabilities, discretize_gaussian(variance, emp.grid));
}

} // namespace cci
