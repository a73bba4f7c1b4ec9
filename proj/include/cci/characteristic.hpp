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
#include <concepts>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "cci/errors.hpp"
#include "cci/geometry.hpp"
#include "cci/numeric_pdf.hpp"

namespace cci {

/// An even, real characteristic function with a known limit at infinity.
template <class F>
concept CharacteristicFunction = requires(const F &f, double w) {
    { f(w) } -> std::convertible_to<double>;
    { f.atom_mass() } -> std::convertible_to<double>;
};

/// Characteristic function of one Bernoulli-gated product of Gaussians,
/// p (1 + E w^2)^-1/2 + (1 - p).
inline double cf_single_cci(double w, double power, double loading) {
    if (!(power >= 0.0))
        throw InvalidArgument("cf_single_cci: power must be non-negative");
    return loading / std::sqrt(1.0 + power * w * w) + (1.0 - loading);
}

/// One term of the single-interferer expansion: weight * (1 + E w^2)^-1/2.
struct KernelTerm {
    double weight;
    double power;
};

/// Characteristic function of sum_m Phi_m sqrt(E_m) H_m X_m + N(0, s).
///
/// Expanding prod_m (q_m + p_m psi_m) by the number of active interferers
/// gives an atom prod_m q_m, one K0 kernel per interferer, and a remainder
/// built from products of at least two psi_m that decays like w^-2 or faster.
class InterferenceCf {
public:
    InterferenceCf(std::span<const double> powers, std::span<const double> loading, double gaussian_variance = 0.0)
        : gaussian_variance_(gaussian_variance) {
        if (powers.size() != loading.size())
            throw InvalidArgument("InterferenceCf: powers and loading rates differ in length");
        if (!(gaussian_variance >= 0.0))
            throw InvalidArgument("InterferenceCf: Gaussian variance must be non-negative");
        for (std::size_t m = 0; m < powers.size(); ++m) {
            if (!(powers[m] >= 0.0))
                throw InvalidArgument("InterferenceCf: powers must be non-negative");
            if (!(loading[m] >= 0.0 && loading[m] <= 1.0))
                throw InvalidArgument("InterferenceCf: loading rates must lie in [0, 1]");
            // A silent or zero-power interferer contributes the constant 1.
            if (powers[m] > 0.0 && loading[m] > 0.0) {
                powers_.push_back(powers[m]);
                loading_.push_back(loading[m]);
            }
        }
        empty_mass_ = 1.0;
        for (double p : loading_)
            empty_mass_ *= 1.0 - p;
        for (std::size_t m = 0; m < powers_.size(); ++m) {
            double others = loading_[m];
            for (std::size_t k = 0; k < powers_.size(); ++k)
                if (k != m)
                    others *= 1.0 - loading_[k];
            kernels_.push_back({others, powers_[m]});
        }
    }

    InterferenceCf(const std::vector<double> &powers, const std::vector<double> &loading, double gaussian_variance = 0.0)
        : InterferenceCf(std::span<const double>(powers), std::span<const double>(loading), gaussian_variance) {}

    double operator()(double w) const {
        double prod = 1.0;
        for (std::size_t m = 0; m < powers_.size(); ++m)
            prod *= loading_[m] / std::sqrt(1.0 + powers_[m] * w * w) + (1.0 - loading_[m]);
        return gaussian_factor(w) * prod;
    }

    /// Point mass at zero; vanishes once a Gaussian component is present.
    double atom_mass() const noexcept { return gaussian_variance_ > 0.0 ? 0.0 : empty_mass_; }

    /// Probability that no interferer is active.
    double empty_mass() const noexcept { return empty_mass_; }

    double gaussian_variance() const noexcept { return gaussian_variance_; }

    double variance() const noexcept {
        double v = gaussian_variance_;
        for (std::size_t m = 0; m < powers_.size(); ++m)
            v += loading_[m] * powers_[m];
        return v;
    }

    std::span<const double> powers() const noexcept { return powers_; }
    std::span<const double> loading() const noexcept { return loading_; }

    /// Single-active-interferer terms of the expansion (weights exclude the Gaussian factor).
    std::span<const KernelTerm> kernel_terms() const noexcept { return kernels_; }

    /// Sum of the expansion terms with two or more active interferers, times
    /// the Gaussian factor. Accumulated term-wise so there is no cancellation.
    double remainder(double w) const {
        const std::size_t n = powers_.size();
        if (n < 2)
            return 0.0;
        // coeff[k]: sum over active subsets of size k; k >= 2 are pooled in coeff[2].
        double coeff[3] = {1.0, 0.0, 0.0};
        for (std::size_t m = 0; m < n; ++m) {
            const double on = loading_[m] / std::sqrt(1.0 + powers_[m] * w * w);
            const double off = 1.0 - loading_[m];
            coeff[2] = coeff[2] * (off + on) + coeff[1] * on;
            coeff[1] = coeff[1] * off + coeff[0] * on;
            coeff[0] = coeff[0] * off;
        }
        return gaussian_factor(w) * coeff[2];
    }

private:
    double gaussian_factor(double w) const noexcept {
        return gaussian_variance_ > 0.0 ? std::exp(-0.5 * gaussian_variance_ * w * w) : 1.0;
    }

    std::vector<double> powers_;
    std::vector<double> loading_;
    std::vector<KernelTerm> kernels_;
    double gaussian_variance_ = 0.0;
    double empty_mass_ = 1.0;
};

/// Default grid for the law of `cf`.
inline GridSpec default_grid(const InterferenceCf &cf) {
    double largest = 0.0;
    for (double e : cf.powers())
        largest = std::max(largest, e);
    return default_grid(cf.variance(), cf.gaussian_variance(), largest);
}

/// Arbitrary user-supplied characteristic function.
class GenericCf {
public:
    GenericCf(std::function<double(double)> fn, double atom_mass = 0.0) : fn_(std::move(fn)), atom_mass_(atom_mass) {}

    double operator()(double w) const { return fn_(w); }
    double atom_mass() const noexcept { return atom_mass_; }

private:
    std::function<double(double)> fn_;
    double atom_mass_;
};

/// Psi_I, Psi_Z or Psi_{Y|H0} depending on which Gaussian terms are supplied.
inline InterferenceCf make_cf(const LinkBudget &budget, std::span<const double> loading, double noise_variance,
                              std::optional<double> desired_term = std::nullopt) {
    if (!(noise_variance >= 0.0))
        throw InvalidArgument("cf_total: noise variance must be non-negative");
    if (desired_term && !(*desired_term >= 0.0))
        throw InvalidArgument("cf_total: desired-signal term must be non-negative");
    const auto powers = budget.interferer_powers();
    if (powers.size() != loading.size())
        throw InvalidArgument("cf_total: loading vector length does not match the interferer count");
    return InterferenceCf(powers, loading, noise_variance + desired_term.value_or(0.0));
}

inline double cf_total(double w, const LinkBudget &budget, std::span<const double> loading, double noise_variance,
                       std::optional<double> desired_term = std::nullopt) {
    return make_cf(budget, loading, noise_variance, desired_term)(w);
}

} // namespace cci
