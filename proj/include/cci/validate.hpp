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
#include <functional>
#include <limits>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <boost/math/distributions/normal.hpp>

#include "cci/harness.hpp"

namespace cci {

struct CheckResult {
    std::string name;
    bool passed = false;
    double measured = 0.0;
    double tolerance = 0.0;
};

struct ValidationReport {
    std::vector<CheckResult> checks;

    bool passed() const {
        return std::all_of(checks.begin(), checks.end(), [](const CheckResult &c) { return c.passed; });
    }
    std::size_t failures() const {
        return static_cast<std::size_t>(
            std::count_if(checks.begin(), checks.end(), [](const CheckResult &c) { return !c.passed; }));
    }

    void write_csv(std::ostream &out) const {
        out << "check,status,measured,tolerance\n";
        for (const auto &c : checks)
            csv::write_row(out, {c.name, c.passed ? "pass" : "fail", csv::number(c.measured), csv::number(c.tolerance)});
    }
};

namespace detail {

/// z such that a two-sided normal test over `tests` comparisons has
/// family-wise false-alarm rate `alpha`.
inline double bonferroni_z(double alpha, std::size_t tests) {
    const boost::math::normal_distribution<double> n;
    return boost::math::quantile(boost::math::complement(n, alpha / (2.0 * static_cast<double>(std::max<std::size_t>(tests, 1)))));
}

/// Largest |observed - expected| / binomial sd over bins whose expected count
/// is at least `min_expected`; `bins_used` receives how many bins qualified.
inline double max_bin_z(const EmpiricalPdf &emp, const std::vector<double> &expected_probs, double min_expected,
                        std::size_t &bins_used) {
    const double n = static_cast<double>(emp.sample_count);
    double worst = 0.0;
    bins_used = 0;
    for (std::size_t i = 0; i < expected_probs.size(); ++i) {
        const double q = expected_probs[i];
        if (n * q < min_expected)
            continue;
        ++bins_used;
        const double sd = std::sqrt(n * q * (1.0 - q));
        worst = std::max(worst, std::abs(emp.probabilities[i] * n - n * q) / sd);
    }
    return worst;
}

inline double histogram_variance(const EmpiricalPdf &emp) {
    double s = 0.0;
    for (std::size_t i = 0; i < emp.probabilities.size(); ++i) {
        const double x = emp.grid.center(i);
        s += emp.probabilities[i] * x * x;
    }
    return s;
}

/// Sup-norm difference between two laws on the points of `a` with |x| <= limit.
inline double sup_difference(const NumericPdf &a, const NumericPdf &b, double limit) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (std::abs(a.x(i)) <= limit)
            worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}

inline double ks_statistic_normal(std::vector<double> v, double variance) {
    std::sort(v.begin(), v.end());
    const double n = static_cast<double>(v.size());
    double d = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double f = normal_cdf(v[i], variance);
        d = std::max({d, f - static_cast<double>(i) / n, static_cast<double>(i + 1) / n - f});
    }
    return d;
}

inline LinkBudget budget_from_powers(double e0, std::vector<double> interferers) {
    LinkBudget b;
    b.received_powers.push_back(e0);
    b.received_powers.insert(b.received_powers.end(), interferers.begin(), interferers.end());
    return b;
}

} // namespace detail

/// Desk-scale run of the library's invariants. Statistical checks use
/// family-wise thresholds so that they keep passing under seed changes.
inline ValidationReport run_validate(const RunConfig &c) {
    ValidationReport rep;
    auto check_le = [&](std::string name, double measured, double tol) {
        rep.checks.push_back({std::move(name), measured <= tol, measured, tol});
    };
    // Passes when `margin` is positive; the tolerance column records 0.
    auto check_positive = [&](std::string name, double margin) {
        rep.checks.push_back({std::move(name), margin > 0.0, margin, 0.0});
    };
    const std::uint64_t seed = c.seed;
    const double eps = std::numeric_limits<double>::epsilon();

    // Geometry.
    {
        const auto one = hex_layout(1, 1.0);
        const auto two = hex_layout(2, 1.0);
        check_le("geometry.hex_layout_count", std::abs(double(one.size()) - 7.0) + std::abs(double(two.size()) - 19.0),
                 0.0);
        const Scenario sc = uniform_scenario(1, 1.0, 1.0, 4.0, 1.0, 0.0);
        const LinkBudget lb = link_budget(sc, trajectory(Trajectory::three_cell_corner, 1.0));
        const auto e = lb.interferer_powers();
        const double pair = std::max({std::abs(e[0] - e[5]), std::abs(e[1] - e[4]), std::abs(e[2] - e[3])});
        check_le("geometry.corner_pairing", pair, 1e-12);
        check_le("geometry.edge_noise_30db", std::abs(edge_snr_noise(sc, 30.0) - 1e-3), 1e-18);
    }

    // Special function.
    {
        double worst = 0.0;
        const int n = 1000;
        for (int i = 0; i < n; ++i) {
            const double x = 1e-6 * std::pow(700.0 / 1e-6, static_cast<double>(i) / (n - 1));
            const double ref = std::cyl_bessel_k(0.0, x);
            worst = std::max(worst, std::abs(bessel_k0(x) - ref) / ref);
        }
        check_le("bessel_k0.relative_error", worst, 1e-10);
    }

    // Characteristic functions.
    const Scenario fig2 = uniform_scenario(1, 1.0, 1.0, 4.0, 0.5, 1e-3);
    const LinkBudget fig2_budget = link_budget(fig2, trajectory(Trajectory::two_cell_edge, 0.5));
    {
        const InterferenceCf cf(fig2_budget.interferer_powers(), fig2.loading_rates, 0.0);
        double worst = std::abs(cf(0.0) - 1.0);
        for (double w = 0.1; w < 50.0; w *= 1.3)
            worst = std::max({worst, std::abs(cf(w) - cf(-w)), std::max(0.0, std::abs(cf(w)) - 1.0)});
        check_le("cf.unit_even_bounded", worst, 4.0 * eps);
    }

    // Inversion against closed forms.
    {
        for (int m : {1, 2, 4, 6}) {
            const std::vector<double> powers(static_cast<std::size_t>(m), 1.0), loading(static_cast<std::size_t>(m), 1.0);
            const InterferenceCf cf(powers, loading);
            const GridSpec g = default_grid(cf.variance());
            check_le("inversion.equal_power_m" + std::to_string(m),
                     detail::sup_difference(invert_cf(cf, g), pdf_equal_power(m, 1.0, g), 10.0), 1e-4);
        }
        const std::vector<double> powers{4, 4, 2, 2, 1, 1}, loading(6, 1.0);
        const InterferenceCf cf(powers, loading);
        const GridSpec g = default_grid(cf.variance());
        check_le("inversion.three_pair_4_2_1", detail::sup_difference(invert_cf(cf, g), pdf_three_pair(4, 2, 1, g), 10.0),
                 1e-4);
    }

    // Partial fractions.
    {
        std::mt19937_64 eng(derive_seed(seed, 2000, 0));
        std::uniform_real_distribution<double> exponent(-3.0, 3.0);
        double worst = 0.0;
        for (int i = 0; i < 1000; ++i) {
            auto a = three_pair_coefficients(std::pow(10.0, exponent(eng)), std::pow(10.0, exponent(eng)),
                                             std::pow(10.0, exponent(eng)));
            if (c.inject_fault == "three_pair_coefficient")
                a[0] *= 1.0 + 1e-3;
            const double scale = std::abs(a[0]) + std::abs(a[1]) + std::abs(a[2]);
            worst = std::max(worst, std::abs(a[0] + a[1] + a[2] - 1.0) / scale);
        }
        check_le("three_pair.coefficient_sum", worst, 8.0 * eps);

        const double gap = 1e-4;
        const ThreePairLaw law = three_pair_law(1.0, 1.0 + gap, 1.0 + 2.0 * gap);
        const std::vector<double> exact_powers{1.0, 1.0, 1.0 + gap, 1.0 + gap, 1.0 + 2.0 * gap, 1.0 + 2.0 * gap};
        const InterferenceCf exact_cf(exact_powers, std::vector<double>(6, 1.0));
        const GridSpec g = default_grid(exact_cf.variance());
        const NumericPdf exact = invert_cf(exact_cf, g);
        double to_mean = 0.0, to_exact = 0.0;
        for (std::size_t i = 0; i < exact.size(); ++i) {
            const double x = exact.x(i);
            if (std::abs(x) > 10.0)
                continue;
            to_mean = std::max(to_mean, std::abs(law(x) - equal_power_density(3, x, law.powers[0])));
            to_exact = std::max(to_exact, std::abs(law(x) - exact[i]));
        }
        check_le("three_pair.merged_limit_vs_six_equal", to_mean, 1e-6);
        check_le("three_pair.merged_limit_vs_exact", to_exact, 1e-6);
    }

    // Normalisation and second moments of inverted laws.
    {
        const InterferenceCf ci(fig2_budget.interferer_powers(), fig2.loading_rates, 0.0);
        const InterferenceCf cz(fig2_budget.interferer_powers(), fig2.loading_rates, fig2.noise_variance);
        const NumericPdf fi = invert_cf(ci);
        const NumericPdf fz = invert_cf(cz);
        check_le("pdf.normalisation_interference", std::abs(fi.total_mass() - 1.0), normalization_tolerance);
        check_le("pdf.normalisation_interference_noise", std::abs(fz.total_mass() - 1.0), normalization_tolerance);
        check_le("pdf.variance_interference", std::abs(fi.variance() / ci.variance() - 1.0), 5e-3);
        check_le("pdf.variance_interference_noise", std::abs(fz.variance() / cz.variance() - 1.0), 5e-3);
        double asym = 0.0;
        for (std::size_t i = 0; i < fz.size(); ++i)
            asym = std::max(asym, std::abs(fz[i] - fz[fz.size() - 1 - i]));
        check_le("pdf.symmetry", asym, 0.0);

        // Heavier than Gaussian beyond four standard deviations.
        const NumericPdf six = pdf_equal_power(6, 1.0);
        double margin = std::numeric_limits<double>::infinity();
        for (double x = 4.0 * std::sqrt(6.0); x <= 10.0 * std::sqrt(6.0); x += 0.25) {
            const double g = std::exp(-x * x / 12.0) / std::sqrt(12.0 * std::numbers::pi);
            margin = std::min(margin, six.value_at(x) / g - 1.0);
        }
        check_positive("pdf.six_equal_heavy_tail", margin);
    }

    // Monte Carlo.
    {
        const std::vector<double> powers2{1.0, 1.0}, full2{1.0, 1.0};
        const LinkBudget b2 = detail::budget_from_powers(1.0, powers2);
        const std::size_t n = 4'000'000;
        const SampleBatch batch = sample(b2, full2, 0.0, SignalTag::I, n, derive_seed(seed, 2001, 0));
        const double sd = std::sqrt(2.0);
        check_le("mc.mean", std::abs(batch.mean()), 4.0 * sd / std::sqrt(double(n)));
        check_le("mc.variance", std::abs(batch.variance() / 2.0 - 1.0), 5e-3);

        const EmpiricalPdf fine = empirical_pdf(batch, default_bins(2.0));
        check_le("mc.histogram_variance", std::abs(detail::histogram_variance(fine) / 2.0 - 1.0), 5e-3);
        const BinGrid bins = default_bins(2.0, 51, 8.0);
        const EmpiricalPdf emp = empirical_pdf(batch, bins);
        const auto expected = discretize_cdf(
            [](double x) { return x < 0 ? 0.5 * std::exp(x) : 1.0 - 0.5 * std::exp(-x); }, bins);
        std::size_t used = 0;
        const double z = detail::max_bin_z(emp, expected, 1000.0, used);
        check_le("mc.histogram_vs_laplace_max_z", z, detail::bonferroni_z(1e-3, used));

        const std::size_t nk = 100'000;
        const LinkBudget b0 = detail::budget_from_powers(1.0, {});
        const SampleBatch noise = sample(b0, std::vector<double>{}, 0.5, SignalTag::Z, nk, derive_seed(seed, 2002, 0));
        check_le("mc.noise_ks", detail::ks_statistic_normal(noise.values, 0.5), 1.949 / std::sqrt(double(nk)));

        const SampleBatch y = sample(fig2_budget, fig2.loading_rates, fig2.noise_variance, SignalTag::Y, n,
                                     derive_seed(seed, 2003, 0));
        const double vy = fig2_budget.desired_power() + InterferenceCf(fig2_budget.interferer_powers(), fig2.loading_rates,
                                                                       fig2.noise_variance)
                                                            .variance();
        // Y is dominated by the desired term, whose fourth moment is 9 E0^2.
        check_le("mc.received_variance", std::abs(y.variance() / vy - 1.0), 4.0 * std::sqrt(8.0 / double(n)));

        const SampleBatch w1 = sample(fig2_budget, fig2.loading_rates, 0.0, SignalTag::I, 200'000, seed, 1);
        const SampleBatch w3 = sample(fig2_budget, fig2.loading_rates, 0.0, SignalTag::I, 200'000, seed, 3);
        check_le("mc.worker_independence", w1.values == w3.values ? 0.0 : 1.0, 0.0);
    }

    // KL distance.
    {
        const BinGrid bins = default_bins(2.0);
        const auto g = discretize_gaussian(2.0, bins);
        check_le("kl.identity", kl_distance(g, g), 0.0);
        check_le("kl.laplace_vs_gaussian", std::abs(kl_to_matched_gaussian(pdf_equal_power(2, 1.0), 2.0) - 0.0724), 5e-3);
        double prev = std::numeric_limits<double>::infinity(), margin = std::numeric_limits<double>::infinity();
        for (int m : {1, 2, 4, 6}) {
            const double kl = kl_to_matched_gaussian(pdf_equal_power(m, 1.0), double(m));
            margin = std::min(margin, prev - kl);
            prev = kl;
        }
        check_positive("kl.decreases_with_interferer_count", margin);

        RunConfig k;
        k.d_over_r = {0.1, 1.0};
        k.loading = {1.0, 0.5, 0.1};
        const auto rows = compute_kl(k);
        double m_load = std::numeric_limits<double>::infinity(), m_dist = m_load;
        for (std::size_t i = 0; i < 2; ++i) {
            m_load = std::min({m_load, rows[2 + i].kl_nats - rows[i].kl_nats, rows[4 + i].kl_nats - rows[2 + i].kl_nats});
        }
        for (std::size_t p = 0; p < 3; ++p)
            m_dist = std::min(m_dist, rows[2 * p + 1].kl_nats - rows[2 * p].kl_nats);
        check_positive("kl.increases_as_loading_drops", m_load);
        check_positive("kl.increases_towards_edge", m_dist);
    }

    // Capacity.
    {
        const double noise = 1e-3;
        const std::size_t draws = 100'000;
        IpSettings fast;
        fast.refine = false;

        const LinkBudget awgn = detail::budget_from_powers(1.0, {});
        const std::vector<double> none;
        const Estimate csi0 = i_csi(awgn, none, noise, 20'000'000, derive_seed(seed, 2100, 0));
        const double ga0 = i_ga(awgn, none, noise).value;
        const double ip0 = i_p(awgn, none, noise, fast).value;
        check_le("capacity.awgn_csi_vs_ga", std::abs(csi0.value - ga0), 2e-3);
        check_le("capacity.awgn_p_vs_ga", std::abs(ip0 - ga0), 2e-3);

        const LinkBudget silent = detail::budget_from_powers(0.0, {0.3, 0.1});
        const std::vector<double> half{0.5, 0.5};
        const double zero = std::abs(i_csi(silent, half, noise, draws, seed).value) +
                            std::abs(i_ga(silent, half, noise).value) + std::abs(i_p(silent, half, noise, fast).value);
        check_le("capacity.no_signal_zero", zero, 1e-3);

        const LinkBudget b = link_budget(fig2, trajectory(Trajectory::two_cell_edge, 0.5));
        const Estimate csi = i_csi(b, fig2.loading_rates, fig2.noise_variance, draws, derive_seed(seed, 2101, 0));
        const Estimate ga = i_ga(b, fig2.loading_rates, fig2.noise_variance);
        const IpResult ip = i_p(b, fig2.loading_rates, fig2.noise_variance);
        check_positive("capacity.jensen_csi_above_ga", csi.value - ga.value - 3.0 * csi.std_error);
        check_positive("capacity.ga_below_p", ip.value - ga.value + 3.0 * ip.refinement_delta + 1e-12);
        check_positive("capacity.p_below_csi", csi.value - ip.value + 3.0 * csi.std_error);
        check_le("capacity.p_refinement_delta", ip.refinement_delta, 1e-3);

        const LinkBudget b6 = link_budget(fig2, trajectory(Trajectory::two_cell_edge, 0.6));
        const IpSettings oracle_settings = fast;
        const double direct = i_p(b6, fig2.loading_rates, fig2.noise_variance, fast).value;
        const Estimate oracle =
            i_p_monte_carlo(b6, fig2.loading_rates, fig2.noise_variance, 100'000, derive_seed(seed, 2102, 0),
                            oracle_settings);
        check_le("capacity.p_vs_direct_mc", std::abs(direct - oracle.value), 5e-3);

        // Relabelling interferers.
        std::vector<double> rev_p(b.received_powers.rbegin(), b.received_powers.rend() - 1);
        const LinkBudget rb = detail::budget_from_powers(b.desired_power(), rev_p);
        const std::vector<double> rev_load(fig2.loading_rates.rbegin(), fig2.loading_rates.rend());
        const double ip_rev = i_p(rb, rev_load, fig2.noise_variance).value;
        const double ga_rev = i_ga(rb, rev_load, fig2.noise_variance).value;
        const Estimate csi_rev = i_csi(rb, rev_load, fig2.noise_variance, draws, derive_seed(seed, 2103, 0));
        check_le("capacity.relabel_p", std::abs(ip_rev - ip.value), 1e-9);
        check_le("capacity.relabel_ga", std::abs(ga_rev - ga.value), 1e-12);
        check_le("capacity.relabel_csi", std::abs(csi_rev.value - csi.value),
                 3.0 * std::hypot(csi.std_error, csi_rev.std_error));

        const double ga_more_noise = i_ga(b, fig2.loading_rates, 2.0 * fig2.noise_variance).value;
        check_positive("capacity.ga_decreases_with_noise", ga.value - ga_more_noise);

        const DiffFactors d = diff_factors(2.0, 2.5, 2.0);
        check_le("capacity.diff_factor_arithmetic", std::abs(d.csi_pct - 25.0) + std::abs(d.ga_pct), 1e-12);
    }

    // Byte-identical output for identical configuration and seed.
    {
        RunConfig k;
        k.seed = seed;
        k.d_over_r = {0.3, 0.9};
        k.loading = {0.5};
        k.samples = 50'000;
        k.kl_monte_carlo = true;
        std::ostringstream a, b;
        run_kl(k, a);
        run_kl(k, b);
        check_le("harness.deterministic_csv", a.str() == b.str() ? 0.0 : 1.0, 0.0);
    }
    return rep;
}

} // namespace cci
