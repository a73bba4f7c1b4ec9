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
#include <exception>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "cci/capacity.hpp"
#include "cci/characteristic.hpp"
#include "cci/closed_form.hpp"
#include "cci/config.hpp"
#include "cci/csv.hpp"
#include "cci/geometry.hpp"
#include "cci/inversion.hpp"
#include "cci/montecarlo.hpp"
#include "cci/random.hpp"

namespace cci {

/// One evaluation point of a sweep, with everything the estimators need.
struct SweepPoint {
    std::size_t index = 0;
    double d_over_r = 0.0; // 0 in equal-power mode
    double loading = 1.0;
    int interferers = 0;
    LinkBudget budget;
    std::vector<double> loading_rates;
    double noise_variance = 0.0;
    std::uint64_t seed = 0;
};

/// Sweep points in output order: loading outermost, then position (or
/// interferer count). Each point gets its own seed derived from the run seed.
inline std::vector<SweepPoint> expand_points(const RunConfig &c) {
    std::vector<SweepPoint> out;
    const double noise = c.resolved_noise();
    for (double p : c.loading) {
        if (c.mode == ScenarioMode::layout) {
            const Scenario sc = uniform_scenario(c.rings, c.cell_radius, c.tx_power, c.pathloss_exponent, p, noise);
            for (double d : c.d_over_r) {
                SweepPoint pt;
                pt.d_over_r = d;
                pt.loading = p;
                pt.interferers = static_cast<int>(sc.interferer_count());
                pt.budget = link_budget(sc, trajectory(c.trajectory, d, c.cell_radius));
                pt.loading_rates = sc.loading_rates;
                pt.noise_variance = noise;
                out.push_back(std::move(pt));
            }
        } else {
            for (int m : c.interferers) {
                SweepPoint pt;
                pt.loading = p;
                pt.interferers = m;
                pt.budget.received_powers.assign(static_cast<std::size_t>(m) + 1, c.interferer_power);
                pt.budget.received_powers[0] = c.desired_power;
                pt.loading_rates.assign(static_cast<std::size_t>(m), p);
                pt.noise_variance = noise;
                out.push_back(std::move(pt));
            }
        }
    }
    for (std::size_t k = 0; k < out.size(); ++k) {
        out[k].index = k;
        out[k].seed = derive_seed(c.seed, 1000, k);
    }
    return out;
}

/// Closed-form law matching the given interferers, if one of the special
/// cases applies: one interferer at any loading, 2/4/6 equal powers at full
/// loading, or six full-load interferers in three equal-power pairs.
struct ClosedFormLaw {
    std::string kind; // "single", "equal-power", "three-pair"
    NumericPdf pdf;
};

inline std::optional<ClosedFormLaw> closed_form_for(std::span<const double> powers, std::span<const double> loading,
                                                    const GridSpec &grid) {
    const std::size_t m = powers.size();
    if (m == 1 && powers[0] > 0.0)
        return ClosedFormLaw{"single", pdf_single_cci(powers[0], loading[0], grid)};
    if (m == 0 || std::any_of(loading.begin(), loading.end(), [](double p) { return p != 1.0; }))
        return std::nullopt;
    if (std::any_of(powers.begin(), powers.end(), [](double e) { return !(e > 0.0); }))
        return std::nullopt;
    auto same = [](double a, double b) { return std::abs(a - b) <= 1e-9 * std::max(a, b); };
    const bool all_equal =
        std::all_of(powers.begin(), powers.end(), [&](double e) { return same(e, powers[0]); });
    if (all_equal && (m == 2 || m == 4 || m == 6))
        return ClosedFormLaw{"equal-power", pdf_equal_power(static_cast<int>(m), powers[0], grid)};
    if (m == 6) {
        std::vector<double> e(powers.begin(), powers.end());
        std::sort(e.begin(), e.end());
        if (same(e[0], e[1]) && same(e[2], e[3]) && same(e[4], e[5]))
            return ClosedFormLaw{"three-pair", pdf_three_pair(e[1], e[3], e[5], grid)};
    }
    return std::nullopt;
}

namespace detail {

inline void write_run_header(std::ostream &out, const RunConfig &c, std::string_view command) {
    csv::write_meta(out, {{"tool", "ofdma-cci"},
                          {"version", std::string(tool_version)},
                          {"command", std::string(command)},
                          {"preset", c.name.empty() ? std::string("-") : c.name},
                          {"config_digest", c.digest()},
                          {"seed", std::to_string(c.seed)}});
}

/// Runs fn(point) over a worker pool; exceptions are rethrown in point order.
template <class F>
void for_each_point(const std::vector<SweepPoint> &points, unsigned workers, F &&fn) {
    std::vector<std::exception_ptr> errors(points.size());
    for_each_chunk(points.size(), workers, [&](std::size_t k) {
        try {
            fn(points[k]);
        } catch (...) {
            errors[k] = std::current_exception();
        }
    });
    for (const auto &e : errors)
        if (e)
            std::rethrow_exception(e);
}

inline std::vector<double> to_density(std::vector<double> masses, const BinGrid &grid) {
    for (double &m : masses)
        m /= grid.width();
    return masses;
}

} // namespace detail

/// Bin-averaged densities at histogram bin centres: the inverted law (its
/// atom reported in the metadata, not in the column), the closed form when one
/// applies, the Monte Carlo histogram (whose zero bin holds any atom) and the
/// variance-matched Gaussian.
inline void run_pdf(const RunConfig &c, std::ostream &out) {
    const auto points = expand_points(c);
    const bool with_noise = c.signal == SignalKind::interference_noise;
    struct Block {
        double atom = 0.0, variance = 0.0;
        std::string closed_kind = "none";
        BinGrid bins;
        std::vector<double> analytic, closed, empirical, gaussian;
    };
    std::vector<Block> blocks(points.size());
    const unsigned pool = std::min<unsigned>(c.workers, static_cast<unsigned>(points.size()));
    detail::for_each_point(points, pool, [&](const SweepPoint &pt) {
        Block &b = blocks[pt.index];
        const double noise = with_noise ? pt.noise_variance : 0.0;
        const InterferenceCf cf(pt.budget.interferer_powers(), pt.loading_rates, noise);
        if (!(cf.variance() > 0.0))
            throw ConfigError("pdf: point " + std::to_string(pt.index) + " has no interference and no noise");
        const GridSpec grid = default_grid(cf);
        const NumericPdf law = invert_cf(cf, grid);
        b.atom = law.atom_mass();
        b.variance = cf.variance();
        b.bins = default_bins(cf.variance(), c.bins, c.bin_sigmas);
        b.analytic = detail::to_density(discretize(law, b.bins, false), b.bins);
        if (!with_noise) {
            if (auto cfl = closed_form_for(pt.budget.interferer_powers(), pt.loading_rates, grid)) {
                b.closed_kind = cfl->kind;
                b.closed = detail::to_density(discretize(cfl->pdf, b.bins, false), b.bins);
            }
        }
        const SampleBatch batch = sample(pt.budget, pt.loading_rates, noise,
                                         with_noise ? SignalTag::Z : SignalTag::I, c.samples, pt.seed,
                                         pool > 1 ? 1 : c.workers);
        const EmpiricalPdf emp = empirical_pdf(batch, b.bins);
        b.empirical.resize(c.bins);
        for (std::size_t i = 0; i < c.bins; ++i)
            b.empirical[i] = emp.density(i);
        b.gaussian = detail::to_density(discretize_gaussian(cf.variance(), b.bins), b.bins);
    });

    detail::write_run_header(out, c, "pdf");
    for (const auto &pt : points) {
        const Block &b = blocks[pt.index];
        csv::write_meta(out, {{"point", std::to_string(pt.index)},
                              {"d_over_r", csv::number(pt.d_over_r)},
                              {"loading", csv::number(pt.loading)},
                              {"interferers", std::to_string(pt.interferers)},
                              {"signal", with_noise ? "interference+noise" : "interference"},
                              {"atom_mass", csv::number(b.atom)},
                              {"variance", csv::number(b.variance)},
                              {"closed_form", b.closed_kind},
                              {"samples", std::to_string(c.samples)},
                              {"point_seed", std::to_string(pt.seed)}});
    }
    out << "point,x,analytic,closed_form,empirical,gaussian\n";
    for (const auto &pt : points) {
        const Block &b = blocks[pt.index];
        for (std::size_t i = 0; i < b.bins.bins; ++i)
            csv::write_row(out, {std::to_string(pt.index), csv::number(b.bins.center(i)), csv::number(b.analytic[i]),
                                 b.closed.empty() ? std::string() : csv::number(b.closed[i]),
                                 csv::number(b.empirical[i]), csv::number(b.gaussian[i])});
    }
}

struct KlRow {
    double d_over_r = 0.0;
    double loading = 0.0;
    int interferers = 0;
    std::string variant;
    double kl_nats = 0.0;
    std::optional<double> kl_mc_nats;
};

/// KL distance of the interference (or interference-plus-noise) law to its
/// variance-matched Gaussian at every sweep point.
inline std::vector<KlRow> compute_kl(const RunConfig &c) {
    const auto points = expand_points(c);
    const std::size_t nv = c.kl_variants.size();
    std::vector<KlRow> rows(points.size() * nv);
    const unsigned pool = std::min<unsigned>(c.workers, static_cast<unsigned>(points.size()));
    detail::for_each_point(points, pool, [&](const SweepPoint &pt) {
        for (std::size_t v = 0; v < nv; ++v) {
            const bool noisy = c.kl_variants[v] == "cci+noise";
            const double noise = noisy ? pt.noise_variance : 0.0;
            if (noisy && !(noise > 0.0))
                throw ConfigError("kl: variant 'cci+noise' needs a positive noise variance");
            const InterferenceCf cf(pt.budget.interferer_powers(), pt.loading_rates, noise);
            if (!(cf.variance() > 0.0))
                throw ConfigError("kl: point " + std::to_string(pt.index) + " has a degenerate law");
            const BinGrid bins = default_bins(cf.variance(), c.bins, c.bin_sigmas);
            KlRow &r = rows[pt.index * nv + v];
            r.d_over_r = pt.d_over_r;
            r.loading = pt.loading;
            r.interferers = pt.interferers;
            r.variant = c.kl_variants[v];
            r.kl_nats = kl_to_matched_gaussian(invert_cf(cf), cf.variance(), bins);
            if (c.kl_monte_carlo) {
                const SampleBatch batch = sample(pt.budget, pt.loading_rates, noise,
                                                 noisy ? SignalTag::Z : SignalTag::I, c.samples, pt.seed,
                                                 pool > 1 ? 1 : c.workers);
                r.kl_mc_nats = kl_to_matched_gaussian(empirical_pdf(batch, bins), cf.variance());
            }
        }
    });
    return rows;
}

inline void run_kl(const RunConfig &c, std::ostream &out) {
    const auto rows = compute_kl(c);
    detail::write_run_header(out, c, "kl");
    csv::write_meta(out, {{"bins", std::to_string(c.bins)}, {"bin_sigmas", csv::number(c.bin_sigmas)},
                          {"samples", c.kl_monte_carlo ? std::to_string(c.samples) : std::string("0")}});
    out << "d_over_r,loading,interferers,variant,kl_nats,kl_mc_nats\n";
    for (const auto &r : rows)
        csv::write_row(out, {csv::number(r.d_over_r), csv::number(r.loading), std::to_string(r.interferers), r.variant,
                             csv::number(r.kl_nats), r.kl_mc_nats ? csv::number(*r.kl_mc_nats) : std::string()});
}

inline std::vector<CapacityReport> compute_capacity(const RunConfig &c) {
    const auto points = expand_points(c);
    std::vector<CapacityReport> rows(points.size());
    const unsigned pool = std::min<unsigned>(c.workers, static_cast<unsigned>(points.size()));
    detail::for_each_point(points, pool, [&](const SweepPoint &pt) {
        CapacitySettings s;
        s.mc_draws = c.mc_draws;
        s.seed = pt.seed;
        s.ip.refine = c.ip_refine;
        s.workers = pool > 1 ? 1 : c.workers;
        if (!(pt.noise_variance > 0.0))
            throw ConfigError("capacity: thermal noise variance must be positive");
        CapacityReport r = evaluate_capacity(pt.budget, pt.loading_rates, pt.noise_variance, s);
        r.d_over_r = pt.d_over_r;
        r.loading = pt.loading;
        rows[pt.index] = r;
    });
    return rows;
}

inline void run_capacity(const RunConfig &c, std::ostream &out) {
    const auto rows = compute_capacity(c);
    const auto points = expand_points(c);
    detail::write_run_header(out, c, "capacity");
    csv::write_meta(out, {{"units", "bits_per_real_channel_use"},
                          {"mc_draws", std::to_string(c.mc_draws)},
                          {"noise_variance", csv::number(c.resolved_noise())}});
    out << "d_over_r,loading,interferers,i_csi,i_ga,i_p,d_csi_pct,d_ga_pct,i_csi_stderr,i_ga_stderr,i_p_refinement_delta\n";
    for (std::size_t k = 0; k < rows.size(); ++k) {
        const auto &r = rows[k];
        csv::write_row(out, {csv::number(r.d_over_r), csv::number(r.loading), std::to_string(points[k].interferers),
                             csv::number(r.i_csi), csv::number(r.i_ga), csv::number(r.i_p), csv::number(r.d_csi_pct),
                             csv::number(r.d_ga_pct), csv::number(r.i_csi_stderr), csv::number(r.i_ga_stderr),
                             csv::number(r.i_p_delta)});
    }
}

} // namespace cci
