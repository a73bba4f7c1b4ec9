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
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cci/errors.hpp"
#include "cci/geometry.hpp"
#include "cci/random.hpp"

namespace cci {

inline constexpr std::string_view tool_version = "0.1.0";

enum class ScenarioMode {
    layout,      // hexagonal layout, MS on a trajectory
    equal_power, // M equal-power interferers, no geometry
};

enum class SignalKind { interference, interference_noise };

/// Fully resolved run configuration. Every field has a value after parsing,
/// and to_json() emits all of them, so the digest covers defaults too.
struct RunConfig {
    std::string name;
    std::string command;

    ScenarioMode mode = ScenarioMode::layout;
    int rings = 1;
    double cell_radius = 1.0;
    double tx_power = 1.0;
    double pathloss_exponent = 4.0;
    std::optional<double> edge_snr_db = 30.0;
    std::optional<double> noise_variance;
    double interferer_power = 1.0; // equal_power mode
    double desired_power = 1.0;    // equal_power mode

    Trajectory trajectory = Trajectory::two_cell_edge;
    std::vector<double> d_over_r{0.5};
    std::vector<double> loading{1.0};
    std::vector<int> interferers{6}; // equal_power mode

    SignalKind signal = SignalKind::interference;
    std::size_t samples = 1'000'000;
    std::size_t mc_draws = 100'000;
    std::uint64_t seed = 1;
    std::size_t bins = 401;
    double bin_sigmas = 8.0;
    std::vector<std::string> kl_variants{"cci"};
    bool kl_monte_carlo = false;
    bool ip_refine = true;
    unsigned workers = 1;
    std::string inject_fault; // validate only
    std::string output;

    double resolved_noise() const {
        if (noise_variance)
            return *noise_variance;
        if (mode == ScenarioMode::layout && edge_snr_db)
            return edge_snr_noise(tx_power, cell_radius, pathloss_exponent, *edge_snr_db);
        return 0.0;
    }

    nlohmann::json to_json() const {
        nlohmann::json scenario;
        if (mode == ScenarioMode::layout) {
            scenario = {{"layout", "hex"},
                        {"rings", rings},
                        {"cell_radius", cell_radius},
                        {"tx_power", tx_power},
                        {"pathloss_exponent", pathloss_exponent}};
            if (edge_snr_db)
                scenario["edge_snr_db"] = *edge_snr_db;
        } else {
            scenario = {{"layout", "equal_power"}, {"power", interferer_power}, {"desired_power", desired_power}};
        }
        if (noise_variance)
            scenario["noise_variance"] = *noise_variance;
        nlohmann::json sweep{{"loading", loading}};
        if (mode == ScenarioMode::layout)
            sweep["d_over_r"] = d_over_r;
        else
            sweep["interferers"] = interferers;
        nlohmann::json j{{"name", name},
                         {"command", command},
                         {"scenario", scenario},
                         {"trajectory", std::string(to_string(trajectory))},
                         {"sweep", sweep},
                         {"signal", signal == SignalKind::interference ? "interference" : "interference+noise"},
                         {"samples", samples},
                         {"mc_draws", mc_draws},
                         {"seed", seed},
                         {"bins", bins},
                         {"bin_sigmas", bin_sigmas},
                         {"kl", {{"variants", kl_variants}, {"monte_carlo", kl_monte_carlo}}},
                         {"ip_refine", ip_refine},
                         {"workers", workers}};
        if (!inject_fault.empty())
            j["inject_fault"] = inject_fault;
        return j;
    }

    /// FNV-1a of the canonical (key-sorted, compact) JSON dump. The worker
    /// count does not change results and is left out.
    std::string digest() const {
        nlohmann::json j = to_json();
        j.erase("workers");
        const std::string text = j.dump();
        std::uint64_t h = 0xcbf29ce484222325ull;
        for (unsigned char c : text) {
            h ^= c;
            h *= 0x100000001b3ull;
        }
        char buf[17];
        std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
        return buf;
    }
};

namespace detail {

/// Reads keys from one JSON object and rejects any it did not consume.
class ObjectReader {
  public:
    ObjectReader(const nlohmann::json &j, std::string path) : j_(j), path_(std::move(path)) {
        if (!j_.is_object())
            throw ConfigError(where() + "expected an object");
    }

    bool has(const std::string &key) const { return j_.contains(key); }

    template <class T>
    std::optional<T> get(const std::string &key) {
        seen_.insert(key);
        if (!j_.contains(key) || j_.at(key).is_null())
            return std::nullopt;
        try {
            return j_.at(key).get<T>();
        } catch (const nlohmann::json::exception &e) {
            throw ConfigError(where(key) + "wrong type (" + e.what() + ")");
        }
    }

    template <class T>
    void read(const std::string &key, T &out) {
        if (auto v = get<T>(key))
            out = *v;
    }

    const nlohmann::json &child(const std::string &key) {
        seen_.insert(key);
        return j_.at(key);
    }

    void finish() const {
        for (auto it = j_.begin(); it != j_.end(); ++it)
            if (!seen_.count(it.key()))
                throw ConfigError(where(it.key()) + "unknown key");
    }

    std::string where(const std::string &key = {}) const {
        std::string p = path_;
        if (!key.empty())
            p += (p.empty() ? "" : ".") + key;
        return "config key '" + (p.empty() ? std::string("<root>") : p) + "': ";
    }

  private:
    const nlohmann::json &j_;
    std::string path_;
    std::set<std::string> seen_;
};

template <class T>
void require_non_empty(const std::vector<T> &v, const std::string &what) {
    if (v.empty())
        throw ConfigError("config key '" + what + "': list must not be empty");
}

} // namespace detail

inline RunConfig parse_config(const nlohmann::json &j) {
    RunConfig c;
    detail::ObjectReader root(j, "");
    root.read("name", c.name);
    root.read("command", c.command);
    if (!c.command.empty() && c.command != "pdf" && c.command != "kl" && c.command != "capacity" &&
        c.command != "validate")
        throw ConfigError(root.where("command") + "expected pdf, kl, capacity or validate");
    root.get<std::string>("description");

    if (root.has("scenario")) {
        detail::ObjectReader s(root.child("scenario"), "scenario");
        const std::string layout = s.get<std::string>("layout").value_or("hex");
        if (layout == "hex") {
            c.mode = ScenarioMode::layout;
            s.read("rings", c.rings);
            s.read("cell_radius", c.cell_radius);
            s.read("tx_power", c.tx_power);
            s.read("pathloss_exponent", c.pathloss_exponent);
            if (s.has("edge_snr_db"))
                c.edge_snr_db = s.get<double>("edge_snr_db");
        } else if (layout == "equal_power") {
            c.mode = ScenarioMode::equal_power;
            c.edge_snr_db.reset();
            s.read("power", c.interferer_power);
            s.read("desired_power", c.desired_power);
        } else {
            throw ConfigError(s.where("layout") + "expected 'hex' or 'equal_power'");
        }
        c.noise_variance = s.get<double>("noise_variance");
        if (c.noise_variance && c.mode == ScenarioMode::layout)
            c.edge_snr_db.reset();
        s.finish();
    }
    if (auto t = root.get<std::string>("trajectory")) {
        try {
            c.trajectory = parse_trajectory(*t);
        } catch (const InvalidArgument &) {
            throw ConfigError(root.where("trajectory") + "expected 'two-cell-edge' or 'three-cell-corner'");
        }
    }
    if (root.has("sweep")) {
        detail::ObjectReader s(root.child("sweep"), "sweep");
        s.read("d_over_r", c.d_over_r);
        s.read("loading", c.loading);
        s.read("interferers", c.interferers);
        s.finish();
    }
    if (auto sig = root.get<std::string>("signal")) {
        if (*sig == "interference")
            c.signal = SignalKind::interference;
        else if (*sig == "interference+noise")
            c.signal = SignalKind::interference_noise;
        else
            throw ConfigError(root.where("signal") + "expected 'interference' or 'interference+noise'");
    }
    root.read("samples", c.samples);
    root.read("mc_draws", c.mc_draws);
    root.read("seed", c.seed);
    root.read("bins", c.bins);
    root.read("bin_sigmas", c.bin_sigmas);
    if (root.has("kl")) {
        detail::ObjectReader k(root.child("kl"), "kl");
        k.read("variants", c.kl_variants);
        k.read("monte_carlo", c.kl_monte_carlo);
        k.finish();
    }
    root.read("ip_refine", c.ip_refine);
    root.read("workers", c.workers);
    root.read("inject_fault", c.inject_fault);
    root.read("output", c.output);
    root.finish();
    return c;
}

/// Checks value ranges; called after command-line overrides are applied.
inline void validate_config(const RunConfig &c) {
    auto fail = [](const std::string &key, const std::string &msg) {
        throw ConfigError("config key '" + key + "': " + msg);
    };
    detail::require_non_empty(c.loading, "sweep.loading");
    for (double p : c.loading)
        if (!(p >= 0.0 && p <= 1.0))
            fail("sweep.loading", "loading rates must lie in [0, 1]");
    if (c.mode == ScenarioMode::layout) {
        detail::require_non_empty(c.d_over_r, "sweep.d_over_r");
        for (double d : c.d_over_r)
            if (!(d > 0.0 && d <= 1.0))
                fail("sweep.d_over_r", "positions must lie in (0, 1]");
        if (c.rings < 1)
            fail("scenario.rings", "at least one ring is required");
        if (!(c.cell_radius > 0.0))
            fail("scenario.cell_radius", "must be positive");
        if (!(c.tx_power > 0.0))
            fail("scenario.tx_power", "must be positive");
        if (!(c.pathloss_exponent > 0.0))
            fail("scenario.pathloss_exponent", "must be positive");
        if (c.edge_snr_db && !std::isfinite(*c.edge_snr_db))
            fail("scenario.edge_snr_db", "must be finite");
    } else {
        detail::require_non_empty(c.interferers, "sweep.interferers");
        for (int m : c.interferers)
            if (m < 0)
                fail("sweep.interferers", "counts must be non-negative");
        if (!(c.interferer_power > 0.0))
            fail("scenario.power", "must be positive");
        if (!(c.desired_power >= 0.0))
            fail("scenario.desired_power", "must be non-negative");
    }
    if (c.noise_variance && !(*c.noise_variance >= 0.0))
        fail("scenario.noise_variance", "must be non-negative");
    if (c.samples < 10'000)
        fail("samples", "at least 10000 samples are required");
    if (c.mc_draws < 10'000)
        fail("mc_draws", "at least 10000 draws are required");
    if (c.bins < 10)
        fail("bins", "at least 10 bins are required");
    if (!(c.bin_sigmas > 0.0))
        fail("bin_sigmas", "must be positive");
    detail::require_non_empty(c.kl_variants, "kl.variants");
    for (const auto &v : c.kl_variants)
        if (v != "cci" && v != "cci+noise")
            fail("kl.variants", "expected 'cci' or 'cci+noise', got '" + v + "'");
    if (!c.inject_fault.empty() && c.inject_fault != "three_pair_coefficient")
        fail("inject_fault", "only 'three_pair_coefficient' is supported");
    if (c.workers < 1)
        fail("workers", "must be at least 1");
}

inline RunConfig parse_config_text(const std::string &text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text, nullptr, true, /*ignore_comments=*/true);
    } catch (const nlohmann::json::parse_error &e) {
        // The message carries the line and column of the offending token.
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    return parse_config(j);
}

inline RunConfig load_config_file(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    try {
        return parse_config_text(ss.str());
    } catch (const ConfigError &e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
}

inline std::filesystem::path default_preset_dir() {
#ifdef CCI_PRESET_DIR
    return CCI_PRESET_DIR;
#else
    return "presets";
#endif
}

inline RunConfig load_preset(const std::string &name, const std::filesystem::path &dir = default_preset_dir()) {
    const auto path = dir / (name + ".json");
    if (!std::filesystem::exists(path))
        throw ConfigError("unknown preset '" + name + "' (looked for " + path.string() + ")");
    RunConfig c = load_config_file(path);
    if (c.name.empty())
        c.name = name;
    return c;
}

} // namespace cci
