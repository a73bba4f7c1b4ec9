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
//
// Command-line front end: ofdma-cci {pdf|kl|capacity|validate} [options]
//
// Exit status: 0 success, 1 unexpected error, 2 configuration error,
// 3 numerical failure, 4 validation failure.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "cci/config.hpp"
#include "cci/harness.hpp"
#include "cci/validate.hpp"

namespace {

enum ExitCode : int { ok = 0, other = 1, config_error = 2, numeric_failure = 3, validation_failure = 4 };

struct Options {
    std::string config_path;
    std::string preset;
    std::string preset_dir;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> samples;
    std::optional<std::size_t> draws;
    std::optional<unsigned> workers;
    std::string out;
    std::string format = "csv";
};

cci::RunConfig resolve(const Options &o, const std::string &command) {
    if (!o.config_path.empty() && !o.preset.empty())
        throw cci::ConfigError("use either --config or --preset, not both");
    cci::RunConfig c;
    if (!o.config_path.empty())
        c = cci::load_config_file(o.config_path);
    else if (!o.preset.empty())
        c = o.preset_dir.empty() ? cci::load_preset(o.preset) : cci::load_preset(o.preset, o.preset_dir);
    else if (command != "validate")
        throw cci::ConfigError("a configuration is required (--config PATH or --preset NAME)");
    if (!c.command.empty() && c.command != command && command != "validate")
        std::cerr << "note: configuration was written for '" << c.command << "', running '" << command << "'\n";
    c.command = command;
    if (o.seed)
        c.seed = *o.seed;
    if (o.samples)
        c.samples = *o.samples;
    if (o.draws)
        c.mc_draws = *o.draws;
    if (o.workers)
        c.workers = *o.workers;
    if (!o.out.empty())
        c.output = o.out;
    cci::validate_config(c);
    return c;
}

int run(const Options &o, const std::string &command) {
    const cci::RunConfig c = resolve(o, command);
    std::ostringstream buffer;
    int status = ok;
    if (command == "pdf") {
        cci::run_pdf(c, buffer);
    } else if (command == "kl") {
        cci::run_kl(c, buffer);
    } else if (command == "capacity") {
        cci::run_capacity(c, buffer);
    } else {
        const cci::ValidationReport rep = cci::run_validate(c);
        cci::csv::write_meta(buffer, {{"tool", "ofdma-cci"},
                                      {"version", std::string(cci::tool_version)},
                                      {"command", "validate"},
                                      {"config_digest", c.digest()},
                                      {"seed", std::to_string(c.seed)}});
        rep.write_csv(buffer);
        if (!rep.passed()) {
            std::cerr << rep.failures() << " check(s) failed\n";
            status = validation_failure;
        }
    }
    if (c.output.empty() || c.output == "-") {
        std::cout << buffer.str();
    } else {
        std::ofstream f(c.output, std::ios::binary);
        if (!f)
            throw cci::ConfigError("cannot open output file '" + c.output + "'");
        f << buffer.str();
    }
    return status;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Downlink OFDMA co-channel interference statistics and capacity"};
    app.set_version_flag("--version", std::string(cci::tool_version));
    app.require_subcommand(1);

    Options o;
    auto add_common = [&o](CLI::App *sub) {
        sub->add_option("--config", o.config_path, "JSON configuration file")->check(CLI::ExistingFile);
        sub->add_option("--preset", o.preset, "named preset (fig2 ... fig7)");
        sub->add_option("--preset-dir", o.preset_dir, "directory holding preset files");
        sub->add_option("--seed", o.seed, "random seed");
        sub->add_option("--samples", o.samples, "Monte Carlo samples for densities and KL");
        sub->add_option("--draws", o.draws, "Monte Carlo draws per capacity point");
        sub->add_option("--workers", o.workers, "worker threads");
        sub->add_option("--out", o.out, "output file (default stdout)");
        sub->add_option("--format", o.format, "output format")->check(CLI::IsMember({"csv"}));
    };
    for (const char *name : {"pdf", "kl", "capacity", "validate"}) {
        static const std::map<std::string, std::string> help{
            {"pdf", "densities at one or more sweep points"},
            {"kl", "Kullback-Leibler distance to the matched Gaussian over a sweep"},
            {"capacity", "I_CSI, I_GA and I_p over a sweep"},
            {"validate", "run the invariant suite"}};
        add_common(app.add_subcommand(name, help.at(name)));
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? ok : config_error;
    }
    const std::string command = app.get_subcommands().front()->get_name();
    try {
        return run(o, command);
    } catch (const cci::ConfigError &e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return config_error;
    } catch (const std::invalid_argument &e) {
        std::cerr << "invalid argument: " << e.what() << '\n';
        return config_error;
    } catch (const cci::InversionFailure &e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return numeric_failure;
    } catch (const std::domain_error &e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return numeric_failure;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return other;
    }
}
