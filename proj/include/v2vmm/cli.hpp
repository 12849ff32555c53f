// SPDX-License-Identifier: Apache-2.0
//
// v2vmm: stochastic V2V mmWave channel models and Monte Carlo link simulation
// Copyright (C) 2026 the v2vmm contributors
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

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "v2vmm/io.hpp"

namespace v2vmm {

namespace cli_detail {

// Result of parse_args when the user asked for --help.
struct HelpRequested {};

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read config file: " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return text;
}

// Locates --config before the full parse so that command-line flags can
// override file values.
inline std::optional<std::string> prescan_config_path(const std::vector<std::string>& args) {
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config") {
            if (i + 1 >= args.size()) throw UsageError("--config requires a file path");
            return args[i + 1];
        }
        if (args[i].rfind("--config=", 0) == 0) return args[i].substr(9);
    }
    return std::nullopt;
}

}  // namespace cli_detail

// Parses flags on top of an optional JSON config file. Defaults follow the
// standard system-level parameter set (21 dBm, 1 GHz, 63 GHz, NF 13 dB,
// N = 32, 0 dB threshold). Throws UsageError / ConfigError on bad input and
// cli_detail::HelpRequested for --help.
inline RunConfig parse_args(const std::vector<std::string>& args) {
    RunConfig config;
    cfg::SpecParseNotes notes;

    if (const auto config_path = cli_detail::prescan_config_path(args)) {
        try {
            const auto j = nlohmann::json::parse(cli_detail::read_text_file(*config_path));
            config = cfg::run_config_from_json(j, notes);
        } catch (const nlohmann::json::exception& e) {
            throw ConfigError("bad config file: " + std::string(e.what()));
        }
    }

    CLI::App app{"V2V mmWave link-state / path-loss / PRR curve generator"};
    std::string config_path_sink;
    std::string metric_str, model_str, scenario_str, density_str, state_str, format_str;
    app.add_option("--config", config_path_sink, "JSON config file (flags override it)");
    app.add_option("--metric", metric_str, "curve to produce")
        ->check(CLI::IsMember({"prob", "pathloss", "prr"}));
    app.add_option("--model", model_str, "link-state model")
        ->check(CLI::IsMember({"3gpp", "extended"}));
    app.add_option("--scenario", scenario_str, "deployment scenario")
        ->check(CLI::IsMember({"urban", "highway"}));
    app.add_option("--density", density_str, "traffic density (extended model)")
        ->check(CLI::IsMember({"low", "medium", "high"}));
    app.add_option("--state", state_str, "state selector / path-loss sub-mode")
        ->check(CLI::IsMember({"los", "nlosv", "nlos", "overall"}));
    app.add_option("--fc", config.spec.radio.carrier_ghz, "carrier frequency [GHz]");
    app.add_option("--bw", config.spec.radio.bandwidth_hz, "total bandwidth [Hz]");
    app.add_option("--n", config.spec.radio.array_elements, "array elements per endpoint");
    app.add_option("--trials", config.spec.trials_per_point, "Monte Carlo trials per point");
    auto* seed_opt = app.add_option("--seed", config.spec.seed, "experiment seed");
    app.add_option("--dmin", config.spec.d_min_m, "sweep start [m]");
    app.add_option("--dmax", config.spec.d_max_m, "sweep end [m]");
    auto* points_opt = app.add_option("--points", config.spec.n_points, "grid points");
    auto* bin_opt = app.add_option("--bin", config.spec.bin_width_m, "PRR bin width [m]");
    points_opt->excludes(bin_opt);
    app.add_option("--out", config.out, "output file path");
    app.add_option("--format", format_str, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
    app.add_flag("-v,--verbose", config.verbosity, "increase verbosity");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        std::cout << app.help() << std::flush;
        throw cli_detail::HelpRequested{};
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }

    if (!metric_str.empty()) config.spec.metric = cfg::metric_from_string(metric_str);
    if (!model_str.empty()) config.spec.model = cfg::model_from_string(model_str);
    if (!scenario_str.empty())
        config.spec.scenario = cfg::scenario_from_string(scenario_str);
    if (!density_str.empty()) {
        config.spec.density = cfg::density_from_string(density_str);
        config.spec.traffic.density = *config.spec.density;
        notes.had_traffic_density = true;
    }
    if (!state_str.empty()) config.spec.mode = cfg::state_from_string(state_str);
    if (!format_str.empty()) config.format = cfg::format_from_string(format_str);

    // Seed precedence: flag > config file > V2V_SEED > default.
    if (seed_opt->count() == 0 && !notes.had_seed) {
        if (const char* env = std::getenv("V2V_SEED")) {
            try {
                config.spec.seed = std::stoull(env);
            } catch (const std::exception&) {
                throw UsageError("V2V_SEED is not a valid unsigned integer: " +
                                 std::string(env));
            }
        }
    }
    // Scenario-dependent speed default unless the config pinned one.
    if (!notes.had_speed)
        config.spec.traffic.mean_speed_mps =
            TrafficConfig::default_speed_mps(config.spec.scenario);
    if (!notes.had_traffic_density && config.spec.density)
        config.spec.traffic.density = *config.spec.density;

    if (config.spec.metric == Metric::StateProbability &&
        config.spec.mode == PathLossMode::Overall)
        throw UsageError("probability curves have no 'overall' series; "
                         "pick --state {los, nlosv, nlos}");
    if (config.spec.d_min_m >= config.spec.d_max_m)
        throw UsageError("--dmin must be smaller than --dmax");

    return config;
}

// Full CLI entry point with the exit-code contract.
inline int cli_main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        return run_main(parse_args(args));
    } catch (const cli_detail::HelpRequested&) {
        return 0;
    } catch (const ValidationError& e) {  // covers Usage/Config errors
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {  // NotAvailableError and kin
        std::cerr << "not available: " << e.what() << "\n";
        return 3;
    } catch (const IoError& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace v2vmm
