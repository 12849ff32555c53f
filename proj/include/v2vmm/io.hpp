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
//
// Command-line front end: JSON run configuration (a flat mirror of
// ExperimentSpec plus output options, unknown keys rejected), stable
// CSV/JSON curve output with atomic writes, and the exit-code contract
// 0 = ok, 2 = usage, 3 = model-domain not available, 4 = I/O.

#pragma once

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"

#include "v2vmm/engine.hpp"
#include "v2vmm/types.hpp"

namespace v2vmm {

struct UsageError : ValidationError {
    using ValidationError::ValidationError;
};

enum class OutputFormat { Csv, Json };

inline const char* to_string(OutputFormat f) { return f == OutputFormat::Csv ? "csv" : "json"; }

struct RunConfig {
    ExperimentSpec spec;
    std::string out = "curve.csv";
    OutputFormat format = OutputFormat::Csv;
    int verbosity = 0;
    std::string oxygen_table_csv;  // empty: built-in absorption profile

    bool operator==(const RunConfig&) const = default;
};

namespace cfg {

using nlohmann::json;

template <typename Enum>
Enum enum_from_string(const std::string& value,
                      const std::vector<std::pair<const char*, Enum>>& table,
                      const char* what) {
    std::string choices;
    for (const auto& [name, e] : table) {
        if (value == name) return e;
        choices += choices.empty() ? name : std::string(", ") + name;
    }
    throw UsageError(std::string(what) + " must be one of {" + choices + "}, got '" + value + "'");
}

inline Scenario scenario_from_string(const std::string& s) {
    return enum_from_string<Scenario>(
        s, {{"urban", Scenario::Urban}, {"highway", Scenario::Highway}}, "scenario");
}
inline Density density_from_string(const std::string& s) {
    return enum_from_string<Density>(
        s, {{"low", Density::Low}, {"medium", Density::Medium}, {"high", Density::High}},
        "density");
}
inline ModelKind model_from_string(const std::string& s) {
    return enum_from_string<ModelKind>(
        s, {{"3gpp", ModelKind::ThreeGpp}, {"extended", ModelKind::Extended}}, "model");
}
inline Metric metric_from_string(const std::string& s) {
    return enum_from_string<Metric>(s,
                                    {{"prob", Metric::StateProbability},
                                     {"pathloss", Metric::PathLoss},
                                     {"prr", Metric::Prr}},
                                    "metric");
}
inline PathLossMode state_from_string(const std::string& s) {
    return enum_from_string<PathLossMode>(s,
                                          {{"los", PathLossMode::Los},
                                           {"nlosv", PathLossMode::Nlosv},
                                           {"nlos", PathLossMode::Nlos},
                                           {"overall", PathLossMode::Overall}},
                                          "state");
}
inline VehicleKind vehicle_kind_from_string(const std::string& s) {
    return enum_from_string<VehicleKind>(
        s, {{"type1", VehicleKind::Type1}, {"type2", VehicleKind::Type2},
            {"type3", VehicleKind::Type3}},
        "vehicle type");
}
inline OutputFormat format_from_string(const std::string& s) {
    return enum_from_string<OutputFormat>(
        s, {{"csv", OutputFormat::Csv}, {"json", OutputFormat::Json}}, "format");
}

inline void reject_unknown_keys(const json& j, const std::set<std::string>& known,
                                const char* where) {
    for (const auto& [key, value] : j.items())
        if (!known.contains(key))
            throw ConfigError(std::string("unknown key '") + key + "' in " + where);
}

inline json radio_to_json(const RadioConfig& r) {
    return json{{"array_elements", r.array_elements}, {"bandwidth_hz", r.bandwidth_hz},
                {"carrier_ghz", r.carrier_ghz},       {"noise_figure_db", r.noise_figure_db},
                {"snr_threshold_db", r.snr_threshold_db}, {"tx_power_dbm", r.tx_power_dbm}};
}

inline void radio_from_json(const json& j, RadioConfig& r) {
    reject_unknown_keys(j,
                        {"array_elements", "bandwidth_hz", "carrier_ghz", "noise_figure_db",
                         "snr_threshold_db", "tx_power_dbm"},
                        "radio");
    if (j.contains("array_elements")) r.array_elements = j.at("array_elements").get<int>();
    if (j.contains("bandwidth_hz")) r.bandwidth_hz = j.at("bandwidth_hz").get<double>();
    if (j.contains("carrier_ghz")) r.carrier_ghz = j.at("carrier_ghz").get<double>();
    if (j.contains("noise_figure_db")) r.noise_figure_db = j.at("noise_figure_db").get<double>();
    if (j.contains("snr_threshold_db"))
        r.snr_threshold_db = j.at("snr_threshold_db").get<double>();
    if (j.contains("tx_power_dbm")) r.tx_power_dbm = j.at("tx_power_dbm").get<double>();
}

inline json traffic_to_json(const TrafficConfig& t) {
    json mix = json::object();
    for (const auto& [kind, frac] : t.type_mix) mix[to_string(kind)] = frac;
    return json{{"density", to_string(t.density)},
                {"mean_speed_mps", t.mean_speed_mps},
                {"type_mix", mix}};
}

inline void traffic_from_json(const json& j, TrafficConfig& t, bool& had_speed,
                              bool& had_density) {
    reject_unknown_keys(j, {"density", "mean_speed_mps", "type_mix"}, "traffic");
    if (j.contains("density")) {
        t.density = density_from_string(j.at("density").get<std::string>());
        had_density = true;
    }
    if (j.contains("mean_speed_mps")) {
        t.mean_speed_mps = j.at("mean_speed_mps").get<double>();
        had_speed = true;
    }
    if (j.contains("type_mix")) {
        t.type_mix.clear();
        for (const auto& [key, value] : j.at("type_mix").items())
            t.type_mix[vehicle_kind_from_string(key)] = value.get<double>();
    }
}

inline json spec_to_json(const ExperimentSpec& s) {
    json j{{"bin_width_m", s.bin_width_m},
           {"d_max_m", s.d_max_m},
           {"d_min_m", s.d_min_m},
           {"freeze_sigmas", s.freeze_sigmas},
           {"metric", to_string(s.metric)},
           {"model", to_string(s.model)},
           {"n_points", s.n_points},
           {"radio", radio_to_json(s.radio)},
           {"scenario", to_string(s.scenario)},
           {"seed", s.seed},
           {"state", to_string(s.mode)},
           {"traffic", traffic_to_json(s.traffic)},
           {"trials_per_point", s.trials_per_point}};
    j["density"] = s.density ? json(to_string(*s.density)) : json(nullptr);
    return j;
}

struct SpecParseNotes {
    bool had_seed = false;
    bool had_speed = false;
    bool had_traffic_density = false;
};

inline const std::set<std::string>& spec_keys() {
    static const std::set<std::string> keys = {
        "bin_width_m", "d_max_m",  "d_min_m", "density", "freeze_sigmas",
        "metric",      "model",    "n_points", "radio",  "scenario",
        "seed",        "state",    "traffic",  "trials_per_point"};
    return keys;
}

inline void spec_from_json(const json& j, ExperimentSpec& s, SpecParseNotes& notes) {
    if (j.contains("metric")) s.metric = metric_from_string(j.at("metric").get<std::string>());
    if (j.contains("model")) s.model = model_from_string(j.at("model").get<std::string>());
    if (j.contains("scenario"))
        s.scenario = scenario_from_string(j.at("scenario").get<std::string>());
    if (j.contains("density")) {
        const auto& value = j.at("density");
        s.density = value.is_null()
                        ? std::nullopt
                        : std::optional<Density>(density_from_string(value.get<std::string>()));
    }
    if (j.contains("state")) s.mode = state_from_string(j.at("state").get<std::string>());
    if (j.contains("radio")) radio_from_json(j.at("radio"), s.radio);
    if (j.contains("traffic"))
        traffic_from_json(j.at("traffic"), s.traffic, notes.had_speed,
                          notes.had_traffic_density);
    if (j.contains("d_min_m")) s.d_min_m = j.at("d_min_m").get<double>();
    if (j.contains("d_max_m")) s.d_max_m = j.at("d_max_m").get<double>();
    if (j.contains("n_points")) s.n_points = j.at("n_points").get<int>();
    if (j.contains("bin_width_m")) s.bin_width_m = j.at("bin_width_m").get<double>();
    if (j.contains("trials_per_point"))
        s.trials_per_point = j.at("trials_per_point").get<int>();
    if (j.contains("seed")) {
        s.seed = j.at("seed").get<std::uint64_t>();
        notes.had_seed = true;
    }
    if (j.contains("freeze_sigmas")) s.freeze_sigmas = j.at("freeze_sigmas").get<bool>();
}

inline json run_config_to_json(const RunConfig& c) {
    json j = spec_to_json(c.spec);
    j["format"] = to_string(c.format);
    j["out"] = c.out;
    j["oxygen_table_csv"] = c.oxygen_table_csv;
    j["verbosity"] = c.verbosity;
    return j;
}

inline RunConfig run_config_from_json(const json& j, SpecParseNotes& notes) {
    std::set<std::string> known = spec_keys();
    known.insert({"format", "out", "oxygen_table_csv", "verbosity"});
    reject_unknown_keys(j, known, "run config");
    RunConfig c;
    spec_from_json(j, c.spec, notes);
    if (j.contains("format")) c.format = format_from_string(j.at("format").get<std::string>());
    if (j.contains("out")) c.out = j.at("out").get<std::string>();
    if (j.contains("oxygen_table_csv"))
        c.oxygen_table_csv = j.at("oxygen_table_csv").get<std::string>();
    if (j.contains("verbosity")) c.verbosity = j.at("verbosity").get<int>();
    return c;
}

inline RunConfig run_config_from_json(const json& j) {
    SpecParseNotes notes;
    return run_config_from_json(j, notes);
}

inline json curve_to_json(const CurveSeries& series) {
    json points = json::array();
    for (const auto& p : series.points)
        points.push_back(json{{"d_m", p.d_m},
                              {"n_trials", p.n_trials},
                              {"stderr", p.std_error},
                              {"value", p.value}});
    return json{{"analytic", series.analytic},
                {"metric", series.metric},
                {"points", points},
                {"spec", spec_to_json(series.spec)}};
}

inline CurveSeries curve_from_json(const json& j) {
    reject_unknown_keys(j, {"analytic", "metric", "points", "spec"}, "curve");
    CurveSeries series;
    series.metric = j.at("metric").get<std::string>();
    series.analytic = j.at("analytic").get<std::vector<double>>();
    for (const auto& p : j.at("points")) {
        reject_unknown_keys(p, {"d_m", "n_trials", "stderr", "value"}, "curve point");
        series.points.push_back({p.at("d_m").get<double>(), p.at("value").get<double>(),
                                 p.at("stderr").get<double>(), p.at("n_trials").get<long>()});
    }
    SpecParseNotes notes;
    reject_unknown_keys(j.at("spec"), spec_keys(), "spec");
    spec_from_json(j.at("spec"), series.spec, notes);
    return series;
}

}  // namespace cfg

// Six significant digits; enough to compare against published reference curves.
inline std::string format_g6(double v) {
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%.6g", v);
    return buffer;
}

inline std::string curve_to_csv(const CurveSeries& series) {
    std::string text = "# spec: " + cfg::spec_to_json(series.spec).dump() + "\n";
    text += "d_m,value,stderr,n_trials\n";
    for (const auto& p : series.points) {
        text += format_g6(p.d_m) + "," + format_g6(p.value) + "," + format_g6(p.std_error) +
                "," + std::to_string(p.n_trials) + "\n";
    }
    return text;
}

// Atomic write: temp file in place, then rename.
inline void write_file_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open for writing: " + tmp);
        out << content;
        if (!out) throw IoError("write failed: " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::remove(tmp.c_str());
        throw IoError("cannot rename " + tmp + " to " + path);
    }
}

inline void write_curve(const CurveSeries& series, const std::string& path, OutputFormat format) {
    if (format == OutputFormat::Csv) {
        write_file_atomic(path, curve_to_csv(series));
    } else {
        write_file_atomic(path, cfg::curve_to_json(series).dump(2) + "\n");
    }
}

// Dispatches the configured experiment and writes the curve. Throws on
// error; exit-code mapping happens in cli_main.
inline int run_main(const RunConfig& config) {
    const OxygenTable table = config.oxygen_table_csv.empty()
                                  ? OxygenTable::standard()
                                  : OxygenTable::from_csv(config.oxygen_table_csv);
    ExperimentSpec spec = config.spec;
    spec.validate();

    CurveSeries series;
    switch (spec.metric) {
        case Metric::StateProbability: {
            if (spec.mode == PathLossMode::Overall)
                throw UsageError("probability curves have no 'overall' series; "
                                 "pick --state {los, nlosv, nlos}");
            auto all = run_probability_curves(spec);
            series = std::move(all[static_cast<std::size_t>(spec.mode)]);
            break;
        }
        case Metric::PathLoss:
            series = run_path_loss_curve(spec, table);
            break;
        case Metric::Prr:
            series = run_prr_curve(spec, table);
            break;
    }
    write_curve(series, config.out, config.format);
    if (config.verbosity > 0)
        std::cerr << series.metric << ": " << series.points.size() << " points -> " << config.out
                  << "\n";
    return 0;
}

}  // namespace v2vmm
