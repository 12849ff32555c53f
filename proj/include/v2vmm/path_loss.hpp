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
// Deterministic path-loss means (TR 37.885 Table 6.2.1-1), oxygen
// absorption, lognormal shadowing and the NLOSv vehicle-blockage
// attenuation. "Lognormal with standard deviation X dB" is implemented as a
// zero-mean Gaussian in the dB domain, the usual channel-modeling reading.

#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "v2vmm/link_state.hpp"
#include "v2vmm/rng.hpp"
#include "v2vmm/types.hpp"

namespace v2vmm {

// Oxygen absorption in dB/km vs. carrier frequency, piecewise-linear between
// tabulated points and zero outside the tabulated range. The default table
// is the standard 52-68 GHz absorption profile (TR 38.901 Table 7.6.1-1),
// with Omega(60 GHz) = 15 dB/km.
class OxygenTable {
public:
    static OxygenTable from_points(std::vector<std::pair<double, double>> points) {
        for (std::size_t i = 0; i < points.size(); ++i) {
            if (points[i].second < 0.0)
                throw ValidationError("oxygen table: absorption must be non-negative");
            if (i > 0 && points[i].first <= points[i - 1].first)
                throw ValidationError("oxygen table: frequencies must be strictly increasing");
        }
        OxygenTable table;
        table.points_ = std::move(points);
        return table;
    }

    // Two-column CSV "freq_ghz,omega_db_per_km"; a header row and '#'
    // comment lines are skipped.
    static OxygenTable from_csv(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw IoError("cannot open oxygen table: " + path);
        std::vector<std::pair<double, double>> points;
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty() || line.front() == '#') continue;
            const auto comma = line.find(',');
            if (comma == std::string::npos)
                throw ValidationError("oxygen table: expected 'freq_ghz,omega_db_per_km'");
            try {
                points.emplace_back(std::stod(line.substr(0, comma)),
                                    std::stod(line.substr(comma + 1)));
            } catch (const std::exception&) {
                if (points.empty()) continue;  // header row
                throw ValidationError("oxygen table: malformed line '" + line + "'");
            }
        }
        if (points.empty()) throw ValidationError("oxygen table: no data rows in " + path);
        return from_points(std::move(points));
    }

    static const OxygenTable& standard() {
        static const OxygenTable table = from_points({
            {52.0, 0.0},
            {53.0, 1.0},
            {54.0, 2.2},
            {55.0, 4.0},
            {56.0, 6.6},
            {57.0, 9.7},
            {58.0, 12.6},
            {59.0, 14.6},
            {60.0, 15.0},
            {61.0, 14.6},
            {62.0, 14.3},
            {63.0, 10.5},
            {64.0, 6.8},
            {65.0, 3.9},
            {66.0, 1.9},
            {67.0, 1.0},
            {68.0, 0.0},
        });
        return table;
    }

    double db_per_km(double fc_ghz) const {
        if (points_.empty() || fc_ghz < points_.front().first || fc_ghz > points_.back().first)
            return 0.0;
        auto upper = std::lower_bound(points_.begin(), points_.end(), fc_ghz,
                                      [](const auto& p, double f) { return p.first < f; });
        if (upper->first == fc_ghz) return upper->second;
        auto lower = upper - 1;
        const double t = (fc_ghz - lower->first) / (upper->first - lower->first);
        return lower->second + t * (upper->second - lower->second);
    }

private:
    std::vector<std::pair<double, double>> points_;
};

// PL_oxy = d * Omega(fc) / 1000.
inline double oxygen_loss_db(double d_m, double fc_ghz,
                             const OxygenTable& table = OxygenTable::standard()) {
    if (d_m < 0.0) throw ValidationError("distance must be non-negative");
    return d_m * table.db_per_km(fc_ghz) / 1000.0;
}

namespace detail {
inline void check_pl_inputs(double d_m, double fc_ghz) {
    if (!(d_m > 0.0)) throw ValidationError("distance must be positive");
    if (!(fc_ghz > 0.0)) throw ValidationError("carrier frequency must be positive");
}
}  // namespace detail

// Mean LOS path loss including oxygen absorption, excluding shadowing.
inline double los_path_loss_db(Scenario scenario, double d_m, double fc_ghz,
                               const OxygenTable& table = OxygenTable::standard()) {
    detail::check_pl_inputs(d_m, fc_ghz);
    const double base = scenario == Scenario::Urban
                            ? 38.77 + 16.7 * std::log10(d_m) + 18.2 * std::log10(fc_ghz)
                            : 32.4 + 20.0 * std::log10(d_m) + 20.0 * std::log10(fc_ghz);
    return base + oxygen_loss_db(d_m, fc_ghz, table);
}

// Mean NLOS path loss; a single equation for both scenarios.
inline double nlos_path_loss_db(double d_m, double fc_ghz,
                                const OxygenTable& table = OxygenTable::standard()) {
    detail::check_pl_inputs(d_m, fc_ghz);
    return 36.85 + 30.0 * std::log10(d_m) + 18.9 * std::log10(fc_ghz) +
           oxygen_loss_db(d_m, fc_ghz, table);
}

// NLOSv blockage-attenuation parameters. Only (0, 0), (5, 4) and (9, 4.5)
// occur; equal heights fall through to the (5, 4) case since the first two
// rules use strict inequalities.
struct BlockageParams {
    double mu_base_db = 0.0;
    double sigma_db = 0.0;

    bool operator==(const BlockageParams&) const = default;
};

inline BlockageParams vehicle_blockage_params(double h_tx_m, double h_rx_m, double h_blk_m) {
    if (!(h_tx_m > 0.0) || !(h_rx_m > 0.0) || !(h_blk_m > 0.0))
        throw ValidationError("antenna and blocker heights must be positive");
    if (std::min(h_tx_m, h_rx_m) > h_blk_m) return {0.0, 0.0};
    if (std::max(h_tx_m, h_rx_m) < h_blk_m) return {9.0, 4.5};
    return {5.0, 4.0};
}

// Mean of the NLOSv attenuation: mu_base + max{0, 15 log10(d) - 41}, with
// the distance term applied only in the nonzero-base cases.
inline double blockage_mean_db(double d_m, const BlockageParams& params) {
    if (!(d_m > 0.0)) throw ValidationError("distance must be positive");
    if (params.mu_base_db <= 0.0) return 0.0;
    return params.mu_base_db + std::max(0.0, 15.0 * std::log10(d_m) - 41.0);
}

// One draw of the NLOSv attenuation A_NLOSv; exactly 0 (no draw) for the
// (0, 0) parameter case.
inline double nlosv_extra_db(double d_m, const BlockageParams& params, Pcg32& rng) {
    if (params.mu_base_db <= 0.0 && params.sigma_db <= 0.0) return 0.0;
    return rng.normal(blockage_mean_db(d_m, params), params.sigma_db);
}

// LOS 3 dB, NLOS 4 dB; NLOSv reuses the LOS equation (and its shadowing)
// plus the independently drawn A_NLOSv.
inline double shadowing_sigma_db(LinkState state) {
    return state == LinkState::Nlos ? 4.0 : 3.0;
}

struct ChannelSample {
    LinkState state = LinkState::Los;
    double pl_mean_db = 0.0;   // deterministic part incl. oxygen
    double shadow_db = 0.0;    // chi_a draw
    double blockage_db = 0.0;  // A_NLOSv draw, 0 unless NLOSv
    double total_db = 0.0;

    bool operator==(const ChannelSample&) const = default;
};

struct SamplingOptions {
    bool draw_shadowing = true;  // false: shadow_db = 0
    bool draw_blockage = true;   // false: blockage_db pinned at its mean
};

// Realizes one link. Draw order per call: shadowing first, then (NLOSv
// only) the blockage attenuation. Heights are only consulted in the NLOSv
// state.
inline ChannelSample sample_channel(LinkState state, Scenario scenario, double d_m, double fc_ghz,
                                    double h_tx_m, double h_rx_m, double h_blk_m, Pcg32& rng,
                                    const OxygenTable& table = OxygenTable::standard(),
                                    const SamplingOptions& options = {}) {
    ChannelSample sample;
    sample.state = state;
    sample.pl_mean_db = state == LinkState::Nlos ? nlos_path_loss_db(d_m, fc_ghz, table)
                                                 : los_path_loss_db(scenario, d_m, fc_ghz, table);
    sample.shadow_db =
        options.draw_shadowing ? rng.normal(0.0, shadowing_sigma_db(state)) : 0.0;
    if (state == LinkState::Nlosv) {
        const BlockageParams params = vehicle_blockage_params(h_tx_m, h_rx_m, h_blk_m);
        sample.blockage_db = options.draw_blockage ? nlosv_extra_db(d_m, params, rng)
                                                   : blockage_mean_db(d_m, params);
    }
    sample.total_db = sample.pl_mean_db + sample.shadow_db + sample.blockage_db;
    return sample;
}

// Analytic dB-domain mixture mean over the given state distribution;
// zero-mean shadowing drops out, NLOSv contributes its attenuation mean.
inline double mean_overall_path_loss_db(const StateDistribution& dist, Scenario scenario,
                                        double d_m, double fc_ghz, double h_tx_m, double h_rx_m,
                                        double h_blk_m,
                                        const OxygenTable& table = OxygenTable::standard()) {
    const double los = los_path_loss_db(scenario, d_m, fc_ghz, table);
    const double nlosv =
        los + blockage_mean_db(d_m, vehicle_blockage_params(h_tx_m, h_rx_m, h_blk_m));
    const double nlos = nlos_path_loss_db(d_m, fc_ghz, table);
    return dist.p_los * los + dist.p_nlosv * nlosv + dist.p_nlos * nlos;
}

inline double mean_overall_path_loss_db(ModelKind model, Scenario scenario,
                                        const std::optional<Density>& density, double d_m,
                                        double fc_ghz, double h_tx_m, double h_rx_m,
                                        double h_blk_m,
                                        const OxygenTable& table = OxygenTable::standard()) {
    if (model == ModelKind::ThreeGpp)
        throw NotAvailableError(
            "overall path loss needs an NLOS probability; the 3GPP model has no closed form");
    return mean_overall_path_loss_db(state_distribution(model, scenario, density, d_m), scenario,
                                     d_m, fc_ghz, h_tx_m, h_rx_m, h_blk_m, table);
}

}  // namespace v2vmm
