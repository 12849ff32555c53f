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
// Road geometry, vehicle classes and the random vehicle-dropping process
// (TR 37.885 Sec. 6.1.2 deployment options).

#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "v2vmm/rng.hpp"
#include "v2vmm/types.hpp"

namespace v2vmm {

struct VehicleClass {
    VehicleKind kind = VehicleKind::Type2;
    double length_m = 5.0;
    double width_m = 2.0;
    double height_m = 1.6;
    double antenna_height_m = 1.6;

    // TR 37.885 Table A-1 dimensions.
    static VehicleClass type1() { return {VehicleKind::Type1, 5.0, 2.0, 1.6, 0.75}; }
    static VehicleClass type2() { return {VehicleKind::Type2, 5.0, 2.0, 1.6, 1.6}; }
    static VehicleClass type3() { return {VehicleKind::Type3, 13.0, 2.6, 3.0, 3.0}; }

    static VehicleClass of(VehicleKind k) {
        switch (k) {
            case VehicleKind::Type1: return type1();
            case VehicleKind::Type2: return type2();
            default: return type3();
        }
    }

    void validate() const {
        if (length_m <= 0 || width_m <= 0 || height_m <= 0)
            throw ValidationError("vehicle dimensions must be positive");
        if (antenna_height_m <= 0 || antenna_height_m > height_m + 0.5)
            throw ValidationError("antenna height must be in (0, vehicle height + 0.5 m]");
    }

    bool operator==(const VehicleClass&) const = default;
};

struct RoadConfig {
    Scenario scenario_kind = Scenario::Urban;
    int lanes_per_direction = 2;
    double lane_width_m = 3.5;
    int directions = 2;
    double road_length_m = 2000.0;

    static RoadConfig urban(double length_m = 2000.0) {
        return {Scenario::Urban, 2, 3.5, 2, length_m};
    }
    static RoadConfig highway(double length_m = 2000.0) {
        return {Scenario::Highway, 3, 4.0, 2, length_m};
    }

    int total_lanes() const { return lanes_per_direction * directions; }

    void validate() const {
        if (lane_width_m <= 0) throw ValidationError("lane width must be positive");
        if (lanes_per_direction < 1) throw ValidationError("need at least one lane per direction");
        if (directions < 1) throw ValidationError("need at least one direction");
        if (road_length_m < 0) throw ValidationError("road length must be non-negative");
    }

    bool operator==(const RoadConfig&) const = default;
};

struct TrafficConfig {
    double mean_speed_mps = 50.0 / 3.6;  // urban default; highway default is 100 km/h
    Density density = Density::Medium;
    std::map<VehicleKind, double> type_mix = {{VehicleKind::Type2, 1.0}};

    static double default_speed_mps(Scenario s) {
        return (s == Scenario::Urban ? 50.0 : 100.0) / 3.6;
    }

    void validate() const {
        if (mean_speed_mps < 0) throw ValidationError("mean speed must be non-negative");
        if (type_mix.empty()) throw ValidationError("type mix must not be empty");
        double sum = 0.0;
        for (const auto& [kind, frac] : type_mix) {
            if (frac < 0) throw ValidationError("type mix fractions must be non-negative");
            sum += frac;
        }
        if (std::abs(sum - 1.0) > 1e-9)
            throw ValidationError("type mix fractions must sum to 1");
    }

    bool operator==(const TrafficConfig&) const = default;
};

// longitudinal_position_m is the front-bumper coordinate; the body extends
// length_m behind it.
struct VehiclePlacement {
    int lane_index = 0;
    double longitudinal_position_m = 0.0;
    VehicleClass vehicle;

    bool operator==(const VehiclePlacement&) const = default;
};

inline VehicleKind draw_vehicle_kind(const std::map<VehicleKind, double>& mix, Pcg32& rng) {
    const double u = rng.uniform();
    double acc = 0.0;
    for (const auto& [kind, frac] : mix) {
        acc += frac;
        if (u < acc) return kind;
    }
    return mix.rbegin()->first;
}

// Drops vehicles lane by lane. The bumper-to-bumper gap between a vehicle
// and the one following it is max{2 m, Exp(lambda)} with lambda = 2 s * v,
// i.e. a two-second headway at the average speed; the first vehicle sits one
// gap draw from the road start. Placement stops once a front bumper would
// pass road_length_m.
inline std::vector<VehiclePlacement> drop_vehicles(const RoadConfig& road,
                                                   const TrafficConfig& traffic, Pcg32& rng) {
    road.validate();
    traffic.validate();
    std::vector<VehiclePlacement> placements;
    if (road.road_length_m <= 0) return placements;

    const double gap_mean_m = 2.0 * traffic.mean_speed_mps;
    for (int lane = 0; lane < road.total_lanes(); ++lane) {
        double cursor = 0.0;  // rear bumper of the last placed vehicle
        for (;;) {
            const double gap = std::max(2.0, rng.exponential(gap_mean_m));
            const VehicleClass cls = VehicleClass::of(draw_vehicle_kind(traffic.type_mix, rng));
            double front = cursor + gap + cls.length_m;
            // Nudge up so the clamp survives the bumper arithmetic a reader
            // of the placement list will do.
            while (front - cls.length_m - cursor < 2.0)
                front = std::nextafter(front, std::numeric_limits<double>::infinity());
            if (front > road.road_length_m) break;
            placements.push_back({lane, front, cls});
            cursor = front;
        }
    }
    return placements;
}

enum class PairLaneMode { SameLane, AdjacentLane };

struct LinkEndpoints {
    VehiclePlacement tx;
    VehiclePlacement rx;
};

// Synthesizes a TX/RX pair at exactly longitudinal separation d, bypassing
// the dropping process; used when curves are parameterized directly by d.
inline LinkEndpoints pick_pair_at_distance(const RoadConfig& road, const TrafficConfig& traffic,
                                           double d_m, Pcg32& rng,
                                           PairLaneMode mode = PairLaneMode::SameLane) {
    road.validate();
    traffic.validate();
    if (d_m < 2.0 || d_m > 500.0)
        throw ValidationError("pair distance must lie in [2, 500] m");

    const int lanes = road.total_lanes();
    const int tx_lane = std::min(lanes - 1, static_cast<int>(rng.uniform() * lanes));
    int rx_lane = tx_lane;
    if (mode == PairLaneMode::AdjacentLane && lanes > 1)
        rx_lane = tx_lane + 1 < lanes ? tx_lane + 1 : tx_lane - 1;

    const double slack = std::max(0.0, road.road_length_m - d_m);
    const double rx_front = rng.uniform(0.0, slack);

    LinkEndpoints pair;
    pair.rx = {rx_lane, rx_front, VehicleClass::of(draw_vehicle_kind(traffic.type_mix, rng))};
    pair.tx = {tx_lane, rx_front + d_m, VehicleClass::of(draw_vehicle_kind(traffic.type_mix, rng))};
    return pair;
}

// Blocker for the NLOSv attenuation draw: a single intermediate vehicle whose
// class follows the deployment mix.
inline VehicleClass pick_blocker_class(const TrafficConfig& traffic, Pcg32& rng) {
    traffic.validate();
    return VehicleClass::of(draw_vehicle_kind(traffic.type_mix, rng));
}

}  // namespace v2vmm
