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
// SNR budget and packet-reception decision. Beamforming is modeled as an
// ideal boresight-aligned gain of 10 log10(N) per endpoint; interference is
// excluded (the metric is SNR, not SINR).

#pragma once

#include <cmath>

#include "v2vmm/types.hpp"

namespace v2vmm {

struct RadioConfig {
    double tx_power_dbm = 21.0;
    double bandwidth_hz = 1e9;
    double carrier_ghz = 63.0;
    double noise_figure_db = 13.0;
    int array_elements = 32;  // per endpoint; 1 = omnidirectional
    double snr_threshold_db = 0.0;

    void validate() const {
        if (!(bandwidth_hz > 0.0)) throw ValidationError("bandwidth must be positive");
        if (!(carrier_ghz > 0.0)) throw ValidationError("carrier frequency must be positive");
        if (array_elements < 1) throw ValidationError("array needs at least one element");
    }

    bool operator==(const RadioConfig&) const = default;
};

inline double array_gain_db(int elements) {
    if (elements < 1) throw ValidationError("array needs at least one element");
    return 10.0 * std::log10(static_cast<double>(elements));
}

// Thermal floor -174 dBm/Hz plus bandwidth and noise figure.
inline double noise_power_dbm(double bandwidth_hz, double noise_figure_db) {
    if (!(bandwidth_hz > 0.0)) throw ValidationError("bandwidth must be positive");
    return -174.0 + 10.0 * std::log10(bandwidth_hz) + noise_figure_db;
}

inline double snr_db(double total_path_loss_db, const RadioConfig& radio) {
    radio.validate();
    return radio.tx_power_dbm + 2.0 * array_gain_db(radio.array_elements) - total_path_loss_db -
           noise_power_dbm(radio.bandwidth_hz, radio.noise_figure_db);
}

// Boundary inclusive: snr == threshold counts as received.
inline bool is_received(double snr, double threshold_db) { return snr >= threshold_db; }

// Largest total path loss that still meets the reception threshold
// (inverse of snr_db at snr == threshold).
inline double max_path_loss_db(const RadioConfig& radio) {
    radio.validate();
    return radio.tx_power_dbm + 2.0 * array_gain_db(radio.array_elements) -
           noise_power_dbm(radio.bandwidth_hz, radio.noise_figure_db) - radio.snr_threshold_db;
}

}  // namespace v2vmm
