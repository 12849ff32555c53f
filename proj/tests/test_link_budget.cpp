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

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "v2vmm/link_budget.hpp"

using namespace v2vmm;
using Catch::Matchers::WithinAbs;

TEST_CASE("array gain", "[link_budget]") {
    CHECK(array_gain_db(1) == 0.0);
    CHECK_THAT(array_gain_db(32), WithinAbs(15.0515, 1e-4));
    CHECK_THAT(array_gain_db(4), WithinAbs(6.0206, 1e-4));
    CHECK_THROWS_AS(array_gain_db(0), ValidationError);
}

TEST_CASE("noise power", "[link_budget]") {
    CHECK_THAT(noise_power_dbm(1.0, 0.0), WithinAbs(-174.0, 1e-12));
    CHECK_THAT(noise_power_dbm(1e9, 13.0), WithinAbs(-71.0, 1e-9));
    CHECK_THAT(noise_power_dbm(100e6, 13.0), WithinAbs(-81.0, 1e-9));
    CHECK_THROWS_AS(noise_power_dbm(0.0, 13.0), ValidationError);
}

TEST_CASE("SNR budget", "[link_budget]") {
    RadioConfig defaults;  // 21 dBm, 1 GHz, 63 GHz, NF 13 dB, N = 32
    CHECK_THAT(snr_db(21.0 + 2.0 * array_gain_db(32) + 71.0, defaults), WithinAbs(0.0, 1e-9));

    RadioConfig omni = defaults;
    omni.array_elements = 1;
    CHECK_THAT(snr_db(92.0, omni), WithinAbs(0.0, 1e-9));
    CHECK_THAT(snr_db(0.0, omni), WithinAbs(92.0, 1e-9));
}

TEST_CASE("reception decision is boundary inclusive", "[link_budget]") {
    CHECK(is_received(0.0, 0.0));
    CHECK_FALSE(is_received(-0.01, 0.0));
    CHECK(is_received(20.0, 0.0));
}

TEST_CASE("SNR is monotone in path loss and array size", "[link_budget]") {
    RadioConfig radio;
    double previous = snr_db(0.0, radio);
    for (double pl = 10.0; pl <= 200.0; pl += 10.0) {
        const double current = snr_db(pl, radio);
        CHECK(current < previous);
        previous = current;
    }

    for (int n : {1, 2, 4, 8, 16}) {
        RadioConfig single = radio;
        single.array_elements = n;
        RadioConfig doubled = radio;
        doubled.array_elements = 2 * n;
        CHECK_THAT(snr_db(100.0, doubled) - snr_db(100.0, single),
                   WithinAbs(2.0 * 10.0 * std::log10(2.0), 1e-9));
    }
}

TEST_CASE("maximum tolerable path loss at the default budget", "[link_budget]") {
    RadioConfig n32;
    CHECK_THAT(max_path_loss_db(n32), WithinAbs(122.103, 1e-3));
    CHECK_THAT(snr_db(max_path_loss_db(n32), n32), WithinAbs(n32.snr_threshold_db, 1e-9));

    RadioConfig n1;
    n1.array_elements = 1;
    CHECK_THAT(max_path_loss_db(n1), WithinAbs(92.0, 1e-9));
}
