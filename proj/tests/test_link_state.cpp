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
// Expected values below were frozen from independent evaluation of the
// published closed forms (REPL, full double precision) before the
// implementation existed.

#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cmath>
#include <optional>

#include "oracles.hpp"
#include "v2vmm/link_state.hpp"

using namespace v2vmm;
using Catch::Matchers::WithinAbs;

namespace {
constexpr std::optional<Density> kNoDensity = std::nullopt;
}

TEST_CASE("3GPP LOS probabilities", "[link_state]") {
    CHECK_THAT(los_probability(ModelKind::ThreeGpp, Scenario::Highway, kNoDensity, 100.0),
               WithinAbs(0.840313, 1e-9));
    CHECK_THAT(los_probability(ModelKind::ThreeGpp, Scenario::Highway, kNoDensity, 300.0),
               WithinAbs(0.608417, 1e-9));
    CHECK_THAT(los_probability(ModelKind::ThreeGpp, Scenario::Highway, kNoDensity, 500.0),
               WithinAbs(0.515, 1e-9));
    // 1.05 e^{-0.0228} > 1, clamped.
    CHECK(los_probability(ModelKind::ThreeGpp, Scenario::Urban, kNoDensity, 2.0) == 1.0);
    CHECK_THAT(nlosv_probability(ModelKind::ThreeGpp, Scenario::Highway, kNoDensity, 100.0),
               WithinAbs(0.159687, 1e-9));
}

TEST_CASE("3GPP highway branch near-continuity at 475 m", "[link_state]") {
    const double left = los_probability(ModelKind::ThreeGpp, Scenario::Highway, kNoDensity, 475.0);
    const double right =
        los_probability(ModelKind::ThreeGpp, Scenario::Highway, kNoDensity, 475.0 + 1e-9);
    CHECK_THAT(left, WithinAbs(0.5434058, 1e-6));
    CHECK_THAT(right, WithinAbs(0.54, 1e-6));
    CHECK(std::abs(left - right) <= 0.005);
}

TEST_CASE("extended-model probabilities", "[link_state]") {
    CHECK_THAT(los_probability(ModelKind::Extended, Scenario::Urban, Density::Low, 100.0),
               WithinAbs(0.4507295641, 1e-9));
    CHECK_THAT(nlosv_probability(ModelKind::Extended, Scenario::Urban, Density::Medium, 100.0),
               WithinAbs(0.3001746438, 1e-9));
    CHECK_THAT(los_probability(ModelKind::Extended, Scenario::Highway, Density::Low, 200.0),
               WithinAbs(0.76, 1e-9));
    CHECK_THAT(*nlos_probability(ModelKind::Extended, Scenario::Highway, Density::Low, 200.0),
               WithinAbs(0.1081, 1e-9));
    CHECK_THAT(nlosv_probability(ModelKind::Extended, Scenario::Highway, Density::Low, 200.0),
               WithinAbs(0.1319, 1e-9));
    CHECK_THAT(*nlos_probability(ModelKind::Extended, Scenario::Urban, Density::Low, 100.0),
               WithinAbs(0.3269965253, 1e-9));
}

TEST_CASE("3GPP NLOS probability has no closed form", "[link_state]") {
    CHECK_FALSE(nlos_probability(ModelKind::ThreeGpp, Scenario::Urban, kNoDensity, 100.0));
    CHECK_FALSE(nlos_probability(ModelKind::ThreeGpp, Scenario::Highway, kNoDensity, 10.0));
}

TEST_CASE("extended model requires a density", "[link_state]") {
    CHECK_THROWS_AS(los_probability(ModelKind::Extended, Scenario::Urban, kNoDensity, 100.0),
                    ConfigError);
    CHECK_THROWS_AS(state_distribution(ModelKind::Extended, Scenario::Highway, kNoDensity, 50.0),
                    ConfigError);
    CHECK_THROWS_AS(los_probability(ModelKind::Extended, Scenario::Urban, Density::Low, 0.0),
                    ValidationError);
}

TEST_CASE("state distributions", "[link_state]") {
    const auto two_state =
        state_distribution(ModelKind::ThreeGpp, Scenario::Highway, kNoDensity, 100.0);
    CHECK_THAT(two_state.p_los, WithinAbs(0.840313, 1e-9));
    CHECK_THAT(two_state.p_nlosv, WithinAbs(0.159687, 1e-9));
    CHECK(two_state.p_nlos == 0.0);
    CHECK(two_state.p_los + two_state.p_nlosv + two_state.p_nlos == 1.0);

    const auto urban_high =
        state_distribution(ModelKind::Extended, Scenario::Urban, Density::High, 100.0);
    CHECK_THAT(urban_high.p_los, WithinAbs(0.163721, 1e-5));
    CHECK_THAT(urban_high.p_nlosv, WithinAbs(0.383467, 1e-5));
    CHECK_THAT(urban_high.p_nlos, WithinAbs(0.452812, 1e-5));
}

TEST_CASE("distributions normalize and stay in range everywhere", "[link_state]") {
    oracle::TestRng rng(2024);
    const std::array<std::optional<Density>, 3> densities = {Density::Low, Density::Medium,
                                                             Density::High};
    for (int i = 0; i < 1000; ++i) {
        const auto model = rng.uniform_int(0, 1) ? ModelKind::Extended : ModelKind::ThreeGpp;
        const auto scenario = rng.uniform_int(0, 1) ? Scenario::Urban : Scenario::Highway;
        const auto density = densities[rng.uniform_int(0, 2)];
        const double d = std::exp(rng.uniform(std::log(1e-3), std::log(1e4)));

        for (const double p : {los_probability(model, scenario, density, d),
                               nlosv_probability(model, scenario, density, d),
                               nlos_probability(model, scenario, density, d).value_or(0.0)}) {
            CHECK(p >= 0.0);
            CHECK(p <= 1.0);
        }
        const auto dist = state_distribution(model, scenario, density, d);
        CHECK(std::abs(dist.p_los + dist.p_nlosv + dist.p_nlos - 1.0) <= 1e-12);
        CHECK(dist.raw_sum > 0.0);
    }
}

TEST_CASE("LOS probability is non-increasing in distance (urban)", "[link_state]") {
    for (double d = 1.0; d < 1000.0; d += 1.0) {
        CHECK(los_probability(ModelKind::ThreeGpp, Scenario::Urban, kNoDensity, d) + 1e-15 >=
              los_probability(ModelKind::ThreeGpp, Scenario::Urban, kNoDensity, d + 1.0));
        for (const Density density : {Density::Low, Density::Medium, Density::High})
            CHECK(los_probability(ModelKind::Extended, Scenario::Urban, density, d) + 1e-15 >=
                  los_probability(ModelKind::Extended, Scenario::Urban, density, d + 1.0));
    }
}

TEST_CASE("lower traffic density means higher LOS probability", "[link_state]") {
    for (const Scenario scenario : {Scenario::Urban, Scenario::Highway}) {
        for (double d = 50.0; d <= 400.0; d += 3.5) {
            const double low = los_probability(ModelKind::Extended, scenario, Density::Low, d);
            const double medium =
                los_probability(ModelKind::Extended, scenario, Density::Medium, d);
            const double high = los_probability(ModelKind::Extended, scenario, Density::High, d);
            CHECK(low >= medium);
            CHECK(medium >= high);
        }
    }
}

TEST_CASE("extended urban NLOSv peaks at mid range", "[link_state]") {
    for (const Density density : {Density::Low, Density::Medium, Density::High}) {
        const double at_5 = nlosv_probability(ModelKind::Extended, Scenario::Urban, density, 5.0);
        const double at_50 =
            nlosv_probability(ModelKind::Extended, Scenario::Urban, density, 50.0);
        const double at_400 =
            nlosv_probability(ModelKind::Extended, Scenario::Urban, density, 400.0);
        CHECK(at_50 > at_5);
        CHECK(at_50 > at_400);
    }
}

TEST_CASE("sample_state follows its distribution", "[link_state]") {
    Pcg32 rng(314, 0);
    StateDistribution pure_los{1.0, 0.0, 0.0, 1.0};
    StateDistribution pure_nlos{0.0, 0.0, 1.0, 1.0};
    for (int i = 0; i < 100; ++i) {
        CHECK(sample_state(pure_los, rng) == LinkState::Los);
        CHECK(sample_state(pure_nlos, rng) == LinkState::Nlos);
    }

    StateDistribution mixed{0.5, 0.3, 0.2, 1.0};
    int counts[3] = {0, 0, 0};
    const int n = 100000;
    for (int i = 0; i < n; ++i) ++counts[static_cast<int>(sample_state(mixed, rng))];
    CHECK_THAT(counts[0] / static_cast<double>(n), WithinAbs(0.5, 0.01));
    CHECK_THAT(counts[1] / static_cast<double>(n), WithinAbs(0.3, 0.01));
    CHECK_THAT(counts[2] / static_cast<double>(n), WithinAbs(0.2, 0.01));
}
