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

#include <stdexcept>
#include <string>

namespace v2vmm {

enum class Scenario { Urban, Highway };

// Traffic density regimes of the density-extended link-state model.
enum class Density { Low, Medium, High };

// ThreeGpp: TR 37.885 two-state model (no closed-form NLOS probability).
// Extended: density-dependent three-state fits.
enum class ModelKind { ThreeGpp, Extended };

enum class LinkState { Los, Nlosv, Nlos };

// TR 37.885 Sec. 6.1.2 vehicle types: Type 1/2 are passenger cars with
// bumper/rooftop antennas, Type 3 is a truck or bus.
enum class VehicleKind { Type1, Type2, Type3 };

// Invalid numeric input or broken invariant.
struct ValidationError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Missing or inconsistent configuration (e.g. Extended model without density).
struct ConfigError : ValidationError {
    using ValidationError::ValidationError;
};

// The requested quantity has no closed form under the selected model.
struct NotAvailableError : std::domain_error {
    using std::domain_error::domain_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline const char* to_string(Scenario s) {
    return s == Scenario::Urban ? "urban" : "highway";
}

inline const char* to_string(Density d) {
    switch (d) {
        case Density::Low: return "low";
        case Density::Medium: return "medium";
        default: return "high";
    }
}

inline const char* to_string(ModelKind m) {
    return m == ModelKind::ThreeGpp ? "3gpp" : "extended";
}

inline const char* to_string(LinkState s) {
    switch (s) {
        case LinkState::Los: return "los";
        case LinkState::Nlosv: return "nlosv";
        default: return "nlos";
    }
}

inline const char* to_string(VehicleKind k) {
    switch (k) {
        case VehicleKind::Type1: return "type1";
        case VehicleKind::Type2: return "type2";
        default: return "type3";
    }
}

}  // namespace v2vmm
