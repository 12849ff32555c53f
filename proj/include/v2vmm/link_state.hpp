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
// LOS / NLOSv / NLOS link-state probabilities.
//
// Two models are provided:
//  * ThreeGpp  - TR 37.885 Table 6.2-1. Gives P_LOS and P_NLOSv = 1 - P_LOS
//                only; the NLOS state is geometric in that methodology, so
//                no closed-form P_NLOS exists (nlos_probability returns
//                nullopt and the distribution is two-state).
//  * Extended  - density-dependent fits for low/medium/high vehicular
//                traffic in urban and highway scenarios, with a
//                probabilistic NLOS state.

#pragma once

#include <algorithm>
#include <cmath>
#include <optional>

#include "v2vmm/rng.hpp"
#include "v2vmm/types.hpp"

namespace v2vmm {

struct StateDistribution {
    double p_los = 0.0;
    double p_nlosv = 0.0;
    double p_nlos = 0.0;
    // Sum of the clamped per-state expressions before renormalization; the
    // fits are independent, so this need not be exactly 1.
    double raw_sum = 0.0;

    bool operator==(const StateDistribution&) const = default;
};

namespace detail {

inline double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

struct Quadratic {
    double a, b, c;
    double operator()(double d) const { return (a * d + b) * d + c; }
};

// Exponential-decay fit A * exp(-k d).
struct ExpDecay {
    double amplitude, rate;
    double operator()(double d) const { return amplitude * std::exp(-rate * d); }
};

// Lognormal-shaped fit 1/(s d) * exp(-(ln d - mu)^2 / v).
struct LogShape {
    double scale, mu, v;
    double operator()(double d) const {
        const double t = std::log(d) - mu;
        return 1.0 / (scale * d) * std::exp(-t * t / v);
    }
};

// Highway LOS quadratic coefficients per density.
inline constexpr Quadratic kExtHighwayLos[3] = {
    {1.5e-6, -0.0015, 1.0},  // low
    {2.7e-6, -0.0025, 1.0},  // medium
    {3.2e-6, -0.0030, 1.0},  // high
};

// Highway NLOS quadratic coefficients per density.
inline constexpr Quadratic kExtHighwayNlos[3] = {
    {-2.9e-7, 0.00059, 0.0017},
    {-3.7e-7, 0.00061, 0.0150},
    {-4.1e-7, 0.00067, 0.0},
};

// Urban LOS exponential fits per density.
inline constexpr ExpDecay kExtUrbanLos[3] = {
    {0.8548, 0.0064},
    {0.8372, 0.0114},
    {0.8962, 0.0170},
};

// Urban NLOSv lognormal-shaped fits per density.
inline constexpr LogShape kExtUrbanNlosv[3] = {
    {0.0396, 5.2718, 3.4827},
    {0.0312, 5.0063, 2.4544},
    {0.0242, 5.0115, 2.2092},
};

inline int density_index(const std::optional<Density>& density, const char* op) {
    if (!density)
        throw ConfigError(std::string(op) + ": the extended model requires a traffic density");
    return static_cast<int>(*density);
}

inline void check_distance(double d_m) {
    if (!(d_m > 0.0)) throw ValidationError("distance must be positive");
}

}  // namespace detail

inline double los_probability(ModelKind model, Scenario scenario,
                              const std::optional<Density>& density, double d_m) {
    detail::check_distance(d_m);
    if (model == ModelKind::ThreeGpp) {
        // TR 37.885 Table 6.2-1.
        if (scenario == Scenario::Highway) {
            if (d_m <= 475.0)
                return detail::clamp01(detail::Quadratic{2.1013e-6, -0.002, 1.0193}(d_m));
            return std::max(0.0, 0.54 - 0.001 * (d_m - 475.0));
        }
        return std::min(1.0, 1.05 * std::exp(-0.0114 * d_m));
    }
    const int i = detail::density_index(density, "los_probability");
    if (scenario == Scenario::Highway) return detail::clamp01(detail::kExtHighwayLos[i](d_m));
    return detail::clamp01(detail::kExtUrbanLos[i](d_m));
}

inline std::optional<double> nlos_probability(ModelKind model, Scenario scenario,
                                              const std::optional<Density>& density, double d_m) {
    detail::check_distance(d_m);
    if (model == ModelKind::ThreeGpp) return std::nullopt;  // geometric, no closed form
    const int i = detail::density_index(density, "nlos_probability");
    if (scenario == Scenario::Highway) return detail::clamp01(detail::kExtHighwayNlos[i](d_m));
    // Urban: residual state.
    const double p_los = los_probability(model, scenario, density, d_m);
    const double p_nlosv = detail::clamp01(detail::kExtUrbanNlosv[i](d_m));
    return detail::clamp01(1.0 - p_los - p_nlosv);
}

inline double nlosv_probability(ModelKind model, Scenario scenario,
                                const std::optional<Density>& density, double d_m) {
    detail::check_distance(d_m);
    if (model == ModelKind::ThreeGpp)
        return 1.0 - los_probability(model, scenario, density, d_m);
    const int i = detail::density_index(density, "nlosv_probability");
    if (scenario == Scenario::Urban) return detail::clamp01(detail::kExtUrbanNlosv[i](d_m));
    // Highway: residual state.
    const double p_los = los_probability(model, scenario, density, d_m);
    const double p_nlos = detail::clamp01(detail::kExtHighwayNlos[i](d_m));
    return detail::clamp01(1.0 - p_los - p_nlos);
}

// Assembles the three clamped probabilities and renormalizes them to a valid
// distribution (the extended fits were made independently and their sum can
// drift from 1). ThreeGpp yields the exact two-state distribution.
inline StateDistribution state_distribution(ModelKind model, Scenario scenario,
                                            const std::optional<Density>& density, double d_m) {
    StateDistribution dist;
    if (model == ModelKind::ThreeGpp) {
        dist.p_los = los_probability(model, scenario, density, d_m);
        dist.p_nlosv = 1.0 - dist.p_los;
        dist.p_nlos = 0.0;
        dist.raw_sum = 1.0;
        return dist;
    }
    dist.p_los = los_probability(model, scenario, density, d_m);
    dist.p_nlosv = nlosv_probability(model, scenario, density, d_m);
    dist.p_nlos = *nlos_probability(model, scenario, density, d_m);
    dist.raw_sum = dist.p_los + dist.p_nlosv + dist.p_nlos;
    if (!(dist.raw_sum > 0.0))
        throw NotAvailableError("state probabilities sum to zero; model out of its domain");
    dist.p_los /= dist.raw_sum;
    dist.p_nlosv /= dist.raw_sum;
    dist.p_nlos /= dist.raw_sum;
    return dist;
}

// Inverse-CDF categorical draw.
inline LinkState sample_state(const StateDistribution& dist, Pcg32& rng) {
    const double u = rng.uniform();
    if (u < dist.p_los) return LinkState::Los;
    if (u < dist.p_los + dist.p_nlosv) return LinkState::Nlosv;
    return LinkState::Nlos;
}

}  // namespace v2vmm
