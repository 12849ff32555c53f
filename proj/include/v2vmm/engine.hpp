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
// Monte Carlo experiment runner producing distance-swept curves.
//
// Reproducibility contract: every (grid point, trial) pair owns an
// independent PCG32 substream derived from the experiment seed, and points
// are reduced in trial order, so a CurveSeries is a pure function of its
// ExperimentSpec regardless of worker count or scheduling.

#pragma once

#include <array>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "v2vmm/link_budget.hpp"
#include "v2vmm/link_state.hpp"
#include "v2vmm/path_loss.hpp"
#include "v2vmm/rng.hpp"
#include "v2vmm/scenario.hpp"
#include "v2vmm/types.hpp"

namespace v2vmm {

enum class Metric { StateProbability, PathLoss, Prr };

// Sub-mode for path-loss curves; doubles as the series selector for
// probability curves (Overall is invalid there).
enum class PathLossMode { Los, Nlosv, Nlos, Overall };

inline const char* to_string(Metric m) {
    switch (m) {
        case Metric::StateProbability: return "prob";
        case Metric::PathLoss: return "pathloss";
        default: return "prr";
    }
}

inline const char* to_string(PathLossMode m) {
    switch (m) {
        case PathLossMode::Los: return "los";
        case PathLossMode::Nlosv: return "nlosv";
        case PathLossMode::Nlos: return "nlos";
        default: return "overall";
    }
}

struct ExperimentSpec {
    Metric metric = Metric::PathLoss;
    ModelKind model = ModelKind::Extended;
    Scenario scenario = Scenario::Urban;
    std::optional<Density> density = Density::Medium;
    PathLossMode mode = PathLossMode::Los;
    RadioConfig radio;
    TrafficConfig traffic;
    double d_min_m = 2.0;
    double d_max_m = 499.0;
    int n_points = 30;         // probability / path-loss grids
    double bin_width_m = 20.0; // PRR distance bins
    int trials_per_point = 10000;
    std::uint64_t seed = 1;
    // Pins shadowing at 0 and the blockage draw at its mean; the sample mean
    // then equals the analytic mean exactly.
    bool freeze_sigmas = false;

    void validate() const {
        if (!(d_min_m > 0.0) || d_min_m > d_max_m)
            throw ValidationError("need 0 < d_min <= d_max");
        if (n_points < 1) throw ValidationError("need at least one grid point");
        if (!(bin_width_m > 0.0)) throw ValidationError("bin width must be positive");
        if (trials_per_point < 1) throw ValidationError("need at least one trial per point");
        radio.validate();
        traffic.validate();
    }

    bool operator==(const ExperimentSpec&) const = default;
};

struct CurvePoint {
    double d_m = 0.0;
    double value = 0.0;
    double std_error = 0.0;
    long n_trials = 0;

    bool operator==(const CurvePoint&) const = default;
};

struct CurveSeries {
    std::string metric;
    std::vector<CurvePoint> points;
    // Analytic mean per point, attached by path-loss runs for cross-checks.
    std::vector<double> analytic;
    ExperimentSpec spec;

    bool operator==(const CurveSeries&) const = default;
};

// Deterministic, collision-free mapping from (seed, point, trial) to an
// independent stream: the stream id places point and trial in disjoint bit
// ranges, and distinct PCG32 stream ids never share a sequence.
inline Pcg32 derive_substream(std::uint64_t seed, std::uint64_t point_index,
                              std::uint64_t trial_index) {
    return Pcg32(seed, (point_index << 32u) | (trial_index & 0xffffffffULL));
}

namespace detail {

// Runs body(0..n-1) on up to `workers` threads (0 = hardware concurrency).
// Each index writes only its own slot, so scheduling cannot affect results.
inline void parallel_for_index(std::size_t n, int workers,
                               const std::function<void(std::size_t)>& body) {
    std::size_t nthreads = workers > 0 ? static_cast<std::size_t>(workers)
                                       : std::thread::hardware_concurrency();
    if (nthreads == 0) nthreads = 1;
    nthreads = std::min(nthreads, n);
    if (nthreads <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (std::size_t t = 0; t < nthreads; ++t) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= n) return;
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error) error = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& thread : pool) thread.join();
    if (error) std::rethrow_exception(error);
}

inline std::vector<double> linear_grid(double lo, double hi, int n) {
    std::vector<double> grid;
    grid.reserve(static_cast<std::size_t>(n));
    if (n == 1 || lo == hi) {
        grid.push_back(lo);
        return grid;
    }
    for (int i = 0; i < n; ++i)
        grid.push_back(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1));
    return grid;
}

struct Bin {
    double lo, hi, center;
};

// Bins centered on integer multiples of `width`, clipped to [lo, hi]; a
// degenerate lo == hi request yields one zero-width bin at that distance.
inline std::vector<Bin> distance_bins(double lo, double hi, double width) {
    std::vector<Bin> bins;
    if (lo == hi) {
        bins.push_back({lo, lo, lo});
        return bins;
    }
    for (std::int64_t k = 0;; ++k) {
        const double center = static_cast<double>(k) * width;
        const double bin_lo = center - width / 2.0;
        if (bin_lo >= hi) break;
        const double bin_hi = center + width / 2.0;
        if (bin_hi <= lo) continue;
        const double clip_lo = std::max(bin_lo, lo);
        const double clip_hi = std::min(bin_hi, hi);
        bins.push_back({clip_lo, clip_hi, (clip_lo + clip_hi) / 2.0});
    }
    return bins;
}

inline LinkState mode_state(PathLossMode mode) {
    switch (mode) {
        case PathLossMode::Los: return LinkState::Los;
        case PathLossMode::Nlosv: return LinkState::Nlosv;
        default: return LinkState::Nlos;
    }
}

// E[A_NLOSv mean] over endpoint and blocker classes drawn from the mix.
inline double expected_blockage_mean_db(const TrafficConfig& traffic, double d_m) {
    double expectation = 0.0;
    for (const auto& [tx_kind, tx_frac] : traffic.type_mix)
        for (const auto& [rx_kind, rx_frac] : traffic.type_mix)
            for (const auto& [blk_kind, blk_frac] : traffic.type_mix) {
                const double weight = tx_frac * rx_frac * blk_frac;
                if (weight == 0.0) continue;
                const BlockageParams params = vehicle_blockage_params(
                    VehicleClass::of(tx_kind).antenna_height_m,
                    VehicleClass::of(rx_kind).antenna_height_m,
                    VehicleClass::of(blk_kind).height_m);
                expectation += weight * blockage_mean_db(d_m, params);
            }
    return expectation;
}

inline double analytic_path_loss_mean_db(const ExperimentSpec& spec, double d_m,
                                         const OxygenTable& table) {
    const double fc = spec.radio.carrier_ghz;
    switch (spec.mode) {
        case PathLossMode::Los: return los_path_loss_db(spec.scenario, d_m, fc, table);
        case PathLossMode::Nlos: return nlos_path_loss_db(d_m, fc, table);
        case PathLossMode::Nlosv:
            return los_path_loss_db(spec.scenario, d_m, fc, table) +
                   expected_blockage_mean_db(spec.traffic, d_m);
        default: {
            const auto dist = state_distribution(spec.model, spec.scenario, spec.density, d_m);
            const double los = los_path_loss_db(spec.scenario, d_m, fc, table);
            return dist.p_los * los +
                   dist.p_nlosv * (los + expected_blockage_mean_db(spec.traffic, d_m)) +
                   dist.p_nlos * nlos_path_loss_db(d_m, fc, table);
        }
    }
}

// One channel realization with the fixed per-trial draw order:
// [d for PRR bins is drawn by the caller first,] tx class, rx class,
// state (Overall/PRR only), blocker class (NLOSv only), shadowing,
// blockage. N never enters the draws, so runs differing only in array size
// share realizations trial for trial.
inline ChannelSample trial_sample(const ExperimentSpec& spec, double d_m,
                                  std::optional<LinkState> fixed_state, Pcg32& rng,
                                  const OxygenTable& table) {
    const VehicleClass tx = VehicleClass::of(draw_vehicle_kind(spec.traffic.type_mix, rng));
    const VehicleClass rx = VehicleClass::of(draw_vehicle_kind(spec.traffic.type_mix, rng));
    const LinkState state =
        fixed_state ? *fixed_state
                    : sample_state(
                          state_distribution(spec.model, spec.scenario, spec.density, d_m), rng);
    double h_blk = 1.0;
    if (state == LinkState::Nlosv)
        h_blk = pick_blocker_class(spec.traffic, rng).height_m;
    const SamplingOptions options{!spec.freeze_sigmas, !spec.freeze_sigmas};
    return sample_channel(state, spec.scenario, d_m, spec.radio.carrier_ghz,
                          tx.antenna_height_m, rx.antenna_height_m, h_blk, rng, table, options);
}

}  // namespace detail

// Analytic sweep of the state distribution; no randomness, trials ignored.
// Returns the LOS, NLOSv and NLOS series in that order.
inline std::array<CurveSeries, 3> run_probability_curves(const ExperimentSpec& spec) {
    spec.validate();
    const auto grid = detail::linear_grid(spec.d_min_m, spec.d_max_m, spec.n_points);
    std::array<CurveSeries, 3> series;
    series[0].metric = "p_los";
    series[1].metric = "p_nlosv";
    series[2].metric = "p_nlos";
    for (auto& s : series) {
        s.spec = spec;
        s.spec.metric = Metric::StateProbability;
        s.points.reserve(grid.size());
    }
    for (const double d : grid) {
        const auto dist = state_distribution(spec.model, spec.scenario, spec.density, d);
        series[0].points.push_back({d, dist.p_los, 0.0, 0});
        series[1].points.push_back({d, dist.p_nlosv, 0.0, 0});
        series[2].points.push_back({d, dist.p_nlos, 0.0, 0});
    }
    return series;
}

// Monte Carlo path-loss sweep. Reports the dB-domain sample mean and its
// standard error per grid point, with the analytic mean attached.
inline CurveSeries run_path_loss_curve(const ExperimentSpec& spec,
                                       const OxygenTable& table = OxygenTable::standard(),
                                       int workers = 0) {
    spec.validate();
    if (spec.mode == PathLossMode::Overall && spec.model == ModelKind::ThreeGpp)
        throw NotAvailableError(
            "overall path loss needs an NLOS probability; the 3GPP model has no closed form");
    if (spec.mode == PathLossMode::Overall)
        state_distribution(spec.model, spec.scenario, spec.density, spec.d_min_m);  // density check

    const auto grid = detail::linear_grid(spec.d_min_m, spec.d_max_m, spec.n_points);
    CurveSeries series;
    series.metric = std::string("pathloss_") + to_string(spec.mode);
    series.spec = spec;
    series.spec.metric = Metric::PathLoss;
    series.points.resize(grid.size());
    series.analytic.resize(grid.size());

    const std::optional<LinkState> fixed_state =
        spec.mode == PathLossMode::Overall ? std::nullopt
                                           : std::optional<LinkState>(detail::mode_state(spec.mode));
    const long trials = spec.trials_per_point;

    detail::parallel_for_index(grid.size(), workers, [&](std::size_t i) {
        const double d = grid[i];
        double mean = 0.0;
        double m2 = 0.0;  // Welford, in trial order
        for (long t = 0; t < trials; ++t) {
            Pcg32 rng = derive_substream(spec.seed, i, static_cast<std::uint64_t>(t));
            const ChannelSample sample = detail::trial_sample(spec, d, fixed_state, rng, table);
            const double delta = sample.total_db - mean;
            mean += delta / static_cast<double>(t + 1);
            m2 += delta * (sample.total_db - mean);
        }
        const double sd = trials > 1 ? std::sqrt(m2 / static_cast<double>(trials - 1)) : 0.0;
        series.points[i] = {d, mean, sd / std::sqrt(static_cast<double>(trials)), trials};
        series.analytic[i] = detail::analytic_path_loss_mean_db(spec, d, table);
    });
    return series;
}

// Monte Carlo packet-reception sweep over distance bins. Within each bin
// the distance is drawn uniformly; requires the extended model (the PRR mix
// needs all three state probabilities).
inline CurveSeries run_prr_curve(const ExperimentSpec& spec,
                                 const OxygenTable& table = OxygenTable::standard(),
                                 int workers = 0) {
    spec.validate();
    if (spec.model == ModelKind::ThreeGpp)
        throw NotAvailableError(
            "PRR needs an NLOS probability; the 3GPP model has no closed form");
    state_distribution(spec.model, spec.scenario, spec.density, spec.d_min_m);  // density check

    const auto bins = detail::distance_bins(spec.d_min_m, spec.d_max_m, spec.bin_width_m);
    CurveSeries series;
    series.metric = "prr";
    series.spec = spec;
    series.spec.metric = Metric::Prr;
    series.points.resize(bins.size());

    const long trials = spec.trials_per_point;
    detail::parallel_for_index(bins.size(), workers, [&](std::size_t i) {
        const detail::Bin bin = bins[i];
        long received = 0;
        for (long t = 0; t < trials; ++t) {
            Pcg32 rng = derive_substream(spec.seed, i, static_cast<std::uint64_t>(t));
            const double d = bin.lo + (bin.hi - bin.lo) * rng.uniform();
            const ChannelSample sample = detail::trial_sample(spec, d, std::nullopt, rng, table);
            if (is_received(snr_db(sample.total_db, spec.radio), spec.radio.snr_threshold_db))
                ++received;
        }
        const double p = static_cast<double>(received) / static_cast<double>(trials);
        series.points[i] = {bin.center, p,
                            std::sqrt(p * (1.0 - p) / static_cast<double>(trials)), trials};
    });
    return series;
}

}  // namespace v2vmm
