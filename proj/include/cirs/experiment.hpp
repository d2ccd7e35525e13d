// SPDX-License-Identifier: Apache-2.0
//
// cirs-sim: conformal reflecting surface simulator for vehicular links
// Copyright (C) 2026 The cirs-sim Authors
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

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "cirs/beam_select.hpp"

namespace cirs {

enum class Mode
{
    direct, // direct link only
    cirs,   // pre-configured mirrors on CAVs inside the relay region
    cris,   // ideally reconfigured surfaces on every CAV
};

std::string_view to_string(Mode mode);
Mode mode_from_string(std::string_view name);

enum class Averaging
{
    db_mean,     // mean of per-drop dB values
    linear_mean, // dB of the mean linear SNR
};

struct SweepConfig
{
    std::vector<double> rho_list{10.0, 50.0};
    std::vector<double> p_grid{0.0, 0.25, 0.5, 0.75, 1.0};
    int drops_per_point = 1000;
    std::vector<Mode> modes{Mode::direct, Mode::cirs, Mode::cris};
    std::uint64_t global_seed = 1;
    int threads = 1;

    HighwayConfig highway;
    LinkParams link;
    // Surface geometry; spacings given in wavelengths and resolved at run time.
    int cirs_rows = 400;
    int cirs_cols = 400;
    double cirs_row_spacing_wl = 0.25;
    double cirs_col_spacing_wl = 0.25;
    double cirs_radius = 8.0;
    double design_azimuth = deg2rad(80.0);

    double snr_floor_db = -50.0;
    Averaging averaging = Averaging::db_mean;

    void validate() const;
    CirsParams surface_params() const;
};

// Shared, read-only state of a sweep: the surface and its mirror profile.
struct SurfaceModel
{
    CirsLayout layout;
    PhaseProfile mirror;

    explicit SurfaceModel(const SweepConfig& config);
};

struct DropResult
{
    double snr_db = 0.0;  // after the floor
    bool direct_blocked = false;
    int candidates = 0;
    BeamTarget chosen;
    int near_field_terms = 0;
};

/// Seed of one drop. It does not depend on the mode or on P, so every mode and
/// every CAV fraction sees the same traffic realization for a given drop index.
std::uint64_t drop_seed(std::uint64_t global_seed, double rho, int drop);

/// Channel and beam selection for one mode on an existing scenario.
DropResult evaluate_drop(const Scenario& scn, Mode mode, const SweepConfig& config, const SurfaceModel& surface,
                         std::uint64_t seed);

/// Generates the scenario from `seed` and evaluates `mode` on it.
DropResult run_drop(const SweepConfig& config, const SurfaceModel& surface, double cav_fraction, double rho,
                    Mode mode, std::uint64_t seed);

struct SnrStats
{
    Mode mode = Mode::direct;
    double rho = 0.0;
    double cav_fraction = 0.0;
    double mean_db = 0.0;
    double std_db = 0.0;
    int drop_count = 0;
    int failed_drops = 0;
    double blockage_rate = 0.0;
    double relay_rate = 0.0; // fraction of drops won by a relayed beam

    double std_error() const { return drop_count > 0 ? std_db / std::sqrt(static_cast<double>(drop_count)) : 0.0; }
};

struct SweepResult
{
    std::vector<SnrStats> rows; // ordered by rho, P, mode
    int near_field_terms = 0;
    int failed_drops = 0;

    const SnrStats& at(Mode mode, double rho, double cav_fraction) const;
};

SweepResult run_v2v_sweep(const SweepConfig& config);

/// CSV `mode,rho,P,mean_snr_db,std_snr_db,drops,blockage_rate`.
void write_results_csv(std::ostream& os, const SweepResult& result);

struct ChamberRun
{
    ChamberResult result;
    double lobe_width_reference = 0.0;
    double lobe_width_patterned = 0.0;
    std::string summary;
};

ChamberRun run_chamber(const ChamberConfig& config);

} // namespace cirs
