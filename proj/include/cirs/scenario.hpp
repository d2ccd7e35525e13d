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

#include <iosfwd>
#include <vector>

#include "cirs/channel.hpp"

namespace cirs {

struct Box
{
    Vec3 lo = Vec3::Zero();
    Vec3 hi = Vec3::Zero();

    bool contains(const Vec3& p, double tol = 1e-9) const;
    bool overlaps(const Box& other) const; // open interiors; touching faces do not overlap
};

/// Closed segment vs closed box (slab test). Grazing contact counts as a hit.
bool segment_intersects_box(const Vec3& a, const Vec3& b, const Box& box);

struct HighwayConfig
{
    double length = 500.0;
    int lanes = 5;
    double lane_width = 5.0;
    double density = 10.0;      // vehicles per km per lane
    double cav_fraction = 0.5;
    Vec3 vehicle_dims{5.0, 1.8, 1.5}; // length (along y), width, height
    double antenna_height = 0.75;
    double cirs_center_height = 0.75;
    double tx_rx_distance = 100.0;
    int tx_lane = -1;          // -1 selects the center lane
    int placement_retries = 100; // rejection budget per vehicle

    int effective_tx_lane() const { return tx_lane >= 0 ? tx_lane : lanes / 2; }
    double lane_center(int lane) const { return (lane + 0.5) * lane_width - lanes * lane_width / 2.0; }
    void validate() const;
};

struct Vehicle
{
    Vec3 center = Vec3::Zero(); // box center
    Vec3 dims = Vec3::Zero();
    int lane = 0;
    bool is_cav = false;

    Box box() const { return {center - dims / 2.0, center + dims / 2.0}; }
};

struct Rect
{
    double x_min = 0.0, x_max = 0.0, y_min = 0.0, y_max = 0.0;
    bool contains(double x, double y) const { return x >= x_min && x <= x_max && y >= y_min && y <= y_max; }
};

// A reflecting surface on a CAV, on the vehicle side facing the Tx-Rx lane.
struct RelaySite
{
    int vehicle = -1;
    SurfaceMount mount;
};

struct Scenario
{
    HighwayConfig config;
    std::vector<Vehicle> vehicles; // [0] is the Tx vehicle, [1] the Rx vehicle
    Vec3 p_tx = Vec3::Zero();
    Vec3 p_rx = Vec3::Zero();

    static constexpr int tx_vehicle = 0;
    static constexpr int rx_vehicle = 1;

    Vec3 midpoint() const { return (p_tx + p_rx) / 2.0; }

    /// W_rel x L_rel around the Tx-Rx midpoint, W_rel the road width.
    Rect relay_region(double region_length) const;
};

/// One Poisson drop. Positions are drawn first and CAV flags afterwards, so for a
/// fixed RNG state the vehicle positions do not depend on cav_fraction and the
/// CAV set grows monotonically with it. Throws std::runtime_error when the
/// rejection budget is exhausted.
Scenario generate_scenario(const HighwayConfig& config, Rng& rng);

/// Every CAV except Tx and Rx that can face the Tx-Rx lane, i.e. not driving in it.
std::vector<RelaySite> relay_sites(const Scenario& scn);

/// Sites whose surface center lies in the relay region of length 2 * cirs_length.
std::vector<RelaySite> relay_candidates(const Scenario& scn, double cirs_length);

/// Vehicles whose box is crossed by the segment, ignoring boxes containing either endpoint.
int count_blockers(const Vec3& p_a, const Vec3& p_b, const Scenario& scn);

/// CSV `vehicle_id,x,y,z,len,wid,hgt,is_cav`.
void write_scenario_csv(std::ostream& os, const Scenario& scn);

} // namespace cirs
