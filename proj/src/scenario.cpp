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

#include "cirs/scenario.hpp"

#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace cirs {

bool Box::contains(const Vec3& p, double tol) const
{
    return (p.array() >= lo.array() - tol).all() && (p.array() <= hi.array() + tol).all();
}

bool Box::overlaps(const Box& other) const
{
    return (lo.array() < other.hi.array()).all() && (other.lo.array() < hi.array()).all();
}

bool segment_intersects_box(const Vec3& a, const Vec3& b, const Box& box)
{
    const Vec3 d = b - a;
    double t0 = 0.0;
    double t1 = 1.0;
    for (int axis = 0; axis < 3; ++axis)
    {
        if (d[axis] == 0.0)
        {
            if (a[axis] < box.lo[axis] || a[axis] > box.hi[axis]) return false;
            continue;
        }
        double ta = (box.lo[axis] - a[axis]) / d[axis];
        double tb = (box.hi[axis] - a[axis]) / d[axis];
        if (ta > tb) std::swap(ta, tb);
        t0 = std::max(t0, ta);
        t1 = std::min(t1, tb);
        if (t0 > t1) return false;
    }
    return true;
}

void HighwayConfig::validate() const
{
    if (!(length > 0.0)) throw std::invalid_argument("highway: length must be positive");
    if (lanes < 1) throw std::invalid_argument("highway: lanes must be >= 1");
    if (!(lane_width > 0.0)) throw std::invalid_argument("highway: lane_width must be positive");
    if (!(density >= 0.0)) throw std::invalid_argument("highway: density must be >= 0");
    if (!(cav_fraction >= 0.0 && cav_fraction <= 1.0))
        throw std::invalid_argument("highway: cav_fraction must lie in [0, 1]");
    if (!(vehicle_dims.array() > 0.0).all()) throw std::invalid_argument("highway: vehicle_dims must be positive");
    if (vehicle_dims.y() > lane_width) throw std::invalid_argument("highway: vehicles wider than a lane");
    if (!(antenna_height > 0.0) || !(cirs_center_height > 0.0))
        throw std::invalid_argument("highway: heights must be positive");
    if (!(tx_rx_distance >= vehicle_dims.x()))
        throw std::invalid_argument("highway: tx_rx_distance shorter than a vehicle");
    if (tx_rx_distance + vehicle_dims.x() > length)
        throw std::invalid_argument("highway: Tx and Rx do not fit on the road");
    if (tx_lane >= lanes) throw std::invalid_argument("highway: tx_lane out of range");
    if (placement_retries < 1) throw std::invalid_argument("highway: placement_retries must be >= 1");
}

Rect Scenario::relay_region(double region_length) const
{
    const Vec3 mid = midpoint();
    const double half_width = config.lanes * config.lane_width / 2.0;
    return {mid.x() - half_width, mid.x() + half_width, mid.y() - region_length / 2.0,
            mid.y() + region_length / 2.0};
}

namespace {

Vehicle make_vehicle(const HighwayConfig& cfg, int lane, double y)
{
    // World axes: x across the road, y along it.
    const Vec3 dims(cfg.vehicle_dims.y(), cfg.vehicle_dims.x(), cfg.vehicle_dims.z());
    return {Vec3(cfg.lane_center(lane), y, dims.z() / 2.0), dims, lane, false};
}

} // namespace

Scenario generate_scenario(const HighwayConfig& config, Rng& rng)
{
    config.validate();
    Scenario scn;
    scn.config = config;

    const int tx_lane = config.effective_tx_lane();
    const double half_len = config.vehicle_dims.x() / 2.0;
    const double y_tx = (config.length - config.tx_rx_distance) / 2.0;
    const double y_rx = y_tx + config.tx_rx_distance;
    scn.vehicles.push_back(make_vehicle(config, tx_lane, y_tx));
    scn.vehicles.push_back(make_vehicle(config, tx_lane, y_rx));
    scn.vehicles[0].is_cav = true;
    scn.vehicles[1].is_cav = true;
    scn.p_tx = Vec3(config.lane_center(tx_lane), y_tx, config.antenna_height);
    scn.p_rx = Vec3(config.lane_center(tx_lane), y_rx, config.antenna_height);

    const double mean_per_lane = config.density * config.length / 1000.0;
    std::uniform_real_distribution<double> position(half_len, config.length - half_len);
    for (int lane = 0; lane < config.lanes; ++lane)
    {
        int count = 0;
        if (mean_per_lane > 0.0) count = std::poisson_distribution<int>(mean_per_lane)(rng);

        const long budget = static_cast<long>(config.placement_retries) * count;
        long attempts = 0;
        for (int placed = 0; placed < count;)
        {
            if (attempts++ >= budget)
                throw std::runtime_error("generate_scenario: could not place vehicles without overlap");
            Vehicle v = make_vehicle(config, lane, position(rng));
            const Box b = v.box();
            bool clash = false;
            for (const auto& other : scn.vehicles)
                if (other.lane == lane && other.box().overlaps(b))
                {
                    clash = true;
                    break;
                }
            if (clash) continue;
            scn.vehicles.push_back(v);
            ++placed;
        }
    }

    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (std::size_t i = 2; i < scn.vehicles.size(); ++i)
        scn.vehicles[i].is_cav = unit(rng) < config.cav_fraction;
    return scn;
}

std::vector<RelaySite> relay_sites(const Scenario& scn)
{
    const int tx_lane = scn.config.effective_tx_lane();
    const double lane_x = scn.config.lane_center(tx_lane);
    std::vector<RelaySite> sites;
    for (std::size_t i = 2; i < scn.vehicles.size(); ++i)
    {
        const Vehicle& v = scn.vehicles[i];
        if (!v.is_cav || v.lane == tx_lane) continue;
        const double side = v.center.x() > lane_x ? -1.0 : 1.0;
        RelaySite s;
        s.vehicle = static_cast<int>(i);
        s.mount.normal = Vec3(side, 0.0, 0.0);
        s.mount.position = Vec3(v.center.x() + side * v.dims.x() / 2.0, v.center.y(), scn.config.cirs_center_height);
        sites.push_back(s);
    }
    return sites;
}

std::vector<RelaySite> relay_candidates(const Scenario& scn, double cirs_length)
{
    const Rect region = scn.relay_region(2.0 * cirs_length);
    std::vector<RelaySite> out;
    for (const auto& s : relay_sites(scn))
        if (region.contains(s.mount.position.x(), s.mount.position.y())) out.push_back(s);
    return out;
}

int count_blockers(const Vec3& p_a, const Vec3& p_b, const Scenario& scn)
{
    int count = 0;
    for (const auto& v : scn.vehicles)
    {
        const Box b = v.box();
        if (b.contains(p_a) || b.contains(p_b)) continue;
        if (segment_intersects_box(p_a, p_b, b)) ++count;
    }
    return count;
}

void write_scenario_csv(std::ostream& os, const Scenario& scn)
{
    os << "vehicle_id,x,y,z,len,wid,hgt,is_cav\n";
    char buf[192];
    for (std::size_t i = 0; i < scn.vehicles.size(); ++i)
    {
        const Vehicle& v = scn.vehicles[i];
        std::snprintf(buf, sizeof(buf), "%zu,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%d\n", i, v.center.x(), v.center.y(),
                      v.center.z(), v.dims.y(), v.dims.x(), v.dims.z(), v.is_cav ? 1 : 0);
        os << buf;
    }
}

} // namespace cirs
