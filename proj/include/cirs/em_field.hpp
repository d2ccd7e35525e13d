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

#include "cirs/phase_design.hpp"

namespace cirs {

struct Direction
{
    double azimuth = 0.0;
    double elevation = kPi / 2.0;
};

/// u = (cos az sin el, sin az sin el, cos el).
Vec3 unit_direction(const Direction& d);
Direction direction_of(const Vec3& v);

/// Far-field response across elements: exp(-j k <offset, u>).
std::vector<cplx> surface_response(const CirsLayout& layout, const Direction& direction);

/// Rank-1 reduction of the reflected channel through the surface,
///   g = sum_{m,n} exp(j Phi_{m,n}) exp(+j k <offset_{m,n}, u_in + u_out>),
/// with u_in pointing at the source and u_out at the observer. The profile from
/// phase_general at the same directions aligns every term, giving |g| = MN.
/// Grid layouts with separable profiles are summed as a product of a row sum and
/// a column sum.
cplx cascaded_gain(const CirsLayout& layout, const PhaseProfile& profile, const Direction& incident,
                   const Direction& outgoing);

/// Element-by-element sum, no factorization. Reference path for cascaded_gain.
cplx cascaded_gain_dense(const CirsLayout& layout, const PhaseProfile& profile, const Direction& incident,
                         const Direction& outgoing);

/// Spherical-wave field at rx from an isotropic unit source at tx, both in the
/// surface's local frame:
///   sum 1/(4 pi r1 r2) exp(j Phi) exp(-j k (r1 + r2)).
/// Throws std::domain_error if either point coincides with an element.
cplx fresnel_field(const CirsLayout& layout, const PhaseProfile& profile, const Vec3& tx, const Vec3& rx,
                   double amplitude = 1.0);

// Anechoic-chamber style measurement of a curved panel. The receiver moves on a
// straight line parallel to the apex tangent plane, in the curvature (x-z) plane.
struct ChamberConfig
{
    double frequency = 26e9;
    double radius = 0.3;        // curvature radius [m]; 0 or inf selects a planar panel
    int rows = 37;              // along the curved direction
    int cols = 27;
    double arc_length = 0.2;    // extent along the curved direction [m]
    double col_extent = 0.2;    // extent along the cylinder axis [m]
    double tx_distance = 1.5;   // [m]
    double tx_angle = 0.0;      // incidence angle from broadside in the x-z plane [rad]
    double rx_distance = 1.5;   // perpendicular distance of the receiver track [m]
    double rx_track_half = 0.5; // receiver moves over +-rx_track_half [m]
    int sweep_points = 201;
    double design_azimuth = 0.0;

    void validate() const;
    CirsParams surface_params() const;
};

struct PatternSweep
{
    std::vector<double> angles;   // receiver angle from broadside [rad]
    std::vector<double> field_db; // normalized to the reference sweep maximum
};

struct ChamberResult
{
    PatternSweep reference;
    PatternSweep patterned;
    double focusing_gain_db = 0.0;
};

/// Sweeps the receiver for two targets: the plain curved surface and the same
/// surface with the mirror profile at design_azimuth.
ChamberResult chamber_sweep(const ChamberConfig& config);

/// Same sweep for two arbitrary profiles on one layout.
ChamberResult chamber_sweep(const ChamberConfig& config, const CirsLayout& layout,
                            const PhaseProfile& reference, const PhaseProfile& patterned);

/// Width of the contiguous region around the sweep maximum staying within 3 dB of it,
/// in radians of receiver angle.
double main_lobe_width_3db(const PatternSweep& sweep);

/// CSV `phi_o_deg,ref_db,cirs_db`.
void write_sweep_csv(std::ostream& os, const ChamberResult& result);

} // namespace cirs
