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
#include <optional>
#include <string_view>
#include <vector>

#include "cirs/geometry.hpp"

namespace cirs {

// Incidence and reflection directions in the surface's local frame. Azimuth is
// measured from the local x axis (the outward normal at the apex) in the x-y
// plane, elevation from the local z axis. Both directions point away from the
// surface, towards the source and towards the observer respectively.
struct AngleSpec
{
    double azimuth_in = 0.0;
    double elevation_in = kPi / 2.0;
    double azimuth_out = 0.0;
    double elevation_out = kPi / 2.0;

    /// Mirror design: elevations at 90 deg, azimuth_out = -azimuth_in = design_azimuth.
    static AngleSpec mirror(double design_azimuth);
};

enum class PhaseSource
{
    general,
    cylindrical_mirror,
    zero_reference,
    quantized,
};

std::string_view to_string(PhaseSource source);

// Per-element phase configuration, the diagonal of the reflection matrix, in
// layout element order. Phases are kept unwrapped; wrapped() folds them into
// (-pi, pi]. Profiles derived analytically on a grid layout are stored in the
// separable form Phi_{m,n} = row[m] + col[n] and never materialize the MN vector
// unless asked to.
class PhaseProfile
{
public:
    struct Separable
    {
        std::vector<double> row;
        std::vector<double> col;
    };

    PhaseProfile() = default;
    PhaseProfile(std::vector<double> unwrapped, PhaseSource source,
                 std::optional<AngleSpec> design = std::nullopt);
    PhaseProfile(Separable factors, PhaseSource source, std::optional<AngleSpec> design = std::nullopt);

    std::size_t size() const { return size_; }
    double unwrapped(std::size_t i) const;
    double wrapped(std::size_t i) const { return wrap_phase(unwrapped(i)); }
    std::vector<double> unwrapped() const;
    std::vector<double> wrapped() const;

    PhaseSource source() const { return source_; }
    const std::optional<AngleSpec>& design() const { return design_; }
    const std::optional<Separable>& separable() const { return separable_; }

private:
    std::vector<double> dense_;
    std::optional<Separable> separable_;
    std::size_t size_ = 0;
    PhaseSource source_ = PhaseSource::zero_reference;
    std::optional<AngleSpec> design_;
};

/// Generalized-Snell configuration for an arbitrary conformal layout:
/// Phi = -(2 pi / lambda) <offset, u_in + u_out>.
PhaseProfile phase_general(const CirsLayout& layout, const AngleSpec& angles);

/// Pre-configured specular mirror of a cylinder section:
/// Phi_m = -(4 pi R / lambda) (cos psi_m - 1) cos(design_azimuth), same for every column.
PhaseProfile phase_cylindrical_mirror(const CirsLayout& layout, double design_azimuth);

/// Plain metallic target: all phases zero.
PhaseProfile zero_reference_profile(const CirsLayout& layout);

/// Snaps every phase to the nearest point of the grid {2 pi k / levels}, anchored at 0.
/// Ties go to the lower grid point. Throws std::invalid_argument for levels < 2.
PhaseProfile quantize_phases(const PhaseProfile& profile, long long levels);

/// CSV `m,n,phi_rad_wrapped,phi_rad_unwrapped`.
void write_phase_csv(std::ostream& os, const CirsLayout& layout, const PhaseProfile& profile);

} // namespace cirs
