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

#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cirs/em_field.hpp"

namespace cirs {

using Rng = std::mt19937_64;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

enum class ElementGainModel
{
    isotropic,
    cosine,
};

enum class NearFieldPolicy
{
    warn,    // mark the term and proceed
    error,   // throw std::domain_error
    exclude, // as warn for a single term; relay searches drop such candidates
};

struct LinkParams
{
    double frequency = 26e9;
    double tx_power_dbm = 20.0;
    double noise_power_dbm = -88.0;
    int antennas = 8;
    double antenna_spacing = 0.0; // [m]; 0 selects half a wavelength
    ElementGainModel element_gain = ElementGainModel::isotropic;
    double blocker_loss_db = 20.0;
    double blocker_loss_cap_db = INFINITY; // per hop
    double far_field_min_distance = 5.0;
    NearFieldPolicy near_field = NearFieldPolicy::warn;

    double wavelength() const { return wavelength_from_frequency(frequency); }
    double spacing() const { return antenna_spacing > 0.0 ? antenna_spacing : wavelength() / 2.0; }
    void validate() const;
};

/// lambda / (4 pi d). Throws std::domain_error for d <= 0.
double fspl_amplitude(double distance, double wavelength);

/// a_k = exp(-j (2 pi / lambda) k spacing sin(angle)), k = 0..K-1.
CVector ula_steering(int antennas, double spacing, double wavelength, double angle);

/// Angle used to steer the arrays: the ULA axis is the global x axis (across the
/// road), so the relevant angle is the horizontal one, atan2(dx, dy).
double array_angle(const Vec3& from, const Vec3& to);

/// Amplitude attenuation for a hop crossing `blockers` vehicles.
double blockage_amplitude(int blockers, const LinkParams& params);

// One rank-1 term gain * a_rx(aoa) a_tx(aod)^H of the composite channel.
struct RankOneTerm
{
    enum class Kind
    {
        direct,
        relay,
    };

    Kind kind = Kind::direct;
    int relay_index = -1; // position in the candidate list for relay terms
    cplx gain = 0.0;      // path amplitude including antenna and surface gains
    double aod = 0.0;     // at the Tx array
    double aoa = 0.0;     // at the Rx array
    int antennas = 1;
    double spacing = 0.0;
    double wavelength = 0.0;

    // Diagnostics.
    int blockers = 0;           // direct: on the link; relay: sum over both hops
    double surface_gain = 0.0;  // |g| for relay terms
    bool near_field = false;

    CMatrix dense() const;
};

// Placement of a reflecting surface on a vehicle. The local frame has x along the
// outward normal (horizontal), z vertical, y = z cross x.
struct SurfaceMount
{
    Vec3 position = Vec3::Zero();
    Vec3 normal = Vec3::UnitX();

    Direction local_direction(const Vec3& target) const;
};

RankOneTerm direct_channel(const Vec3& p_tx, const Vec3& p_rx, int blockers, const LinkParams& params, Rng& rng);

/// Tx -> surface -> Rx term. |alpha| = fspl(r1) fspl(r2) G_e times the blockage of
/// each hop, with G_e = 4 pi d_m d_n / lambda^2; the surface contributes
/// g = cascaded_gain(layout, profile, local AoI, local AoR).
RankOneTerm cascaded_channel(const Vec3& p_tx, const Vec3& p_rx, const SurfaceMount& mount,
                             const CirsLayout& layout, const PhaseProfile& profile, int blockers_in,
                             int blockers_out, const LinkParams& params, Rng& rng);

class ChannelRealization
{
public:
    ChannelRealization(int antennas, std::vector<RankOneTerm> terms);

    int antennas() const { return antennas_; }
    const std::vector<RankOneTerm>& terms() const { return terms_; }

    /// w^H H f evaluated term by term.
    cplx bilinear(const CVector& w, const CVector& f) const;

    /// Explicit K x K matrix; only for inspection and tests.
    CMatrix dense() const;

private:
    int antennas_;
    std::vector<RankOneTerm> terms_;
};

/// H = H_d + sum_c H_c. Throws std::invalid_argument when the antenna counts differ.
ChannelRealization composite_channel(const RankOneTerm& direct, const std::vector<RankOneTerm>& cascaded);

} // namespace cirs
