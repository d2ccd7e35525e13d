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

#include "cirs/channel.hpp"

#include <stdexcept>

namespace cirs {

void LinkParams::validate() const
{
    if (!(frequency > 0.0)) throw std::invalid_argument("link: frequency must be positive");
    if (antennas < 1) throw std::invalid_argument("link: antennas must be >= 1");
    if (!std::isfinite(tx_power_dbm) || !std::isfinite(noise_power_dbm))
        throw std::invalid_argument("link: powers must be finite");
    if (!(blocker_loss_db >= 0.0)) throw std::invalid_argument("link: blocker_loss_db must be >= 0");
    if (!(blocker_loss_cap_db >= 0.0)) throw std::invalid_argument("link: blocker_loss_cap_db must be >= 0");
    if (antenna_spacing < 0.0) throw std::invalid_argument("link: antenna_spacing must be >= 0");
    if (!(far_field_min_distance >= 0.0))
        throw std::invalid_argument("link: far_field_min_distance must be >= 0");
}

double fspl_amplitude(double distance, double wavelength)
{
    if (!(distance > 0.0)) throw std::domain_error("fspl_amplitude: distance must be positive");
    return wavelength / (4.0 * kPi * distance);
}

CVector ula_steering(int antennas, double spacing, double wavelength, double angle)
{
    if (antennas < 1) throw std::invalid_argument("ula_steering: antennas must be >= 1");
    CVector a(antennas);
    const double step = -kTwoPi / wavelength * spacing * std::sin(angle);
    for (int k = 0; k < antennas; ++k) a[k] = std::polar(1.0, step * k);
    return a;
}

double array_angle(const Vec3& from, const Vec3& to)
{
    const Vec3 d = to - from;
    return std::atan2(d.x(), d.y());
}

double blockage_amplitude(int blockers, const LinkParams& params)
{
    const double loss_db = std::min(blockers * params.blocker_loss_db, params.blocker_loss_cap_db);
    return db_to_linear_amplitude(-loss_db);
}

namespace {

double antenna_gain(double angle, const LinkParams& params)
{
    switch (params.element_gain)
    {
    case ElementGainModel::isotropic: return 1.0;
    case ElementGainModel::cosine: return std::abs(std::cos(angle));
    }
    return 1.0;
}

cplx random_phasor(Rng& rng)
{
    std::uniform_real_distribution<double> phase(0.0, kTwoPi);
    return std::polar(1.0, phase(rng));
}

} // namespace

CMatrix RankOneTerm::dense() const
{
    const CVector a_rx = ula_steering(antennas, spacing, wavelength, aoa);
    const CVector a_tx = ula_steering(antennas, spacing, wavelength, aod);
    return gain * a_rx * a_tx.adjoint();
}

Direction SurfaceMount::local_direction(const Vec3& target) const
{
    const Vec3 x_axis = Vec3(normal.x(), normal.y(), 0.0).normalized();
    const Vec3 z_axis = Vec3::UnitZ();
    const Vec3 y_axis = z_axis.cross(x_axis);
    const Vec3 d = target - position;
    return direction_of(Vec3(d.dot(x_axis), d.dot(y_axis), d.dot(z_axis)));
}

RankOneTerm direct_channel(const Vec3& p_tx, const Vec3& p_rx, int blockers, const LinkParams& params, Rng& rng)
{
    const double distance = (p_rx - p_tx).norm();
    if (!(distance > 0.0)) throw std::invalid_argument("direct_channel: Tx and Rx coincide");

    RankOneTerm t;
    t.kind = RankOneTerm::Kind::direct;
    t.aod = array_angle(p_tx, p_rx);
    t.aoa = array_angle(p_rx, p_tx);
    t.antennas = params.antennas;
    t.spacing = params.spacing();
    t.wavelength = params.wavelength();
    t.blockers = blockers;
    const double amplitude = fspl_amplitude(distance, t.wavelength) * blockage_amplitude(blockers, params) *
                             antenna_gain(t.aod, params) * antenna_gain(t.aoa, params);
    t.gain = amplitude * random_phasor(rng);
    return t;
}

RankOneTerm cascaded_channel(const Vec3& p_tx, const Vec3& p_rx, const SurfaceMount& mount,
                             const CirsLayout& layout, const PhaseProfile& profile, int blockers_in,
                             int blockers_out, const LinkParams& params, Rng& rng)
{
    const double r1 = (mount.position - p_tx).norm();
    const double r2 = (p_rx - mount.position).norm();
    if (!(r1 > 0.0) || !(r2 > 0.0)) throw std::invalid_argument("cascaded_channel: surface on an endpoint");

    RankOneTerm t;
    t.kind = RankOneTerm::Kind::relay;
    t.aod = array_angle(p_tx, mount.position);
    t.aoa = array_angle(p_rx, mount.position);
    t.antennas = params.antennas;
    t.spacing = params.spacing();
    t.wavelength = params.wavelength();
    t.blockers = blockers_in + blockers_out;
    t.near_field = r1 < params.far_field_min_distance || r2 < params.far_field_min_distance;
    if (t.near_field && params.near_field == NearFieldPolicy::error)
        throw std::domain_error("cascaded_channel: relay closer than the far-field guard distance");

    const cplx g = cascaded_gain(layout, profile, mount.local_direction(p_tx), mount.local_direction(p_rx));
    t.surface_gain = std::abs(g);

    const double lambda = t.wavelength;
    const double element_factor = 4.0 * kPi * layout.row_spacing() * layout.col_spacing() / (lambda * lambda);
    const double amplitude = fspl_amplitude(r1, lambda) * fspl_amplitude(r2, lambda) * element_factor *
                             blockage_amplitude(blockers_in, params) * blockage_amplitude(blockers_out, params) *
                             antenna_gain(t.aod, params) * antenna_gain(t.aoa, params);
    t.gain = amplitude * g * random_phasor(rng);
    return t;
}

ChannelRealization::ChannelRealization(int antennas, std::vector<RankOneTerm> terms)
    : antennas_(antennas), terms_(std::move(terms))
{
    for (const auto& t : terms_)
        if (t.antennas != antennas_)
            throw std::invalid_argument("ChannelRealization: inconsistent antenna counts");
}

cplx ChannelRealization::bilinear(const CVector& w, const CVector& f) const
{
    if (w.size() != antennas_ || f.size() != antennas_)
        throw std::invalid_argument("ChannelRealization: beam size mismatch");
    cplx y = 0.0;
    for (const auto& t : terms_)
    {
        const CVector a_rx = ula_steering(t.antennas, t.spacing, t.wavelength, t.aoa);
        const CVector a_tx = ula_steering(t.antennas, t.spacing, t.wavelength, t.aod);
        y += t.gain * w.dot(a_rx) * a_tx.dot(f);
    }
    return y;
}

CMatrix ChannelRealization::dense() const
{
    CMatrix h = CMatrix::Zero(antennas_, antennas_);
    for (const auto& t : terms_) h += t.dense();
    return h;
}

ChannelRealization composite_channel(const RankOneTerm& direct, const std::vector<RankOneTerm>& cascaded)
{
    std::vector<RankOneTerm> terms;
    terms.reserve(cascaded.size() + 1);
    terms.push_back(direct);
    terms.insert(terms.end(), cascaded.begin(), cascaded.end());
    return ChannelRealization(direct.antennas, std::move(terms));
}

} // namespace cirs
