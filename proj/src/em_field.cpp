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

#include "cirs/em_field.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace cirs {

Vec3 unit_direction(const Direction& d)
{
    const double s = std::sin(d.elevation);
    return {std::cos(d.azimuth) * s, std::sin(d.azimuth) * s, std::cos(d.elevation)};
}

Direction direction_of(const Vec3& v)
{
    const double r = v.norm();
    if (!(r > 0.0)) throw std::domain_error("direction_of: zero vector");
    return {std::atan2(v.y(), v.x()), std::acos(std::clamp(v.z() / r, -1.0, 1.0))};
}

std::vector<cplx> surface_response(const CirsLayout& layout, const Direction& direction)
{
    const double k = kTwoPi / layout.wavelength();
    const Vec3 u = unit_direction(direction);
    std::vector<cplx> out;
    out.reserve(layout.size());
    for (const auto& e : layout.elements()) out.push_back(std::polar(1.0, -k * e.offset.dot(u)));
    return out;
}

cplx cascaded_gain_dense(const CirsLayout& layout, const PhaseProfile& profile, const Direction& incident,
                         const Direction& outgoing)
{
    if (profile.size() != layout.size())
        throw std::invalid_argument("cascaded_gain: profile size does not match layout");
    const double k = kTwoPi / layout.wavelength();
    const Vec3 s = unit_direction(incident) + unit_direction(outgoing);
    cplx g = 0.0;
    const std::vector<double> phases = profile.unwrapped();
    for (std::size_t i = 0; i < layout.size(); ++i)
        g += std::polar(1.0, phases[i] + k * layout.elements()[i].offset.dot(s));
    return g;
}

cplx cascaded_gain(const CirsLayout& layout, const PhaseProfile& profile, const Direction& incident,
                   const Direction& outgoing)
{
    if (profile.size() != layout.size())
        throw std::invalid_argument("cascaded_gain: profile size does not match layout");
    const auto& grid = layout.grid();
    const auto& sep = profile.separable();
    if (!grid || !sep || sep->row.size() != grid->row_x.size() || sep->col.size() != grid->col_y.size())
        return cascaded_gain_dense(layout, profile, incident, outgoing);

    const double k = kTwoPi / layout.wavelength();
    const Vec3 s = unit_direction(incident) + unit_direction(outgoing);
    cplx row_sum = 0.0;
    for (std::size_t i = 0; i < sep->row.size(); ++i)
        row_sum += std::polar(1.0, sep->row[i] + k * (grid->row_x[i] * s.x() + grid->row_z[i] * s.z()));
    cplx col_sum = 0.0;
    for (std::size_t j = 0; j < sep->col.size(); ++j)
        col_sum += std::polar(1.0, sep->col[j] + k * grid->col_y[j] * s.y());
    return row_sum * col_sum;
}

cplx fresnel_field(const CirsLayout& layout, const PhaseProfile& profile, const Vec3& tx, const Vec3& rx,
                   double amplitude)
{
    if (profile.size() != layout.size())
        throw std::invalid_argument("fresnel_field: profile size does not match layout");
    const double k = kTwoPi / layout.wavelength();
    const std::vector<double> phases = profile.unwrapped();
    cplx field = 0.0;
    for (std::size_t i = 0; i < layout.size(); ++i)
    {
        const Vec3& p = layout.elements()[i].offset;
        const double r1 = (p - tx).norm();
        const double r2 = (rx - p).norm();
        if (r1 < 1e-12 || r2 < 1e-12) throw std::domain_error("fresnel_field: field point on an element");
        field += amplitude / (4.0 * kPi * r1 * r2) * std::polar(1.0, phases[i] - k * (r1 + r2));
    }
    return field;
}

void ChamberConfig::validate() const
{
    if (!(frequency > 0.0)) throw std::invalid_argument("chamber: frequency must be positive");
    if (rows < 1 || cols < 1) throw std::invalid_argument("chamber: rows and cols must be >= 1");
    if (!(arc_length > 0.0) || !(col_extent > 0.0))
        throw std::invalid_argument("chamber: surface extents must be positive");
    if (radius < 0.0) throw std::invalid_argument("chamber: radius must be >= 0");
    if (!(tx_distance > 0.0) || !(rx_distance > 0.0))
        throw std::invalid_argument("chamber: antenna distances must be positive");
    if (rx_track_half < 0.0) throw std::invalid_argument("chamber: receiver track must be >= 0");
    if (sweep_points < 1) throw std::invalid_argument("chamber: sweep_points must be >= 1");
}

CirsParams ChamberConfig::surface_params() const
{
    validate();
    const double lambda = wavelength_from_frequency(frequency);
    const double col_pitch = col_extent / cols;
    const bool planar = radius == 0.0 || std::isinf(radius);
    if (planar) return CirsParams::planar(rows, cols, arc_length / rows, col_pitch, lambda);
    // Chord pitch giving an arc of exactly arc_length over all rows.
    const double row_pitch = 2.0 * radius * std::sin(arc_length / (2.0 * rows * radius));
    return CirsParams::cylindrical(rows, cols, row_pitch, col_pitch, radius, lambda);
}

namespace {

std::vector<double> sweep_magnitudes(const ChamberConfig& cfg, const CirsLayout& layout,
                                     const PhaseProfile& profile, std::vector<double>& angles)
{
    const Vec3 tx(cfg.tx_distance * std::cos(cfg.tx_angle), 0.0, cfg.tx_distance * std::sin(cfg.tx_angle));
    std::vector<double> mags(cfg.sweep_points);
    angles.resize(cfg.sweep_points);
    for (int s = 0; s < cfg.sweep_points; ++s)
    {
        const double z = cfg.sweep_points == 1
                             ? 0.0
                             : -cfg.rx_track_half + 2.0 * cfg.rx_track_half * s / (cfg.sweep_points - 1);
        const Vec3 rx(cfg.rx_distance, 0.0, z);
        angles[s] = std::atan2(z, cfg.rx_distance);
        mags[s] = std::abs(fresnel_field(layout, profile, tx, rx));
    }
    return mags;
}

} // namespace

ChamberResult chamber_sweep(const ChamberConfig& config, const CirsLayout& layout, const PhaseProfile& reference,
                            const PhaseProfile& patterned)
{
    config.validate();
    ChamberResult result;
    const auto ref = sweep_magnitudes(config, layout, reference, result.reference.angles);
    const auto pat = sweep_magnitudes(config, layout, patterned, result.patterned.angles);

    const double norm = *std::max_element(ref.begin(), ref.end());
    if (!(norm > 0.0)) throw std::domain_error("chamber_sweep: reference field vanishes everywhere");
    for (double v : ref) result.reference.field_db.push_back(amplitude_to_db(v / norm));
    for (double v : pat) result.patterned.field_db.push_back(amplitude_to_db(v / norm));

    const double ref_peak = *std::max_element(result.reference.field_db.begin(), result.reference.field_db.end());
    const double pat_peak = *std::max_element(result.patterned.field_db.begin(), result.patterned.field_db.end());
    result.focusing_gain_db = pat_peak - ref_peak;
    return result;
}

ChamberResult chamber_sweep(const ChamberConfig& config)
{
    const CirsLayout layout = build_cylindrical_layout(config.surface_params());
    return chamber_sweep(config, layout, zero_reference_profile(layout),
                         phase_cylindrical_mirror(layout, config.design_azimuth));
}

double main_lobe_width_3db(const PatternSweep& sweep)
{
    const auto& v = sweep.field_db;
    if (v.empty()) return 0.0;
    const auto peak = static_cast<std::size_t>(std::max_element(v.begin(), v.end()) - v.begin());
    const double limit = v[peak] - 3.0;
    std::size_t lo = peak, hi = peak;
    while (lo > 0 && v[lo - 1] >= limit) --lo;
    while (hi + 1 < v.size() && v[hi + 1] >= limit) ++hi;
    return sweep.angles[hi] - sweep.angles[lo];
}

void write_sweep_csv(std::ostream& os, const ChamberResult& result)
{
    os << "phi_o_deg,ref_db,cirs_db\n";
    char buf[128];
    for (std::size_t i = 0; i < result.reference.angles.size(); ++i)
    {
        std::snprintf(buf, sizeof(buf), "%.9g,%.9g,%.9g\n", rad2deg(result.reference.angles[i]),
                      result.reference.field_db[i], result.patterned.field_db[i]);
        os << buf;
    }
}

} // namespace cirs
