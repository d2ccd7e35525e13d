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

#include "cirs/phase_design.hpp"

#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace cirs {

AngleSpec AngleSpec::mirror(double design_azimuth)
{
    return {-design_azimuth, kPi / 2.0, design_azimuth, kPi / 2.0};
}

std::string_view to_string(PhaseSource source)
{
    switch (source)
    {
    case PhaseSource::general: return "general";
    case PhaseSource::cylindrical_mirror: return "cylindrical_mirror";
    case PhaseSource::zero_reference: return "zero_reference";
    case PhaseSource::quantized: return "quantized";
    }
    return "unknown";
}

PhaseProfile::PhaseProfile(std::vector<double> unwrapped, PhaseSource source, std::optional<AngleSpec> design)
    : dense_(std::move(unwrapped)), size_(dense_.size()), source_(source), design_(design)
{
    for (double v : dense_)
        if (!std::isfinite(v)) throw std::invalid_argument("PhaseProfile: non-finite phase");
}

PhaseProfile::PhaseProfile(Separable factors, PhaseSource source, std::optional<AngleSpec> design)
    : separable_(std::move(factors)), source_(source), design_(design)
{
    for (double v : separable_->row)
        if (!std::isfinite(v)) throw std::invalid_argument("PhaseProfile: non-finite phase");
    for (double v : separable_->col)
        if (!std::isfinite(v)) throw std::invalid_argument("PhaseProfile: non-finite phase");
    size_ = separable_->row.size() * separable_->col.size();
}

double PhaseProfile::unwrapped(std::size_t i) const
{
    if (!separable_) return dense_[i];
    const std::size_t cols = separable_->col.size();
    return separable_->row[i / cols] + separable_->col[i % cols];
}

std::vector<double> PhaseProfile::unwrapped() const
{
    if (!separable_) return dense_;
    std::vector<double> out;
    out.reserve(size_);
    for (double r : separable_->row)
        for (double c : separable_->col) out.push_back(r + c);
    return out;
}

std::vector<double> PhaseProfile::wrapped() const
{
    std::vector<double> out = unwrapped();
    for (double& v : out) v = wrap_phase(v);
    return out;
}

namespace {

PhaseProfile from_separable(std::vector<double> row, std::vector<double> col, PhaseSource source,
                            std::optional<AngleSpec> design)
{
    return PhaseProfile(PhaseProfile::Separable{std::move(row), std::move(col)}, source, design);
}

} // namespace

PhaseProfile phase_general(const CirsLayout& layout, const AngleSpec& a)
{
    const double k = kTwoPi / layout.wavelength();
    const double cx = std::cos(a.azimuth_out) * std::sin(a.elevation_out) +
                      std::cos(a.azimuth_in) * std::sin(a.elevation_in);
    const double cy = std::sin(a.azimuth_out) * std::sin(a.elevation_out) +
                      std::sin(a.azimuth_in) * std::sin(a.elevation_in);
    const double cz = std::cos(a.elevation_out) + std::cos(a.elevation_in);

    if (const auto& grid = layout.grid())
    {
        std::vector<double> row(grid->row_x.size());
        std::vector<double> col(grid->col_y.size());
        for (std::size_t i = 0; i < row.size(); ++i)
            row[i] = -k * (grid->row_x[i] * cx + grid->row_z[i] * cz);
        for (std::size_t j = 0; j < col.size(); ++j) col[j] = -k * grid->col_y[j] * cy;
        return from_separable(std::move(row), std::move(col), PhaseSource::general, a);
    }

    std::vector<double> phases;
    phases.reserve(layout.size());
    for (const auto& e : layout.elements())
        phases.push_back(-k * (e.offset.x() * cx + e.offset.y() * cy + e.offset.z() * cz));
    return PhaseProfile(std::move(phases), PhaseSource::general, a);
}

PhaseProfile phase_cylindrical_mirror(const CirsLayout& layout, double design_azimuth)
{
    if (!layout.grid())
        throw std::invalid_argument("phase_cylindrical_mirror: layout must come from build_cylindrical_layout");
    const auto& grid = *layout.grid();
    const AngleSpec design = AngleSpec::mirror(design_azimuth);

    std::vector<double> row(grid.row_psi.size(), 0.0);
    std::vector<double> col(grid.col_y.size(), 0.0);
    if (layout.curvature() > 0.0)
    {
        const double scale = -4.0 * kPi * layout.radius() / layout.wavelength() * std::cos(design_azimuth);
        for (std::size_t i = 0; i < row.size(); ++i) row[i] = scale * (std::cos(grid.row_psi[i]) - 1.0);
    }
    return from_separable(std::move(row), std::move(col), PhaseSource::cylindrical_mirror, design);
}

PhaseProfile zero_reference_profile(const CirsLayout& layout)
{
    if (const auto& grid = layout.grid())
        return from_separable(std::vector<double>(grid->row_x.size(), 0.0),
                              std::vector<double>(grid->col_y.size(), 0.0), PhaseSource::zero_reference,
                              std::nullopt);
    return PhaseProfile(std::vector<double>(layout.size(), 0.0), PhaseSource::zero_reference);
}

PhaseProfile quantize_phases(const PhaseProfile& profile, long long levels)
{
    if (levels < 2) throw std::invalid_argument("quantize_phases: levels must be >= 2");
    const double step = kTwoPi / static_cast<double>(levels);
    std::vector<double> out(profile.size());
    for (std::size_t i = 0; i < out.size(); ++i)
    {
        // ceil(q - 1/2) rounds half-way cases down.
        const double q = profile.unwrapped(i) / step;
        out[i] = std::ceil(q - 0.5) * step;
    }
    return PhaseProfile(std::move(out), PhaseSource::quantized, profile.design());
}

void write_phase_csv(std::ostream& os, const CirsLayout& layout, const PhaseProfile& profile)
{
    if (layout.size() != profile.size())
        throw std::invalid_argument("write_phase_csv: layout and profile sizes differ");
    os << "m,n,phi_rad_wrapped,phi_rad_unwrapped\n";
    char buf[128];
    for (std::size_t i = 0; i < layout.size(); ++i)
    {
        const auto& e = layout.elements()[i];
        std::snprintf(buf, sizeof(buf), "%d,%d,%.9g,%.9g\n", e.m, e.n, profile.wrapped(i),
                      profile.unwrapped(i));
        os << buf;
    }
}

} // namespace cirs
