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

#include "cirs/geometry.hpp"

#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <string>

namespace cirs {

void CirsParams::validate() const
{
    if (rows < 1 || cols < 1)
        throw std::invalid_argument("CirsParams: rows and cols must be >= 1");
    if (!(row_spacing > 0.0) || !(col_spacing > 0.0))
        throw std::invalid_argument("CirsParams: element spacings must be positive");
    if (!(wavelength > 0.0))
        throw std::invalid_argument("CirsParams: wavelength must be positive");
    if (!(curvature >= 0.0) || !std::isfinite(curvature))
        throw std::invalid_argument("CirsParams: curvature must be finite and >= 0");
    if (curvature > 0.0 && row_spacing * curvature > 2.0)
        throw std::invalid_argument("CirsParams: row spacing exceeds the cylinder diameter");
    if (!phase_center.allFinite())
        throw std::invalid_argument("CirsParams: phase center must be finite");
}

CirsParams CirsParams::cylindrical(int rows, int cols, double row_spacing, double col_spacing,
                                   double radius, double wavelength)
{
    if (!(radius > 0.0)) throw std::invalid_argument("CirsParams: radius must be positive");
    CirsParams p;
    p.rows = rows;
    p.cols = cols;
    p.row_spacing = row_spacing;
    p.col_spacing = col_spacing;
    p.curvature = std::isinf(radius) ? 0.0 : 1.0 / radius;
    p.wavelength = wavelength;
    return p;
}

CirsParams CirsParams::planar(int rows, int cols, double row_spacing, double col_spacing,
                              double wavelength)
{
    CirsParams p;
    p.rows = rows;
    p.cols = cols;
    p.row_spacing = row_spacing;
    p.col_spacing = col_spacing;
    p.curvature = 0.0;
    p.wavelength = wavelength;
    return p;
}

CirsLayout CirsLayout::from_offsets(const std::vector<Vec3>& offsets, double wavelength)
{
    if (!(wavelength > 0.0)) throw std::invalid_argument("CirsLayout: wavelength must be positive");
    CirsLayout layout;
    layout.wavelength_ = wavelength;
    layout.rows_ = static_cast<int>(offsets.size());
    layout.cols_ = 1;
    layout.elements_.reserve(offsets.size());
    for (std::size_t i = 0; i < offsets.size(); ++i)
    {
        if (!offsets[i].allFinite()) throw std::invalid_argument("CirsLayout: non-finite offset");
        layout.elements_.push_back({static_cast<int>(i), 0, 0.0, offsets[i]});
    }
    return layout;
}

CirsLayout build_cylindrical_layout(const CirsParams& params)
{
    params.validate();

    const int M = params.rows;
    const int N = params.cols;
    const bool curved = params.curvature > 0.0;
    const double R = curved ? 1.0 / params.curvature : 0.0;
    const double dpsi = curved ? 2.0 * std::asin(params.row_spacing * params.curvature / 2.0) : 0.0;

    GridFactors grid;
    grid.row_psi.resize(M);
    grid.row_x.resize(M);
    grid.row_z.resize(M);
    grid.col_y.resize(N);

    // Position relative to the grid center in units of the pitch; equals (m + 1/2)
    // for even counts with m = i - M/2.
    for (int i = 0; i < M; ++i)
    {
        const double u = i - (M - 1) / 2.0;
        if (curved)
        {
            const double psi = u * dpsi;
            grid.row_psi[i] = psi;
            grid.row_x[i] = R * (std::cos(psi) - 1.0);
            grid.row_z[i] = R * std::sin(psi);
        }
        else
        {
            grid.row_psi[i] = 0.0;
            grid.row_x[i] = 0.0;
            grid.row_z[i] = u * params.row_spacing;
        }
    }
    for (int j = 0; j < N; ++j)
        grid.col_y[j] = (j - (N - 1) / 2.0) * params.col_spacing;

    CirsLayout layout;
    layout.elements_.reserve(static_cast<std::size_t>(M) * N);
    for (int i = 0; i < M; ++i)
        for (int j = 0; j < N; ++j)
            layout.elements_.push_back({i - M / 2, j - N / 2, grid.row_psi[i],
                                        Vec3(grid.row_x[i], grid.col_y[j], grid.row_z[i])});

    layout.rows_ = M;
    layout.cols_ = N;
    layout.wavelength_ = params.wavelength;
    layout.curvature_ = params.curvature;
    layout.row_spacing_ = params.row_spacing;
    layout.col_spacing_ = params.col_spacing;
    layout.phase_center_ = params.phase_center;
    layout.length_ = N * params.col_spacing;
    if (curved)
    {
        layout.half_span_ = M * std::asin(params.row_spacing * params.curvature / 2.0);
        layout.height_ = 2.0 * R * layout.half_span_;
    }
    else
    {
        layout.half_span_ = 0.0;
        layout.height_ = M * params.row_spacing;
    }
    layout.grid_ = std::move(grid);
    return layout;
}

double layout_area(const CirsLayout& layout)
{
    // 2R psi_M is the arc height, so both branches reduce to L * H.
    return layout.length() * layout.height();
}

void write_layout_csv(std::ostream& os, const CirsLayout& layout)
{
    os << "m,n,psi_rad,x_m,y_m,z_m\n";
    char buf[160];
    for (const auto& e : layout.elements())
    {
        std::snprintf(buf, sizeof(buf), "%d,%d,%.9g,%.9g,%.9g,%.9g\n", e.m, e.n, e.psi,
                      e.offset.x(), e.offset.y(), e.offset.z());
        os << buf;
    }
}

} // namespace cirs
