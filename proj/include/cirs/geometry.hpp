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
#include <vector>

#include "cirs/common.hpp"

namespace cirs {

// Construction parameters of a cylinder-section (or planar) reflecting surface.
// A planar surface is encoded by curvature == 0 rather than an infinite radius.
struct CirsParams
{
    int rows = 400;           // M, along the conformal (vertical) coordinate
    int cols = 400;           // N, along the cylinder axis
    double row_spacing = 0.0; // d_m, chord between vertically adjacent elements [m]
    double col_spacing = 0.0; // d_n [m]
    double curvature = 0.0;   // 1/R [1/m]
    double wavelength = 0.0;  // [m]
    Vec3 phase_center = Vec3::Zero();

    double radius() const { return curvature > 0.0 ? 1.0 / curvature : INFINITY; }

    /// Throws std::invalid_argument when the parameters cannot describe a surface.
    void validate() const;

    static CirsParams cylindrical(int rows, int cols, double row_spacing, double col_spacing,
                                  double radius, double wavelength);
    static CirsParams planar(int rows, int cols, double row_spacing, double col_spacing,
                             double wavelength);
};

struct ElementRecord
{
    int m = 0;        // row index in {-M/2, ..., M/2 - 1} (floor division for odd M)
    int n = 0;        // column index
    double psi = 0.0; // local angular position [rad]
    Vec3 offset = Vec3::Zero();
};

// Row/column factors of a separable grid: x and z depend on the row only, y on
// the column only. Present for every layout produced by build_cylindrical_layout.
struct GridFactors
{
    std::vector<double> row_psi;
    std::vector<double> row_x;
    std::vector<double> row_z;
    std::vector<double> col_y;
};

class CirsLayout
{
public:
    CirsLayout() = default;

    /// Arbitrary element set (no grid structure). Used for toy surfaces and tests.
    static CirsLayout from_offsets(const std::vector<Vec3>& offsets, double wavelength);

    const std::vector<ElementRecord>& elements() const { return elements_; }
    std::size_t size() const { return elements_.size(); }
    const std::optional<GridFactors>& grid() const { return grid_; }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    double wavelength() const { return wavelength_; }
    double curvature() const { return curvature_; }
    double radius() const { return curvature_ > 0.0 ? 1.0 / curvature_ : INFINITY; }
    double row_spacing() const { return row_spacing_; }
    double col_spacing() const { return col_spacing_; }
    const Vec3& phase_center() const { return phase_center_; }

    double half_span() const { return half_span_; } // psi_M
    double length() const { return length_; }       // L, along the cylinder axis
    double height() const { return height_; }       // H, arc length along the conformal coordinate

private:
    friend CirsLayout build_cylindrical_layout(const CirsParams& params);

    std::vector<ElementRecord> elements_;
    std::optional<GridFactors> grid_;
    int rows_ = 0;
    int cols_ = 0;
    double wavelength_ = 0.0;
    double curvature_ = 0.0;
    double row_spacing_ = 0.0;
    double col_spacing_ = 0.0;
    Vec3 phase_center_ = Vec3::Zero();
    double half_span_ = 0.0;
    double length_ = 0.0;
    double height_ = 0.0;
};

/// Element (m, n) sits at angle psi_m = (m + 1/2) * dpsi with dpsi = 2 asin(d_m / 2R),
/// offset (R (cos psi_m - 1), (n + 1/2) d_n, R sin psi_m). For odd M the grid is
/// centered on the middle row. Curvature 0 gives the planar grid x = 0.
CirsLayout build_cylindrical_layout(const CirsParams& params);

/// L * 2R * psi_M for curved layouts, L * H for planar ones.
double layout_area(const CirsLayout& layout);

/// CSV `m,n,psi_rad,x_m,y_m,z_m`, 9 significant digits.
void write_layout_csv(std::ostream& os, const CirsLayout& layout);

} // namespace cirs
