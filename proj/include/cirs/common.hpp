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

#include <cmath>
#include <complex>
#include <numbers>

#include <Eigen/Dense>

namespace cirs {

using Vec3 = Eigen::Vector3d;
using cplx = std::complex<double>;

inline constexpr double kSpeedOfLight = 299792458.0;
inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

inline double wavelength_from_frequency(double hz) { return kSpeedOfLight / hz; }

inline double deg2rad(double deg) { return deg * kPi / 180.0; }
inline double rad2deg(double rad) { return rad * 180.0 / kPi; }

inline double db_to_linear_power(double db) { return std::pow(10.0, db / 10.0); }
inline double db_to_linear_amplitude(double db) { return std::pow(10.0, db / 20.0); }
inline double amplitude_to_db(double amp) { return 20.0 * std::log10(amp); }
inline double power_to_db(double pw) { return 10.0 * std::log10(pw); }

/// Wraps an angle into (-pi, pi].
inline double wrap_phase(double rad)
{
    double w = std::remainder(rad, kTwoPi);
    if (w <= -kPi) w += kTwoPi;
    return w;
}

} // namespace cirs
