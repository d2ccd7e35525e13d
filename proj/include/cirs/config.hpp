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

#include <optional>
#include <stdexcept>
#include <string>

#include "cirs/experiment.hpp"

namespace cirs {

// Malformed configuration; the message names the offending field or position.
class ConfigError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// What `phase` computes: a mirror profile at a design azimuth, or the general
// profile for explicit angles, optionally quantized.
struct PhaseJob
{
    CirsParams surface;
    std::optional<double> design_azimuth;
    std::optional<AngleSpec> angles;
    std::optional<long long> quantize_levels;
};

struct RunConfig
{
    SweepConfig sweep;
    ChamberConfig chamber;
    PhaseJob phase;
};

/// Parses a JSON document. Every section and field is optional; omitted values
/// keep the defaults of the highway study (26 GHz, K = 8, 400 x 400 elements at
/// lambda/4, R = 8 m, design azimuth 80 deg, 20 dBm / -88 dBm) and of the
/// chamber setup. Unknown keys are rejected.
RunConfig parse_config(const std::string& json_text);
RunConfig load_config_file(const std::string& path);

std::string sweep_config_to_json(const SweepConfig& config);

} // namespace cirs
