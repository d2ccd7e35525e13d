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
#include <doctest.h>

#include <string>

#include "cirs/config.hpp"

using namespace cirs;

namespace {

std::string error_of(const std::string& text)
{
    try
    {
        parse_config(text);
    }
    catch (const ConfigError& e)
    {
        return e.what();
    }
    return "";
}

} // namespace

TEST_CASE("empty documents give the defaults")
{
    const RunConfig a = parse_config("{}");
    const RunConfig b = parse_config("null");
    const SweepConfig d;
    CHECK(sweep_config_to_json(a.sweep) == sweep_config_to_json(d));
    CHECK(sweep_config_to_json(b.sweep) == sweep_config_to_json(d));
    CHECK(a.chamber.rows == 37);
    CHECK(a.phase.design_azimuth.has_value());
    CHECK(std::abs(*a.phase.design_azimuth - deg2rad(80.0)) < 1e-15);
    CHECK(a.phase.surface.rows == 400);
}

TEST_CASE("sections override defaults")
{
    const RunConfig c = parse_config(R"({
        "seed": 42, "threads": 3,
        "sweep": {"rho_list": [20], "p_grid": [0, 1], "drops_per_point": 7, "modes": ["cris"],
                  "averaging": "linear_mean"},
        "highway": {"antenna_height_m": 1.2, "vehicle_dims_m": [4.5, 1.7, 1.4]},
        "link": {"frequency_hz": 28e9, "near_field": "exclude", "element_gain": "cosine"},
        "surface": {"rows": 100, "design_azimuth_deg": 70},
        "chamber": {"sweep_points": 11, "tx_angle_deg": 10},
        "phase": {"use_chamber_surface": true, "quantize_levels": 4}
    })");
    CHECK(c.sweep.global_seed == 42);
    CHECK(c.sweep.threads == 3);
    CHECK(c.sweep.rho_list == std::vector<double>{20.0});
    CHECK(c.sweep.drops_per_point == 7);
    CHECK(c.sweep.modes == std::vector<Mode>{Mode::cris});
    CHECK(c.sweep.averaging == Averaging::linear_mean);
    CHECK(c.sweep.highway.antenna_height == 1.2);
    CHECK(c.sweep.highway.vehicle_dims.z() == 1.4);
    CHECK(c.sweep.link.frequency == 28e9);
    CHECK(c.sweep.link.near_field == NearFieldPolicy::exclude);
    CHECK(c.sweep.link.element_gain == ElementGainModel::cosine);
    CHECK(c.sweep.cirs_rows == 100);
    CHECK(std::abs(c.sweep.design_azimuth - deg2rad(70.0)) < 1e-15);
    CHECK(c.chamber.sweep_points == 11);
    CHECK(std::abs(c.chamber.tx_angle - deg2rad(10.0)) < 1e-15);
    CHECK(c.phase.surface.rows == 37);
    CHECK(c.phase.quantize_levels == 4);
    CHECK(std::abs(*c.phase.design_azimuth - deg2rad(70.0)) < 1e-15);
}

TEST_CASE("phase job surfaces and angles")
{
    const RunConfig planar = parse_config(R"({"phase": {"radius_m": 0, "rows": 4, "cols": 3}})");
    CHECK(planar.phase.surface.curvature == 0.0);
    CHECK(planar.phase.surface.cols == 3);

    const RunConfig ang = parse_config(
        R"({"phase": {"angles_deg": {"azimuth_in": -30, "azimuth_out": 45, "elevation_out": 80}}})");
    REQUIRE(ang.phase.angles.has_value());
    CHECK(std::abs(ang.phase.angles->azimuth_in - deg2rad(-30.0)) < 1e-15);
    CHECK(std::abs(ang.phase.angles->elevation_in - kPi / 2.0) < 1e-15);
    CHECK(std::abs(ang.phase.angles->elevation_out - deg2rad(80.0)) < 1e-15);
    CHECK_FALSE(ang.phase.design_azimuth.has_value());
}

TEST_CASE("the echoed sweep configuration parses back to itself")
{
    const RunConfig c = parse_config(R"({"seed": 9, "sweep": {"p_grid": [0.5]}, "link": {"antennas": 4}})");
    const std::string echo = sweep_config_to_json(c.sweep);
    CHECK(sweep_config_to_json(parse_config(echo).sweep) == echo);
}

TEST_CASE("errors name the offending field")
{
    CHECK(error_of(R"({"sweep": {"drops": 3}})").find("sweep.drops") != std::string::npos);
    CHECK(error_of(R"({"bogus": 1})").find("config.bogus") != std::string::npos);
    CHECK(error_of(R"({"highway": {"lanes": "five"}})").find("highway.lanes") != std::string::npos);
    CHECK(error_of(R"({"highway": {"lanes": 2.5}})").find("highway.lanes") != std::string::npos);
    CHECK(error_of(R"({"seed": -1})").find("config.seed") != std::string::npos);
    CHECK(error_of(R"({"sweep": {"modes": ["relay"]}})").find("sweep.modes") != std::string::npos);
    CHECK(error_of(R"({"link": {"near_field": "maybe"}})").find("link.near_field") != std::string::npos);
    CHECK(error_of(R"({"highway": {"vehicle_dims_m": [1, 2]}})").find("highway.vehicle_dims_m") !=
          std::string::npos);
    CHECK(error_of(R"({"phase": {"design_azimuth_deg": 10, "angles_deg": {}}})").find("mutually exclusive") !=
          std::string::npos);
    CHECK(error_of(R"({"phase": {"radius_m": -1}})").find("phase.radius_m") != std::string::npos);
    CHECK(error_of(R"({"sweep": {"p_grid": [2]}})").find("p_grid") != std::string::npos);
    CHECK(error_of("{\n  \"seed\": 1,\n  oops\n}").find("line 3") != std::string::npos);
    CHECK(error_of("[]").find("expected an object") != std::string::npos);
}

TEST_CASE("missing config files")
{
    try
    {
        load_config_file("/nonexistent/dir/run.json");
        FAIL("no exception");
    }
    catch (const ConfigError& e)
    {
        CHECK(std::string(e.what()).find("/nonexistent/dir/run.json") != std::string::npos);
    }
}
