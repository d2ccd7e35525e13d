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

#include "cirs/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace cirs {

using nlohmann::json;

namespace {

// Typed field access with the JSON path in every error message.
class Section
{
public:
    Section(const json& node, std::string path, std::set<std::string> allowed)
        : node_(node), path_(std::move(path))
    {
        if (!node_.is_object()) throw ConfigError(path_ + ": expected an object");
        for (const auto& [key, _] : node_.items())
            if (!allowed.count(key)) throw ConfigError(path_ + "." + key + ": unknown field");
    }

    bool has(const std::string& key) const { return node_.contains(key) && !node_.at(key).is_null(); }
    const json& raw(const std::string& key) const { return node_.at(key); }
    std::string path(const std::string& key) const { return path_ + "." + key; }

    template <typename T>
    void read(const std::string& key, T& out) const
    {
        if (!has(key)) return;
        try
        {
            out = node_.at(key).get<T>();
        }
        catch (const json::exception&)
        {
            throw ConfigError(path(key) + ": wrong type");
        }
    }

    void read_number(const std::string& key, double& out) const
    {
        if (!has(key)) return;
        if (!node_.at(key).is_number()) throw ConfigError(path(key) + ": expected a number");
        out = node_.at(key).get<double>();
    }

    void read_int(const std::string& key, int& out) const
    {
        if (!has(key)) return;
        if (!node_.at(key).is_number_integer()) throw ConfigError(path(key) + ": expected an integer");
        out = node_.at(key).get<int>();
    }

    void read_degrees(const std::string& key, double& out_rad) const
    {
        if (!has(key)) return;
        double deg = 0.0;
        read_number(key, deg);
        out_rad = deg2rad(deg);
    }

    void read_numbers(const std::string& key, std::vector<double>& out) const
    {
        if (!has(key)) return;
        const json& a = node_.at(key);
        if (!a.is_array()) throw ConfigError(path(key) + ": expected an array of numbers");
        out.clear();
        for (const auto& v : a)
        {
            if (!v.is_number()) throw ConfigError(path(key) + ": expected an array of numbers");
            out.push_back(v.get<double>());
        }
    }

private:
    const json& node_;
    std::string path_;
};

void parse_highway(const json& node, HighwayConfig& hw)
{
    Section s(node, "highway",
              {"length_m", "lanes", "lane_width_m", "density", "cav_fraction", "vehicle_dims_m",
               "antenna_height_m", "cirs_center_height_m", "tx_rx_distance_m", "tx_lane", "placement_retries"});
    s.read_number("length_m", hw.length);
    s.read_int("lanes", hw.lanes);
    s.read_number("lane_width_m", hw.lane_width);
    s.read_number("density", hw.density);
    s.read_number("cav_fraction", hw.cav_fraction);
    if (s.has("vehicle_dims_m"))
    {
        std::vector<double> dims;
        s.read_numbers("vehicle_dims_m", dims);
        if (dims.size() != 3) throw ConfigError(s.path("vehicle_dims_m") + ": expected [length, width, height]");
        hw.vehicle_dims = Vec3(dims[0], dims[1], dims[2]);
    }
    s.read_number("antenna_height_m", hw.antenna_height);
    s.read_number("cirs_center_height_m", hw.cirs_center_height);
    s.read_number("tx_rx_distance_m", hw.tx_rx_distance);
    s.read_int("tx_lane", hw.tx_lane);
    s.read_int("placement_retries", hw.placement_retries);
}

void parse_link(const json& node, LinkParams& link)
{
    Section s(node, "link",
              {"frequency_hz", "tx_power_dbm", "noise_power_dbm", "antennas", "antenna_spacing_m", "element_gain",
               "blocker_loss_db", "blocker_loss_cap_db", "far_field_min_distance_m", "near_field"});
    s.read_number("frequency_hz", link.frequency);
    s.read_number("tx_power_dbm", link.tx_power_dbm);
    s.read_number("noise_power_dbm", link.noise_power_dbm);
    s.read_int("antennas", link.antennas);
    s.read_number("antenna_spacing_m", link.antenna_spacing);
    if (s.has("element_gain"))
    {
        std::string g;
        s.read("element_gain", g);
        if (g == "isotropic")
            link.element_gain = ElementGainModel::isotropic;
        else if (g == "cosine")
            link.element_gain = ElementGainModel::cosine;
        else
            throw ConfigError(s.path("element_gain") + ": expected \"isotropic\" or \"cosine\"");
    }
    s.read_number("blocker_loss_db", link.blocker_loss_db);
    s.read_number("blocker_loss_cap_db", link.blocker_loss_cap_db);
    s.read_number("far_field_min_distance_m", link.far_field_min_distance);
    if (s.has("near_field"))
    {
        std::string p;
        s.read("near_field", p);
        if (p == "warn")
            link.near_field = NearFieldPolicy::warn;
        else if (p == "error")
            link.near_field = NearFieldPolicy::error;
        else if (p == "exclude")
            link.near_field = NearFieldPolicy::exclude;
        else
            throw ConfigError(s.path("near_field") + ": expected \"warn\", \"error\" or \"exclude\"");
    }
}

void parse_surface(const json& node, SweepConfig& sweep)
{
    Section s(node, "surface",
              {"rows", "cols", "row_spacing_wavelengths", "col_spacing_wavelengths", "radius_m",
               "design_azimuth_deg"});
    s.read_int("rows", sweep.cirs_rows);
    s.read_int("cols", sweep.cirs_cols);
    s.read_number("row_spacing_wavelengths", sweep.cirs_row_spacing_wl);
    s.read_number("col_spacing_wavelengths", sweep.cirs_col_spacing_wl);
    s.read_number("radius_m", sweep.cirs_radius);
    s.read_degrees("design_azimuth_deg", sweep.design_azimuth);
}

void parse_sweep(const json& node, SweepConfig& sweep)
{
    Section s(node, "sweep", {"rho_list", "p_grid", "drops_per_point", "modes", "snr_floor_db", "averaging"});
    s.read_numbers("rho_list", sweep.rho_list);
    s.read_numbers("p_grid", sweep.p_grid);
    s.read_int("drops_per_point", sweep.drops_per_point);
    if (s.has("modes"))
    {
        std::vector<std::string> names;
        s.read("modes", names);
        sweep.modes.clear();
        for (const auto& n : names)
        {
            try
            {
                sweep.modes.push_back(mode_from_string(n));
            }
            catch (const std::invalid_argument& e)
            {
                throw ConfigError(s.path("modes") + ": " + e.what());
            }
        }
    }
    s.read_number("snr_floor_db", sweep.snr_floor_db);
    if (s.has("averaging"))
    {
        std::string a;
        s.read("averaging", a);
        if (a == "db_mean")
            sweep.averaging = Averaging::db_mean;
        else if (a == "linear_mean")
            sweep.averaging = Averaging::linear_mean;
        else
            throw ConfigError(s.path("averaging") + ": expected \"db_mean\" or \"linear_mean\"");
    }
}

void parse_chamber(const json& node, ChamberConfig& c)
{
    Section s(node, "chamber",
              {"frequency_hz", "radius_m", "rows", "cols", "arc_length_m", "col_extent_m", "tx_distance_m",
               "tx_angle_deg", "rx_distance_m", "rx_track_half_m", "sweep_points", "design_azimuth_deg"});
    s.read_number("frequency_hz", c.frequency);
    s.read_number("radius_m", c.radius);
    s.read_int("rows", c.rows);
    s.read_int("cols", c.cols);
    s.read_number("arc_length_m", c.arc_length);
    s.read_number("col_extent_m", c.col_extent);
    s.read_number("tx_distance_m", c.tx_distance);
    s.read_degrees("tx_angle_deg", c.tx_angle);
    s.read_number("rx_distance_m", c.rx_distance);
    s.read_number("rx_track_half_m", c.rx_track_half);
    s.read_int("sweep_points", c.sweep_points);
    s.read_degrees("design_azimuth_deg", c.design_azimuth);
}

void parse_phase(const json& node, RunConfig& cfg)
{
    Section s(node, "phase",
              {"use_chamber_surface", "rows", "cols", "row_spacing_wavelengths", "col_spacing_wavelengths",
               "radius_m", "frequency_hz", "design_azimuth_deg", "angles_deg", "quantize_levels"});
    bool chamber_surface = false;
    s.read("use_chamber_surface", chamber_surface);
    PhaseJob& job = cfg.phase;
    if (chamber_surface)
    {
        job.surface = cfg.chamber.surface_params();
    }
    else
    {
        double freq = cfg.sweep.link.frequency;
        int rows = cfg.sweep.cirs_rows, cols = cfg.sweep.cirs_cols;
        double rs = cfg.sweep.cirs_row_spacing_wl, cs = cfg.sweep.cirs_col_spacing_wl;
        double radius = cfg.sweep.cirs_radius;
        s.read_number("frequency_hz", freq);
        s.read_int("rows", rows);
        s.read_int("cols", cols);
        s.read_number("row_spacing_wavelengths", rs);
        s.read_number("col_spacing_wavelengths", cs);
        s.read_number("radius_m", radius);
        if (!(freq > 0.0)) throw ConfigError(s.path("frequency_hz") + ": must be positive");
        const double lambda = wavelength_from_frequency(freq);
        if (radius == 0.0)
            job.surface = CirsParams::planar(rows, cols, rs * lambda, cs * lambda, lambda);
        else if (radius > 0.0)
            job.surface = CirsParams::cylindrical(rows, cols, rs * lambda, cs * lambda, radius, lambda);
        else
            throw ConfigError(s.path("radius_m") + ": must be >= 0 (0 selects a planar surface)");
    }
    if (s.has("design_azimuth_deg") && s.has("angles_deg"))
        throw ConfigError("phase: design_azimuth_deg and angles_deg are mutually exclusive");
    if (s.has("angles_deg"))
    {
        Section a(s.raw("angles_deg"), s.path("angles_deg"),
                  {"azimuth_in", "elevation_in", "azimuth_out", "elevation_out"});
        AngleSpec angles;
        a.read_degrees("azimuth_in", angles.azimuth_in);
        a.read_degrees("elevation_in", angles.elevation_in);
        a.read_degrees("azimuth_out", angles.azimuth_out);
        a.read_degrees("elevation_out", angles.elevation_out);
        job.angles = angles;
    }
    else
    {
        double az = cfg.sweep.design_azimuth;
        s.read_degrees("design_azimuth_deg", az);
        job.design_azimuth = az;
    }
    if (s.has("quantize_levels"))
    {
        if (!s.raw("quantize_levels").is_number_integer())
            throw ConfigError(s.path("quantize_levels") + ": expected an integer");
        job.quantize_levels = s.raw("quantize_levels").get<long long>();
    }
}

} // namespace

RunConfig parse_config(const std::string& json_text)
{
    json doc;
    try
    {
        doc = json::parse(json_text);
    }
    catch (const json::parse_error& e)
    {
        throw ConfigError(std::string("invalid JSON: ") + e.what());
    }
    if (doc.is_null()) doc = json::object();

    RunConfig cfg;
    Section root(doc, "config", {"seed", "threads", "sweep", "highway", "link", "surface", "chamber", "phase"});
    if (root.has("seed"))
    {
        if (!doc.at("seed").is_number_unsigned()) throw ConfigError("config.seed: expected a non-negative integer");
        cfg.sweep.global_seed = doc.at("seed").get<std::uint64_t>();
    }
    root.read_int("threads", cfg.sweep.threads);
    if (root.has("highway")) parse_highway(doc.at("highway"), cfg.sweep.highway);
    if (root.has("link")) parse_link(doc.at("link"), cfg.sweep.link);
    if (root.has("surface")) parse_surface(doc.at("surface"), cfg.sweep);
    if (root.has("sweep")) parse_sweep(doc.at("sweep"), cfg.sweep);
    if (root.has("chamber")) parse_chamber(doc.at("chamber"), cfg.chamber);
    try
    {
        if (root.has("phase"))
            parse_phase(doc.at("phase"), cfg);
        else
            parse_phase(json::object(), cfg);
        cfg.sweep.validate();
        cfg.chamber.validate();
        cfg.phase.surface.validate();
    }
    catch (const std::invalid_argument& e)
    {
        throw ConfigError(e.what());
    }
    return cfg;
}

RunConfig load_config_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string sweep_config_to_json(const SweepConfig& c)
{
    json modes = json::array();
    for (Mode m : c.modes) modes.push_back(std::string(to_string(m)));
    json j = {
        {"seed", c.global_seed},
        {"sweep",
         {{"rho_list", c.rho_list},
          {"p_grid", c.p_grid},
          {"drops_per_point", c.drops_per_point},
          {"modes", modes},
          {"snr_floor_db", c.snr_floor_db},
          {"averaging", c.averaging == Averaging::db_mean ? "db_mean" : "linear_mean"}}},
        {"highway",
         {{"length_m", c.highway.length},
          {"lanes", c.highway.lanes},
          {"lane_width_m", c.highway.lane_width},
          {"vehicle_dims_m", {c.highway.vehicle_dims.x(), c.highway.vehicle_dims.y(), c.highway.vehicle_dims.z()}},
          {"antenna_height_m", c.highway.antenna_height},
          {"cirs_center_height_m", c.highway.cirs_center_height},
          {"tx_rx_distance_m", c.highway.tx_rx_distance},
          {"tx_lane", c.highway.effective_tx_lane()},
          {"placement_retries", c.highway.placement_retries}}},
        {"link",
         {{"frequency_hz", c.link.frequency},
          {"tx_power_dbm", c.link.tx_power_dbm},
          {"noise_power_dbm", c.link.noise_power_dbm},
          {"antennas", c.link.antennas},
          {"antenna_spacing_m", c.link.spacing()},
          {"element_gain", c.link.element_gain == ElementGainModel::isotropic ? "isotropic" : "cosine"},
          {"blocker_loss_db", c.link.blocker_loss_db},
          {"blocker_loss_cap_db", std::isfinite(c.link.blocker_loss_cap_db) ? json(c.link.blocker_loss_cap_db) : json()},
          {"far_field_min_distance_m", c.link.far_field_min_distance},
          {"near_field", c.link.near_field == NearFieldPolicy::warn    ? "warn"
                         : c.link.near_field == NearFieldPolicy::error ? "error"
                                                                      : "exclude"}}},
        {"surface",
         {{"rows", c.cirs_rows},
          {"cols", c.cirs_cols},
          {"row_spacing_wavelengths", c.cirs_row_spacing_wl},
          {"col_spacing_wavelengths", c.cirs_col_spacing_wl},
          {"radius_m", c.cirs_radius},
          {"design_azimuth_deg", rad2deg(c.design_azimuth)}}},
    };
    return j.dump(2);
}

} // namespace cirs
