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

// cirs-sim: batch front end for the phase, chamber and highway experiments.
//
// Exit codes: 0 success, 1 runtime failure, 2 configuration or usage error.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "cirs/config.hpp"
#include "cirs/experiment.hpp"
#include "cirs/version.hpp"

namespace {

constexpr int kExitRuntime = 1;
constexpr int kExitConfig = 2;

struct RunManifest
{
    std::string subcommand;
    std::string config_path;
    std::string out_path;
    std::optional<std::uint64_t> seed;
    std::optional<int> threads;
};

std::string header_line(std::uint64_t seed)
{
    return std::string("# cirs-sim ") + cirs::kVersion + " seed=" + std::to_string(seed) + "\n";
}

cirs::RunConfig load(const RunManifest& m)
{
    cirs::RunConfig cfg = m.config_path.empty() ? cirs::parse_config("{}") : cirs::load_config_file(m.config_path);
    if (m.seed) cfg.sweep.global_seed = *m.seed;
    if (m.threads)
    {
        if (*m.threads < 1) throw cirs::ConfigError("--threads must be >= 1");
        cfg.sweep.threads = *m.threads;
    }
    return cfg;
}

std::ofstream open_output(const std::string& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    return out;
}

void finish(std::ofstream& out, const std::string& path)
{
    out.flush();
    if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

int cmd_v2v(const RunManifest& m)
{
    const cirs::RunConfig cfg = load(m);
    const cirs::SweepResult result = cirs::run_v2v_sweep(cfg.sweep);

    auto out = open_output(m.out_path);
    out << header_line(cfg.sweep.global_seed);
    cirs::write_results_csv(out, result);
    finish(out, m.out_path);

    nlohmann::json diag;
    diag["tool"] = "cirs-sim";
    diag["version"] = cirs::kVersion;
    diag["seed"] = cfg.sweep.global_seed;
    diag["threads"] = cfg.sweep.threads;
    diag["config"] = nlohmann::json::parse(cirs::sweep_config_to_json(cfg.sweep));
    diag["failed_drops"] = result.failed_drops;
    diag["near_field_terms"] = result.near_field_terms;
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : result.rows)
        rows.push_back({{"mode", std::string(cirs::to_string(r.mode))},
                        {"rho", r.rho},
                        {"P", r.cav_fraction},
                        {"relay_rate", r.relay_rate},
                        {"failed_drops", r.failed_drops}});
    diag["points"] = rows;
    const std::string diag_path = m.out_path + ".diag.json";
    auto dj = open_output(diag_path);
    dj << diag.dump(2) << "\n";
    finish(dj, diag_path);

    for (const auto& r : result.rows)
        std::cout << cirs::to_string(r.mode) << " rho=" << r.rho << " P=" << r.cav_fraction
                  << " mean=" << r.mean_db << " dB std=" << r.std_db << " dB\n";
    return 0;
}

int cmd_chamber(const RunManifest& m)
{
    const cirs::RunConfig cfg = load(m);
    const cirs::ChamberRun run = cirs::run_chamber(cfg.chamber);
    auto out = open_output(m.out_path);
    out << header_line(cfg.sweep.global_seed);
    cirs::write_sweep_csv(out, run.result);
    finish(out, m.out_path);
    std::cout << run.summary << "\n";
    return 0;
}

int cmd_phase(const RunManifest& m)
{
    const cirs::RunConfig cfg = load(m);
    const cirs::PhaseJob& job = cfg.phase;
    const cirs::CirsLayout layout = cirs::build_cylindrical_layout(job.surface);
    cirs::PhaseProfile profile = job.angles ? cirs::phase_general(layout, *job.angles)
                                            : cirs::phase_cylindrical_mirror(layout, *job.design_azimuth);
    if (job.quantize_levels) profile = cirs::quantize_phases(profile, *job.quantize_levels);

    auto out = open_output(m.out_path);
    out << header_line(cfg.sweep.global_seed);
    cirs::write_phase_csv(out, layout, profile);
    finish(out, m.out_path);

    const auto phases = profile.unwrapped();
    const auto [lo, hi] = std::minmax_element(phases.begin(), phases.end());
    std::cout << layout.size() << " elements, unwrapped phase range " << (*hi - *lo) << " rad\n";
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Conformal reflecting surface simulator"};
    app.set_version_flag("--version", cirs::kVersion);
    app.require_subcommand(1);

    RunManifest manifest;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", manifest.config_path, "JSON configuration file");
        sub->add_option("--out", manifest.out_path, "Output CSV path")->required();
        sub->add_option("--seed", manifest.seed, "Override the global seed");
        sub->add_option("--threads", manifest.threads, "Worker threads");
    };
    CLI::App* v2v = app.add_subcommand("v2v", "Monte Carlo highway SNR sweep");
    CLI::App* chamber = app.add_subcommand("chamber", "Simulated chamber measurement of a curved surface");
    CLI::App* phase = app.add_subcommand("phase", "Export a surface phase configuration");
    for (CLI::App* sub : {v2v, chamber, phase}) add_common(sub);

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e)
    {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try
    {
        if (v2v->parsed()) return cmd_v2v(manifest);
        if (chamber->parsed()) return cmd_chamber(manifest);
        if (phase->parsed()) return cmd_phase(manifest);
    }
    catch (const cirs::ConfigError& e)
    {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    }
    catch (const std::exception& e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitRuntime;
}
