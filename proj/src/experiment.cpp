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

#include "cirs/experiment.hpp"

#include <atomic>
#include <bit>
#include <cstdio>
#include <exception>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <thread>

namespace cirs {

std::string_view to_string(Mode mode)
{
    switch (mode)
    {
    case Mode::direct: return "direct";
    case Mode::cirs: return "cirs";
    case Mode::cris: return "cris";
    }
    return "unknown";
}

Mode mode_from_string(std::string_view name)
{
    if (name == "direct") return Mode::direct;
    if (name == "cirs") return Mode::cirs;
    if (name == "cris") return Mode::cris;
    throw std::invalid_argument("unknown mode '" + std::string(name) + "'");
}

void SweepConfig::validate() const
{
    if (rho_list.empty() || p_grid.empty() || modes.empty())
        throw std::invalid_argument("sweep: rho_list, p_grid and modes must be non-empty");
    for (double p : p_grid)
        if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("sweep: p_grid values must lie in [0, 1]");
    for (double r : rho_list)
        if (!(r >= 0.0)) throw std::invalid_argument("sweep: rho values must be >= 0");
    if (drops_per_point < 1) throw std::invalid_argument("sweep: drops_per_point must be >= 1");
    if (threads < 1) throw std::invalid_argument("sweep: threads must be >= 1");
    if (!std::isfinite(snr_floor_db)) throw std::invalid_argument("sweep: snr_floor_db must be finite");
    highway.validate();
    link.validate();
    surface_params().validate();
}

CirsParams SweepConfig::surface_params() const
{
    const double lambda = link.wavelength();
    if (!(cirs_radius > 0.0)) throw std::invalid_argument("sweep: cirs radius must be positive");
    return CirsParams::cylindrical(cirs_rows, cirs_cols, cirs_row_spacing_wl * lambda,
                                   cirs_col_spacing_wl * lambda, cirs_radius, lambda);
}

SurfaceModel::SurfaceModel(const SweepConfig& config)
    : layout(build_cylindrical_layout(config.surface_params())),
      mirror(phase_cylindrical_mirror(layout, config.design_azimuth))
{
}

namespace {

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t path_seed(std::uint64_t drop, int path) { return splitmix64(drop ^ splitmix64(path + 1ULL)); }

} // namespace

std::uint64_t drop_seed(std::uint64_t global_seed, double rho, int drop)
{
    std::uint64_t h = splitmix64(global_seed);
    h = splitmix64(h ^ std::bit_cast<std::uint64_t>(rho));
    return splitmix64(h ^ static_cast<std::uint64_t>(drop));
}

DropResult evaluate_drop(const Scenario& scn, Mode mode, const SweepConfig& config, const SurfaceModel& surface,
                         std::uint64_t seed)
{
    const LinkParams& link = config.link;
    DropResult out;

    const int direct_blockers = count_blockers(scn.p_tx, scn.p_rx, scn);
    out.direct_blocked = direct_blockers > 0;
    Rng direct_rng(path_seed(seed, 0));
    const RankOneTerm direct = direct_channel(scn.p_tx, scn.p_rx, direct_blockers, link, direct_rng);

    std::vector<RelaySite> candidates;
    if (mode == Mode::cirs) candidates = relay_candidates(scn, surface.layout.length());
    if (mode == Mode::cris) candidates = relay_sites(scn);
    if (link.near_field == NearFieldPolicy::exclude)
        std::erase_if(candidates, [&](const RelaySite& s) {
            return (s.mount.position - scn.p_tx).norm() < link.far_field_min_distance ||
                   (scn.p_rx - s.mount.position).norm() < link.far_field_min_distance;
        });
    out.candidates = static_cast<int>(candidates.size());

    std::vector<RankOneTerm> relayed;
    relayed.reserve(candidates.size());
    for (std::size_t c = 0; c < candidates.size(); ++c)
    {
        const RelaySite& site = candidates[c];
        const int in = count_blockers(scn.p_tx, site.mount.position, scn);
        const int outb = count_blockers(site.mount.position, scn.p_rx, scn);
        Rng rng(path_seed(seed, site.vehicle));
        RankOneTerm term;
        if (mode == Mode::cris)
        {
            const Direction incident = site.mount.local_direction(scn.p_tx);
            const Direction outgoing = site.mount.local_direction(scn.p_rx);
            const PhaseProfile ideal = phase_general(
                surface.layout, {incident.azimuth, incident.elevation, outgoing.azimuth, outgoing.elevation});
            term = cascaded_channel(scn.p_tx, scn.p_rx, site.mount, surface.layout, ideal, in, outb, link, rng);
        }
        else
        {
            term = cascaded_channel(scn.p_tx, scn.p_rx, site.mount, surface.layout, surface.mirror, in, outb, link,
                                    rng);
        }
        term.relay_index = static_cast<int>(c);
        if (term.near_field) ++out.near_field_terms;
        relayed.push_back(term);
    }

    const ChannelRealization channel = composite_channel(direct, relayed);
    const Codebooks books = build_codebooks(scn, candidates, link);
    const BeamDecision decision = select_beam_pair(channel, books, link);
    out.chosen = decision.chosen_target;
    out.snr_db = std::isnan(decision.snr_db) ? config.snr_floor_db : std::max(decision.snr_db, config.snr_floor_db);
    return out;
}

DropResult run_drop(const SweepConfig& config, const SurfaceModel& surface, double cav_fraction, double rho,
                    Mode mode, std::uint64_t seed)
{
    HighwayConfig hw = config.highway;
    hw.density = rho;
    hw.cav_fraction = cav_fraction;
    Rng rng(seed);
    const Scenario scn = generate_scenario(hw, rng);
    return evaluate_drop(scn, mode, config, surface, seed);
}

const SnrStats& SweepResult::at(Mode mode, double rho, double cav_fraction) const
{
    for (const auto& r : rows)
        if (r.mode == mode && r.rho == rho && r.cav_fraction == cav_fraction) return r;
    throw std::out_of_range("SweepResult: no such grid point");
}

namespace {

struct DropSlot
{
    bool failed = false;
    std::vector<DropResult> per_mode;
};

// Runs body(i) for i in [0, count) on `threads` workers; rethrows the first failure.
template <typename Body>
void parallel_for(std::size_t count, int threads, Body body)
{
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (std::size_t i = next++; i < count; i = next++)
        {
            try
            {
                body(i);
            }
            catch (...)
            {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
                next = count;
            }
        }
    };
    if (threads <= 1)
        worker();
    else
    {
        std::vector<std::jthread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    }
    if (error) std::rethrow_exception(error);
}

} // namespace

SweepResult run_v2v_sweep(const SweepConfig& config)
{
    config.validate();
    const SurfaceModel surface(config);

    const std::size_t n_rho = config.rho_list.size();
    const std::size_t n_p = config.p_grid.size();
    const std::size_t n_drops = static_cast<std::size_t>(config.drops_per_point);
    std::vector<DropSlot> slots(n_rho * n_p * n_drops);

    parallel_for(slots.size(), config.threads, [&](std::size_t idx) {
        const std::size_t drop = idx % n_drops;
        const std::size_t ip = (idx / n_drops) % n_p;
        const std::size_t ir = idx / (n_drops * n_p);
        const double rho = config.rho_list[ir];
        const std::uint64_t seed = drop_seed(config.global_seed, rho, static_cast<int>(drop));

        HighwayConfig hw = config.highway;
        hw.density = rho;
        hw.cav_fraction = config.p_grid[ip];
        Rng rng(seed);
        Scenario scn;
        try
        {
            scn = generate_scenario(hw, rng);
        }
        catch (const std::runtime_error&)
        {
            slots[idx].failed = true;
            return;
        }
        for (Mode mode : config.modes) slots[idx].per_mode.push_back(evaluate_drop(scn, mode, config, surface, seed));
    });

    SweepResult result;
    for (std::size_t ir = 0; ir < n_rho; ++ir)
        for (std::size_t ip = 0; ip < n_p; ++ip)
            for (std::size_t im = 0; im < config.modes.size(); ++im)
            {
                SnrStats s;
                s.mode = config.modes[im];
                s.rho = config.rho_list[ir];
                s.cav_fraction = config.p_grid[ip];
                double sum = 0.0, sum_lin = 0.0;
                int blocked = 0, relayed = 0;
                std::vector<double> values;
                for (std::size_t d = 0; d < n_drops; ++d)
                {
                    const DropSlot& slot = slots[(ir * n_p + ip) * n_drops + d];
                    if (slot.failed)
                    {
                        ++s.failed_drops;
                        continue;
                    }
                    const DropResult& r = slot.per_mode[im];
                    values.push_back(r.snr_db);
                    sum += r.snr_db;
                    sum_lin += db_to_linear_power(r.snr_db);
                    blocked += r.direct_blocked ? 1 : 0;
                    relayed += r.chosen.kind == RankOneTerm::Kind::relay ? 1 : 0;
                    result.near_field_terms += r.near_field_terms;
                }
                s.drop_count = static_cast<int>(values.size());
                if (s.drop_count > 0)
                {
                    const double n = s.drop_count;
                    const double mean = sum / n;
                    double ss = 0.0;
                    for (double v : values) ss += (v - mean) * (v - mean);
                    s.std_db = s.drop_count > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
                    s.mean_db = config.averaging == Averaging::db_mean ? mean : power_to_db(sum_lin / n);
                    s.blockage_rate = blocked / n;
                    s.relay_rate = relayed / n;
                }
                if (im == 0) result.failed_drops += s.failed_drops;
                result.rows.push_back(s);
            }
    return result;
}

void write_results_csv(std::ostream& os, const SweepResult& result)
{
    os << "mode,rho,P,mean_snr_db,std_snr_db,drops,blockage_rate\n";
    char buf[192];
    for (const auto& r : result.rows)
    {
        std::snprintf(buf, sizeof(buf), "%s,%.9g,%.9g,%.9g,%.9g,%d,%.9g\n", std::string(to_string(r.mode)).c_str(),
                      r.rho, r.cav_fraction, r.mean_db, r.std_db, r.drop_count, r.blockage_rate);
        os << buf;
    }
}

ChamberRun run_chamber(const ChamberConfig& config)
{
    ChamberRun run;
    run.result = chamber_sweep(config);
    run.lobe_width_reference = main_lobe_width_3db(run.result.reference);
    run.lobe_width_patterned = main_lobe_width_3db(run.result.patterned);
    char buf[256];
    std::snprintf(buf, sizeof(buf), "focusing gain %.2f dB; -3 dB lobe width %.1f deg (reference %.1f deg)",
                  run.result.focusing_gain_db, rad2deg(run.lobe_width_patterned), rad2deg(run.lobe_width_reference));
    run.summary = buf;
    return run;
}

} // namespace cirs
