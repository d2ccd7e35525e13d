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
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

#include "cirs/beam_select.hpp"
#include "cirs/experiment.hpp"

using namespace cirs;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

int failures = 0;

void report(int id, bool ok, const std::string& detail)
{
    std::printf("[%s] criterion %d: %s\n", ok ? "PASS" : "FAIL", id, detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

std::string fmt(const char* f, double a = 0, double b = 0, double c = 0, double d = 0)
{
    char buf[256];
    std::snprintf(buf, sizeof(buf), f, a, b, c, d);
    return buf;
}

void specialization()
{
    const auto t0 = Clock::now();
    std::mt19937_64 rng(101);
    std::uniform_real_distribution<double> radius(0.1, 20.0), design(-kPi / 2, kPi / 2), pitch(0.125, 0.6);
    std::uniform_int_distribution<int> rows(1, 64), cols(1, 16);
    const double lambda = wavelength_from_frequency(26e9);
    double worst = 0.0;
    for (int t = 0; t < 100; ++t)
    {
        const CirsLayout l = build_cylindrical_layout(CirsParams::cylindrical(
            rows(rng), cols(rng), pitch(rng) * lambda, pitch(rng) * lambda, radius(rng), lambda));
        const double th = design(rng);
        const PhaseProfile g = phase_general(l, AngleSpec::mirror(th));
        const PhaseProfile m = phase_cylindrical_mirror(l, th);
        for (std::size_t i = 0; i < l.size(); ++i)
            worst = std::max(worst, std::abs(wrap_phase(g.unwrapped(i) - m.unwrapped(i))));
    }
    const double dt = seconds_since(t0);
    report(1, worst <= 1e-9 && dt < 1.0,
           fmt("general design equals the mirror design, max error %.3g rad over 100 layouts (%.3f s)", worst, dt));
}

void coherent_bound()
{
    const auto t0 = Clock::now();
    std::mt19937_64 rng(202);
    std::uniform_real_distribution<double> az(-kPi / 2, kPi / 2), el(0.2, kPi - 0.2), ph(-kPi, kPi),
        radius(0.1, 20.0);
    std::uniform_int_distribution<int> dim(1, 32);
    const double lambda = wavelength_from_frequency(26e9);
    bool bound_ok = true;
    double worst_eq = 0.0;
    for (int t = 0; t < 1000; ++t)
    {
        const CirsLayout l = build_cylindrical_layout(
            CirsParams::cylindrical(dim(rng), dim(rng), 0.25 * lambda, 0.25 * lambda, radius(rng), lambda));
        const double mn = static_cast<double>(l.size());
        const Direction in{az(rng), el(rng)}, out{az(rng), el(rng)};
        std::vector<double> v(l.size());
        for (double& x : v) x = ph(rng);
        const cplx g = cascaded_gain(l, PhaseProfile(v, PhaseSource::general), in, out);
        if (std::abs(g) > mn * (1.0 + 1e-12)) bound_ok = false;
        const PhaseProfile matched = phase_general(l, {in.azimuth, in.elevation, out.azimuth, out.elevation});
        worst_eq = std::max(worst_eq, std::abs(std::abs(cascaded_gain(l, matched, in, out)) - mn) / mn);
    }
    const double dt = seconds_since(t0);
    report(2, bound_ok && worst_eq <= 1e-9 && dt < 5.0,
           std::string("|g| <= MN for 1000 random profiles: ") + (bound_ok ? "yes" : "no") +
               fmt("; matched relative error %.3g (%.3f s)", worst_eq, dt));
}

void chamber()
{
    const auto t0 = Clock::now();
    const ChamberRun run = run_chamber(ChamberConfig{});
    const double dt = seconds_since(t0);
    const double gain = run.result.focusing_gain_db;
    const double ratio = run.lobe_width_patterned / run.lobe_width_reference;
    report(3, std::abs(gain - 10.0) <= 4.0 && ratio <= 0.5 && dt < 30.0,
           fmt("focusing gain %.2f dB (target 10 +- 4), lobe width ratio %.3f (<= 0.5) (%.2f s)", gain, ratio, dt));
}

SweepConfig v2v_config(int rows, int cols)
{
    SweepConfig c;
    c.rho_list = {10.0, 50.0};
    c.p_grid = {0.0, 0.25, 0.5, 0.75, 1.0};
    c.drops_per_point = 200;
    c.cirs_rows = rows;
    c.cirs_cols = cols;
    c.threads = 8;
    return c;
}

bool monotone_cirs(const SweepResult& r, const SweepConfig& c, std::string& detail)
{
    bool ok = true;
    for (double rho : c.rho_list)
    {
        detail += fmt("rho=%g cirs:", rho);
        for (std::size_t i = 0; i < c.p_grid.size(); ++i)
        {
            const SnrStats& s = r.at(Mode::cirs, rho, c.p_grid[i]);
            detail += fmt(" %.2f", s.mean_db);
            if (i == 0) continue;
            const SnrStats& prev = r.at(Mode::cirs, rho, c.p_grid[i - 1]);
            if (s.mean_db < prev.mean_db - std::max(s.std_error(), prev.std_error())) ok = false;
        }
        detail += "; ";
    }
    return ok;
}

void v2v_trends(SweepResult& full, SweepConfig& full_cfg)
{
    full_cfg = v2v_config(400, 400);
    const auto t0 = Clock::now();
    full = run_v2v_sweep(full_cfg);
    const double dt = seconds_since(t0);

    std::string detail;
    const bool mono = monotone_cirs(full, full_cfg, detail);
    const double g10 = full.at(Mode::cirs, 10.0, 1.0).mean_db - full.at(Mode::direct, 10.0, 1.0).mean_db;
    const double g50 = full.at(Mode::cirs, 50.0, 1.0).mean_db - full.at(Mode::direct, 50.0, 1.0).mean_db;
    const bool g10_ok = std::abs(g10 - 8.0) <= 5.0;
    const bool g50_ok = std::abs(g50 - 25.0) <= 6.0;

    const SweepConfig smoke_cfg = v2v_config(100, 100);
    const auto t1 = Clock::now();
    const SweepResult smoke = run_v2v_sweep(smoke_cfg);
    const double dt_smoke = seconds_since(t1);
    std::string smoke_detail;
    const bool smoke_mono = monotone_cirs(smoke, smoke_cfg, smoke_detail);

    std::printf("  full MN=160000, 200 drops/point: %s\n", detail.c_str());
    std::printf("  smoke MN=10000: %s\n", smoke_detail.c_str());
    const bool ok = mono && g10_ok && g50_ok && dt < 600.0 && smoke_mono && dt_smoke < 60.0;
    report(4, ok,
           std::string("(a) cirs monotone in P: ") + (mono ? "yes" : "no") +
               fmt("; (b) gain at P=1: rho=10 %.2f dB (8 +- 5), rho=50 %.2f dB (25 +- 6); ", g10, g50) +
               fmt("full sweep %.1f s, smoke %.1f s, smoke monotone: ", dt, dt_smoke) + (smoke_mono ? "yes" : "no"));
}

void ordering_and_flatness(const SweepResult& r, const SweepConfig& c)
{
    bool order_ok = true;
    std::string violations;
    for (double rho : c.rho_list)
        for (double p : c.p_grid)
        {
            const SnrStats& d = r.at(Mode::direct, rho, p);
            const SnrStats& ci = r.at(Mode::cirs, rho, p);
            const SnrStats& cr = r.at(Mode::cris, rho, p);
            const bool a = cr.mean_db >= ci.mean_db - std::max(cr.std_error(), ci.std_error());
            const bool b = ci.mean_db >= d.mean_db - std::max(ci.std_error(), d.std_error());
            if (!a || !b)
            {
                order_ok = false;
                violations += fmt(" (rho=%g, P=%g)", rho, p);
            }
        }
    bool flat_ok = true;
    std::string flat;
    for (double rho : c.rho_list)
    {
        const double delta = r.at(Mode::cris, rho, 1.0).mean_db - r.at(Mode::cris, rho, 0.25).mean_db;
        flat += fmt(" rho=%g: %.2f dB", rho, delta);
        if (std::abs(delta) > 3.0) flat_ok = false;
    }
    report(5, order_ok && flat_ok,
           std::string("ordering cris >= cirs >= direct: ") + (order_ok ? "yes" : "violated at" + violations) +
               "; C-RIS change P=0.25 -> 1 (|.| <= 3 dB):" + flat);
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int cli(const std::string& args)
{
    const int status = std::system((std::string(CIRS_SIM_PATH) + " " + args + " > /dev/null 2>&1").c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

void determinism()
{
    const fs::path dir = fs::temp_directory_path() / ("cirs_acceptance_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    const fs::path cfg = dir / "cfg.json";
    std::ofstream(cfg) << R"({"seed": 7, "sweep": {"drops_per_point": 50}})";
    bool ok = true;
    for (const char* sub : {"v2v", "chamber"})
    {
        const fs::path a = dir / (std::string(sub) + "_1.csv");
        const fs::path b = dir / (std::string(sub) + "_8.csv");
        const int ca = cli(std::string(sub) + " --config " + cfg.string() + " --out " + a.string() + " --threads 1");
        const int cb = cli(std::string(sub) + " --config " + cfg.string() + " --out " + b.string() + " --threads 8");
        const std::string sa = slurp(a);
        ok = ok && ca == 0 && cb == 0 && !sa.empty() && sa == slurp(b);
    }
    std::error_code ec;
    fs::remove_all(dir, ec);
    report(6, ok, std::string("v2v and chamber CSVs byte-identical at 1 and 8 threads: ") + (ok ? "yes" : "no"));
}

void link_budget()
{
    const LinkParams link;
    const double fspl_db = amplitude_to_db(fspl_amplitude(100.0, link.wavelength()));

    HighwayConfig hw;
    hw.density = 0.0;
    Rng rng(3);
    const Scenario s = generate_scenario(hw, rng);
    Rng prng(4);
    const RankOneTerm d = direct_channel(s.p_tx, s.p_rx, 0, link, prng);
    const BeamDecision dec = select_beam_pair(composite_channel(d, {}), build_codebooks(s, {}, link), link);
    const double K = link.antennas;
    const double closed = db_to_linear_power(link.tx_power_dbm - link.noise_power_dbm) * std::norm(d.gain) *
                          std::pow(K, 4) / K;
    const double rel = std::abs(db_to_linear_power(dec.snr_db) / closed - 1.0);
    report(7, std::abs(fspl_db + 100.75) <= 0.01 && rel <= 1e-9,
           fmt("FSPL(100 m, 26 GHz) = %.4f dB (-100.75 +- 0.01); matched-beam SNR %.4f dB, relative error %.3g",
               fspl_db, dec.snr_db, rel));
}

} // namespace

int main()
{
    specialization();
    coherent_bound();
    chamber();
    SweepResult sweep;
    SweepConfig cfg;
    v2v_trends(sweep, cfg);
    ordering_and_flatness(sweep, cfg);
    determinism();
    link_budget();
    std::printf("%d of 7 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
