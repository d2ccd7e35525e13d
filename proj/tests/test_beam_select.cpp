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

#include <cmath>
#include <random>
#include <stdexcept>

#include "cirs/beam_select.hpp"

using namespace cirs;

namespace {

Scenario scenario_with_relays(int count)
{
    HighwayConfig cfg;
    cfg.density = 0.0;
    Rng rng(1);
    Scenario s = generate_scenario(cfg, rng);
    const int lanes[] = {3, 1, 4, 0};
    for (int i = 0; i < count; ++i)
    {
        Vehicle v;
        v.dims = Vec3(1.8, 5.0, 1.5);
        v.lane = lanes[i % 4];
        v.center = Vec3(cfg.lane_center(v.lane), s.midpoint().y() + 7.0 * (i / 4), 0.75);
        v.is_cav = true;
        s.vehicles.push_back(v);
    }
    return s;
}

} // namespace

TEST_CASE("codebook sizes follow the candidate count")
{
    const LinkParams link;
    const Scenario s0 = scenario_with_relays(0);
    const Codebooks b0 = build_codebooks(s0, relay_sites(s0), link);
    CHECK(b0.tx_beams.size() == 1);
    CHECK(b0.rx_beams.size() == 1);
    CHECK(b0.targets[0].kind == RankOneTerm::Kind::direct);

    const Scenario s3 = scenario_with_relays(3);
    const Codebooks b3 = build_codebooks(s3, relay_sites(s3), link);
    CHECK(b3.tx_beams.size() == 4);
    CHECK(b3.rx_beams.size() == 4);
    for (std::size_t i = 1; i < 4; ++i)
    {
        CHECK(b3.targets[i].kind == RankOneTerm::Kind::relay);
        CHECK(b3.targets[i].relay_index == static_cast<int>(i) - 1);
    }
    for (const auto& f : b3.tx_beams)
    {
        CHECK(std::abs(f.squaredNorm() - link.antennas) < 1e-12);
        for (int k = 0; k < f.size(); ++k) CHECK(std::abs(std::abs(f[k]) - 1.0) < 1e-15);
    }
}

TEST_CASE("relay beams point along the geometric offsets")
{
    const LinkParams link;
    const Scenario s = scenario_with_relays(1);
    const auto sites = relay_sites(s);
    const Codebooks b = build_codebooks(s, sites, link);
    const Vec3 r = sites[0].mount.position;
    const double tx_oracle = std::atan2(r.x() - s.p_tx.x(), r.y() - s.p_tx.y());
    const double rx_oracle = std::atan2(r.x() - s.p_rx.x(), r.y() - s.p_rx.y());
    CHECK(std::abs(b.tx_angles[1] - tx_oracle) < 1e-15);
    CHECK(std::abs(b.rx_angles[1] - rx_oracle) < 1e-15);
    CHECK(std::abs(b.tx_angles[1] - std::atan2(4.1, 50.0)) < 1e-12);
    CHECK(b.tx_angles[0] == 0.0);
    const CVector expected = ula_steering(link.antennas, link.spacing(), link.wavelength(), tx_oracle);
    CHECK((b.tx_beams[1] - expected).norm() < 1e-15);
}

TEST_CASE("matched single path SNR equals the closed form")
{
    const LinkParams link;
    const Scenario s = scenario_with_relays(0);
    Rng rng(4);
    const RankOneTerm d = direct_channel(s.p_tx, s.p_rx, 0, link, rng);
    const ChannelRealization ch = composite_channel(d, {});
    const BeamDecision dec = select_beam_pair(ch, build_codebooks(s, {}, link), link);
    CHECK(dec.tx_index == 0);
    CHECK(dec.rx_index == 0);
    const double K = link.antennas;
    const double oracle_lin = db_to_linear_power(link.tx_power_dbm - link.noise_power_dbm) *
                              std::norm(d.gain) * K * K * K;
    CHECK(std::abs(db_to_linear_power(dec.snr_db) / oracle_lin - 1.0) < 1e-9);

    const CVector a_rx = ula_steering(8, link.spacing(), link.wavelength(), d.aoa);
    const CVector a_tx = ula_steering(8, link.spacing(), link.wavelength(), d.aod);
    const cplx y = ch.bilinear(a_rx, a_tx);
    CHECK(std::abs(y - d.gain * K * K) < 1e-9 * std::abs(d.gain) * K * K);
}

TEST_CASE("strong relay wins over a blocked direct path")
{
    const LinkParams link;
    const Scenario s = scenario_with_relays(1);
    const auto sites = relay_sites(s);
    Rng rng(6);
    const RankOneTerm d = direct_channel(s.p_tx, s.p_rx, 2, link, rng);
    const double d_lo = link.wavelength() / 4.0;
    const CirsLayout l = build_cylindrical_layout(CirsParams::cylindrical(400, 400, d_lo, d_lo, 8.0, link.wavelength()));
    const Direction in = sites[0].mount.local_direction(s.p_tx);
    const Direction out = sites[0].mount.local_direction(s.p_rx);
    const PhaseProfile p = phase_general(l, {in.azimuth, in.elevation, out.azimuth, out.elevation});
    RankOneTerm relay = cascaded_channel(s.p_tx, s.p_rx, sites[0].mount, l, p, 0, 0, link, rng);
    relay.relay_index = 0;
    CHECK(std::abs(relay.gain) > std::abs(d.gain) * 8.0);

    const ChannelRealization ch = composite_channel(d, {relay});
    const Codebooks books = build_codebooks(s, sites, link);
    const BeamDecision dec = select_beam_pair(ch, books, link);
    CHECK(dec.chosen_target.kind == RankOneTerm::Kind::relay);
    CHECK(dec.tx_index == 1);
    CHECK(dec.rx_index == 1);
    CHECK(dec.snr_db >= beam_pair_snr_db(ch, books.rx_beams[0], books.tx_beams[0], link));
}

TEST_CASE("exhaustive search matches brute-force evaluation")
{
    const LinkParams link;
    const Scenario s = scenario_with_relays(6);
    const auto sites = relay_sites(s);
    std::mt19937_64 g(21);
    std::normal_distribution<double> n;
    for (int trial = 0; trial < 20; ++trial)
    {
        Rng rng(trial);
        const RankOneTerm d = direct_channel(s.p_tx, s.p_rx, trial % 3, link, rng);
        std::vector<RankOneTerm> relays;
        for (std::size_t c = 0; c < sites.size(); ++c)
        {
            RankOneTerm t = d;
            t.kind = RankOneTerm::Kind::relay;
            t.relay_index = static_cast<int>(c);
            t.aod = array_angle(s.p_tx, sites[c].mount.position);
            t.aoa = array_angle(s.p_rx, sites[c].mount.position);
            t.gain = 1e-7 * cplx(n(g), n(g));
            relays.push_back(t);
        }
        const ChannelRealization ch = composite_channel(d, relays);
        const Codebooks books = build_codebooks(s, sites, link);
        const BeamDecision dec = select_beam_pair(ch, books, link);

        double best = -INFINITY;
        std::size_t bt = 0, br = 0;
        for (std::size_t t = 0; t < books.size(); ++t)
            for (std::size_t r = 0; r < books.size(); ++r)
            {
                const double v = beam_pair_snr_db(ch, books.rx_beams[r], books.tx_beams[t], link);
                if (v > best + 1e-9)
                {
                    best = v;
                    bt = t;
                    br = r;
                }
            }
        CHECK(dec.tx_index == bt);
        CHECK(dec.rx_index == br);
        CHECK(std::abs(dec.snr_db - best) < 1e-9);
        CHECK(dec.snr_db >= beam_pair_snr_db(ch, books.rx_beams[0], books.tx_beams[0], link) - 1e-12);

        LinkParams louder = link;
        louder.tx_power_dbm += 13.7;
        const BeamDecision dec2 = select_beam_pair(ch, books, louder);
        CHECK(dec2.tx_index == dec.tx_index);
        CHECK(dec2.rx_index == dec.rx_index);
        CHECK(std::abs(dec2.snr_db - dec.snr_db - 13.7) < 1e-9);
    }
}

TEST_CASE("ties resolve to the lowest index pair")
{
    const LinkParams link;
    const Scenario s = scenario_with_relays(3);
    const auto sites = relay_sites(s);
    Rng rng(1);
    RankOneTerm d = direct_channel(s.p_tx, s.p_rx, 0, link, rng);
    d.gain = 0.0;
    const BeamDecision dec = select_beam_pair(composite_channel(d, {}), build_codebooks(s, sites, link), link);
    CHECK(dec.tx_index == 0);
    CHECK(dec.rx_index == 0);
    CHECK(std::isinf(dec.snr_db));
}

TEST_CASE("beam and channel sizes must agree")
{
    const LinkParams link;
    const Scenario s = scenario_with_relays(0);
    Rng rng(1);
    LinkParams four = link;
    four.antennas = 4;
    const RankOneTerm d = direct_channel(s.p_tx, s.p_rx, 0, four, rng);
    CHECK_THROWS_AS(select_beam_pair(composite_channel(d, {}), build_codebooks(s, {}, link), link),
                    std::invalid_argument);
    CHECK_THROWS_AS(select_beam_pair(composite_channel(d, {}), Codebooks{}, link), std::invalid_argument);
}
