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

#include "cirs/beam_select.hpp"

#include <stdexcept>

namespace cirs {

Codebooks build_codebooks(const Scenario& scn, const std::vector<RelaySite>& candidates, const LinkParams& params)
{
    Codebooks books;
    const double lambda = params.wavelength();
    const double spacing = params.spacing();
    auto add = [&](BeamTarget target, const Vec3& tx_to, const Vec3& rx_to) {
        const double tx_angle = array_angle(scn.p_tx, tx_to);
        const double rx_angle = array_angle(scn.p_rx, rx_to);
        books.tx_angles.push_back(tx_angle);
        books.rx_angles.push_back(rx_angle);
        books.tx_beams.push_back(ula_steering(params.antennas, spacing, lambda, tx_angle));
        books.rx_beams.push_back(ula_steering(params.antennas, spacing, lambda, rx_angle));
        books.targets.push_back(target);
    };

    add({RankOneTerm::Kind::direct, -1}, scn.p_rx, scn.p_tx);
    for (std::size_t c = 0; c < candidates.size(); ++c)
        add({RankOneTerm::Kind::relay, static_cast<int>(c)}, candidates[c].mount.position,
            candidates[c].mount.position);
    return books;
}

double beam_pair_snr_db(const ChannelRealization& channel, const CVector& w, const CVector& f,
                        const LinkParams& params)
{
    const double y2 = std::norm(channel.bilinear(w, f));
    return params.tx_power_dbm - params.noise_power_dbm + power_to_db(y2 / channel.antennas());
}

BeamDecision select_beam_pair(const ChannelRealization& channel, const Codebooks& books, const LinkParams& params)
{
    const int K = channel.antennas();
    const auto n = static_cast<Eigen::Index>(books.size());
    if (n == 0) throw std::invalid_argument("select_beam_pair: empty codebooks");
    const auto& terms = channel.terms();
    const auto T = static_cast<Eigen::Index>(terms.size());

    // Y(r, t) = sum_p gain_p (w_r^H a_rx,p)(a_tx,p^H f_t), as two small products.
    CMatrix W(K, n), F(K, n), Arx(K, T), Atx(K, T);
    for (Eigen::Index i = 0; i < n; ++i)
    {
        if (books.tx_beams[i].size() != K || books.rx_beams[i].size() != K)
            throw std::invalid_argument("select_beam_pair: beam size does not match the channel");
        W.col(i) = books.rx_beams[i];
        F.col(i) = books.tx_beams[i];
    }
    Eigen::VectorXcd gains(T);
    for (Eigen::Index p = 0; p < T; ++p)
    {
        const auto& t = terms[p];
        Arx.col(p) = ula_steering(t.antennas, t.spacing, t.wavelength, t.aoa);
        Atx.col(p) = ula_steering(t.antennas, t.spacing, t.wavelength, t.aod);
        gains[p] = t.gain;
    }
    const CMatrix Y = (W.adjoint() * Arx) * gains.asDiagonal() * (Atx.adjoint() * F);

    BeamDecision best;
    double best_power = -1.0;
    for (Eigen::Index t = 0; t < n; ++t)
        for (Eigen::Index r = 0; r < n; ++r)
        {
            const double p = std::norm(Y(r, t));
            if (p > best_power)
            {
                best_power = p;
                best.tx_index = static_cast<std::size_t>(t);
                best.rx_index = static_cast<std::size_t>(r);
            }
        }
    best.snr_db = params.tx_power_dbm - params.noise_power_dbm + power_to_db(best_power / K);
    best.chosen_target = books.targets[best.tx_index];
    return best;
}

} // namespace cirs
