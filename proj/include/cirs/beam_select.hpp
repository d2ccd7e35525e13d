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

#include <vector>

#include "cirs/scenario.hpp"

namespace cirs {

struct BeamTarget
{
    RankOneTerm::Kind kind = RankOneTerm::Kind::direct;
    int relay_index = -1;
};

// Dynamic codebooks: one Tx and one Rx beam per target (direct link first, then
// one per candidate relay).
struct Codebooks
{
    std::vector<CVector> tx_beams;
    std::vector<CVector> rx_beams;
    std::vector<double> tx_angles;
    std::vector<double> rx_angles;
    std::vector<BeamTarget> targets;

    std::size_t size() const { return targets.size(); }
};

struct BeamDecision
{
    std::size_t tx_index = 0;
    std::size_t rx_index = 0;
    double snr_db = 0.0;
    BeamTarget chosen_target;
};

Codebooks build_codebooks(const Scenario& scn, const std::vector<RelaySite>& candidates, const LinkParams& params);

/// sigma_s^2 |w^H H f|^2 / (K sigma_n^2), in dB.
double beam_pair_snr_db(const ChannelRealization& channel, const CVector& w, const CVector& f,
                        const LinkParams& params);

/// Exhaustive search over all (tx, rx) beam pairs. Ties keep the lexicographically
/// smallest (tx_index, rx_index). The chosen target is the one of the Tx beam.
BeamDecision select_beam_pair(const ChannelRealization& channel, const Codebooks& books, const LinkParams& params);

} // namespace cirs
