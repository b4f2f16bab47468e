// SPDX-License-Identifier: Apache-2.0
//
// mmshare: system-level Monte Carlo simulator for multi-operator mmWave networks
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

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "mmshare/config.hpp"
#include "mmshare/rng.hpp"

namespace mmshare {

// Large-scale link condition. Outage means no usable path at all; it is
// unreachable under Models 1 and 4, which fold that mass into NLoS.
enum class LinkState { Los, Nlos, Outage };

inline std::string to_string(LinkState s)
{
    switch (s)
    {
    case LinkState::Los:
        return "LoS";
    case LinkState::Nlos:
        return "NLoS";
    case LinkState::Outage:
        return "Outage";
    }
    return "Outage";
}

struct StateProbabilities {
    double p_out = 0.0;
    double p_los = 0.0;
    double p_nlos = 0.0;
};

// Large-scale realization of one UE-BS link.
struct LargeScale {
    LinkState state = LinkState::Outage;
    double pathloss_db = std::numeric_limits<double>::infinity();
    double shadowing_db = 0.0; // in dB
    double distance_m = 0.0;

    // Pathloss plus shadowing; +inf for an outage link, so it contributes
    // nothing to either signal or interference.
    double total_loss_db() const { return pathloss_db + shadowing_db; }
};

/*!
 * Distance-dependent LoS / NLoS / outage probabilities:
 *   p_out  = max(0, 1 - exp(-a_out d + b_out))
 *   p_los  = (1 - p_out) exp(-a_los d)
 *   p_nlos = 1 - p_out - p_los
 * d in meters. The three values are in [0,1] and sum to 1.
 */
inline StateProbabilities state_probabilities(double d_m, const ModelParams& p)
{
    if (!(d_m > 0.0))
        throw std::invalid_argument("state_probabilities: distance must be > 0");
    const double p_out = std::max(0.0, 1.0 - std::exp(-p.a_out * d_m + p.b_out));
    const double p_los = (1.0 - p_out) * std::exp(-p.a_los * d_m);
    const double p_nlos = std::max(0.0, 1.0 - p_out - p_los);
    return {p_out, p_los, p_nlos};
}

// Model-aware variant: Models 1/4 have no outage state; reassigning its mass
// proportionally leaves p_los = exp(-a_los d) and p_nlos = 1 - p_los.
inline StateProbabilities state_probabilities(double d_m, ChannelModel model, const ModelParams& p)
{
    if (model == ChannelModel::Model1 || model == ChannelModel::Model4)
    {
        if (!(d_m > 0.0))
            throw std::invalid_argument("state_probabilities: distance must be > 0");
        const double p_los = std::exp(-p.a_los * d_m);
        return {0.0, p_los, 1.0 - p_los};
    }
    return state_probabilities(d_m, p);
}

// Categorical draw from the state probabilities at distance d.
inline LinkState sample_state(double d_m, ChannelModel model, const ModelParams& p, RngStream& rng)
{
    const StateProbabilities sp = state_probabilities(d_m, model, p);
    const double u = rng.uniform();
    if (u < sp.p_out)
        return LinkState::Outage;
    if (u < sp.p_out + sp.p_los)
        return LinkState::Los;
    return LinkState::Nlos;
}

/*!
 * Distance-based pathloss in dB.
 * Models 2/3: PL = alpha + beta * 10 * log10(d).
 * Models 1/4: PL = ref + 10 * n * log10(d) with the simplified exponents.
 */
inline double pathloss_db(double d_m, LinkState state, ChannelModel model, const ModelParams& p)
{
    if (!(d_m > 0.0))
        throw std::invalid_argument("pathloss_db: distance must be > 0");
    if (state == LinkState::Outage)
        throw std::invalid_argument("pathloss_db: outage link has no finite pathloss");
    if (model == ChannelModel::Model1 || model == ChannelModel::Model4)
    {
        const double n = (state == LinkState::Los) ? p.model1_pl.n_los : p.model1_pl.n_nlos;
        return p.model1_pl.ref_loss_db + 10.0 * n * std::log10(d_m);
    }
    const PathlossParams& pl = (state == LinkState::Los) ? p.los_pl : p.nlos_pl;
    return pl.alpha_db + pl.beta * 10.0 * std::log10(d_m);
}

// Log-normal shadowing draw in dB; zero under Models 1/4, which have no
// shadowing term. Independent per link per drop.
inline double sample_shadowing(LinkState state, ChannelModel model, const ModelParams& p,
                               RngStream& rng)
{
    if (model == ChannelModel::Model1 || model == ChannelModel::Model4)
        return 0.0;
    if (state == LinkState::Outage)
        return 0.0;
    const double sigma = (state == LinkState::Los) ? p.los_pl.sigma_db : p.nlos_pl.sigma_db;
    return rng.normal(0.0, sigma);
}

// Thermal noise floor over bandwidth bw plus noise figure: -174 dBm/Hz base.
inline double noise_power_dbm(double bw_hz, double nf_db)
{
    if (!(bw_hz > 0.0))
        throw std::invalid_argument("noise_power_dbm: bandwidth must be > 0");
    return -174.0 + 10.0 * std::log10(bw_hz) + nf_db;
}

// Draws state, pathloss, and shadowing for one link in a fixed order.
inline LargeScale sample_large_scale(double d_m, ChannelModel model, const ModelParams& p,
                                     RngStream& rng)
{
    LargeScale ls;
    ls.distance_m = d_m;
    ls.state = sample_state(d_m, model, p, rng);
    if (ls.state == LinkState::Outage)
        return ls; // loss stays +inf
    ls.pathloss_db = pathloss_db(d_m, ls.state, model, p);
    ls.shadowing_db = sample_shadowing(ls.state, model, p, rng);
    return ls;
}

} // namespace mmshare
