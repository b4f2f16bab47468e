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

#include <atomic>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <thread>
#include <vector>

#include "mmshare/config.hpp"
#include "mmshare/geometry.hpp"
#include "mmshare/metrics.hpp"
#include "mmshare/mimo.hpp"
#include "mmshare/propagation.hpp"
#include "mmshare/rng.hpp"
#include "mmshare/units.hpp"

namespace mmshare {

// How a sharing configuration shapes one evaluation: the bandwidth the
// serving operator runs on, who may associate where, and who interferes.
struct ScenarioSpec {
    Scenario scenario = Scenario::NoSharing;
    double bandwidth_hz = 0.0;     // effective per-operator bandwidth
    bool open_access = false;      // UEs may attach to any operator's BS
    bool all_bss_interfere = true; // false: same-operator interferers only
};

inline ScenarioSpec scenario_spec(const SimulationConfig& cfg)
{
    ScenarioSpec s;
    s.scenario = cfg.scenario;
    switch (cfg.scenario)
    {
    case Scenario::NoSharing:
        // orthogonal bands: each operator gets an equal split and only its
        // own BSs interfere
        s.bandwidth_hz = cfg.total_bandwidth_hz / cfg.num_operators;
        s.open_access = false;
        s.all_bss_interfere = false;
        break;
    case Scenario::SpectrumAccess:
        s.bandwidth_hz = cfg.total_bandwidth_hz;
        s.open_access = true;
        s.all_bss_interfere = true;
        break;
    case Scenario::Spectrum:
    case Scenario::SpectrumInfra:
        s.bandwidth_hz = cfg.total_bandwidth_hz;
        s.open_access = false;
        s.all_bss_interfere = true;
        break;
    }
    return s;
}

struct DropResult {
    // linear SINR; -inf marks outage/unassociated, never a sentinel number
    double sinr_linear = -std::numeric_limits<double>::infinity();
    double rate_bps = 0.0;
    int serving_load = 0; // users sharing the serving cell, 0 if unassociated
    LinkState serving_state = LinkState::Outage;
};

// One term of the SINR budget, all in dB/dBm.
struct LinkTerm {
    double tx_power_dbm = 0.0;
    double loss_db = 0.0; // pathloss + shadowing; +inf for outage
    double gain_db = 0.0; // beamforming gain
};

// SINR = S / (sum of interferer powers + noise), composed in linear units
// from per-link dB budgets. Outage interferers contribute nothing.
inline double sinr_linear(const LinkTerm& serving, const std::vector<LinkTerm>& interferers,
                          double noise_dbm)
{
    if (std::isinf(serving.loss_db))
        throw std::invalid_argument("sinr_linear: serving link is in outage");
    const double signal_mw = dbm_to_mw(serving.tx_power_dbm - serving.loss_db + serving.gain_db);
    double denom_mw = dbm_to_mw(noise_dbm);
    for (const auto& i : interferers)
    {
        if (std::isinf(i.loss_db))
            continue;
        denom_mw += dbm_to_mw(i.tx_power_dbm - i.loss_db + i.gain_db);
    }
    return signal_mw / denom_mw;
}

// Deployment with its large-scale link realizations and association.
struct RealizedDeployment {
    Deployment d;
    std::vector<double> loss_db;          // row-major [ue * n_bs + bs], +inf for outage
    std::vector<LargeScale> probe_links;  // the probe UE's row, one per BS
};

// Deploys one drop, realizes every UE-BS large-scale link in a fixed order,
// and associates every UE by minimum pathloss+shadowing.
inline RealizedDeployment realize_deployment(const SimulationConfig& cfg,
                                             const ScenarioSpec& spec, long drop_index)
{
    const auto drop = static_cast<std::uint64_t>(drop_index);
    RealizedDeployment rd;
    RngStream deploy_rng(cfg.rng_seed, drop, "deploy");
    rd.d = deploy(cfg, deploy_rng);

    const std::size_t nb = rd.d.bss.size();
    const std::size_t nu = rd.d.ues.size();
    rd.loss_db.resize(nu * nb);
    rd.probe_links.resize(nb);
    RngStream ls_rng(cfg.rng_seed, drop, "large_scale");
    for (std::size_t u = 0; u < nu; ++u)
    {
        for (std::size_t b = 0; b < nb; ++b)
        {
            const double dist = link_distance_m(rd.d.ues[u], rd.d.bss[b]);
            const LargeScale ls = sample_large_scale(dist, cfg.channel_model, cfg.model_params,
                                                     ls_rng);
            rd.loss_db[u * nb + b] = ls.total_loss_db();
            if (u == rd.d.typical_ue)
                rd.probe_links[b] = ls;
        }
    }
    rd.d.association = associate(rd.d, rd.loss_db, spec.open_access);
    return rd;
}

/*!
 * One Monte Carlo repetition: deploy, realize every UE-BS large-scale link,
 * associate by minimum pathloss+shadowing, then evaluate the probe UE's
 * SINR and rate under the configured channel model. All randomness comes
 * from substreams keyed by (seed, drop index, purpose), so drops are
 * independent and reproducible regardless of execution order.
 */
inline DropResult run_drop(const SimulationConfig& cfg, const ScenarioSpec& spec, long drop_index)
{
    const ChannelModel model = cfg.channel_model;
    const ModelParams& mp = cfg.model_params;
    const auto seed = cfg.rng_seed;
    const auto drop = static_cast<std::uint64_t>(drop_index);

    DropResult out; // starts as the outage record

    RealizedDeployment rd = realize_deployment(cfg, spec, drop_index);
    Deployment& d = rd.d;
    const std::vector<double>& loss = rd.loss_db;
    const std::size_t nb = d.bss.size();

    const int serving = d.bss.empty() ? -1 : d.association[d.typical_ue];
    if (serving < 0)
        return out; // no BS drawn, or every candidate in outage

    out.serving_load = cell_load(d, serving);
    out.serving_state = rd.probe_links[static_cast<std::size_t>(serving)].state;

    std::vector<int> interferers;
    interferers.reserve(nb);
    const int probe_op = d.ues[d.typical_ue].op;
    for (std::size_t b = 0; b < nb; ++b)
    {
        if (static_cast<int>(b) == serving)
            continue;
        if (spec.all_bss_interfere || d.bss[b].op == probe_op)
            interferers.push_back(static_cast<int>(b));
    }

    LinkTerm serving_term{cfg.tx_power_dbm, loss[d.typical_ue * nb + static_cast<std::size_t>(serving)],
                          0.0};
    std::vector<LinkTerm> intf_terms;
    intf_terms.reserve(interferers.size());

    if (model == ChannelModel::Model1)
    {
        // two-valued pattern: the serving link is perfectly aligned on both
        // sides; each interfering link is aligned per side with the
        // main-lobe probability
        serving_term.gain_db = rect_gain(true, true, mp.rect);
        RngStream beam_rng(seed, drop, "beams");
        const double p_align = rect_alignment_probability(mp.rect);
        for (const int b : interferers)
        {
            const bool tx_al = beam_rng.bernoulli(p_align);
            const bool rx_al = beam_rng.bernoulli(p_align);
            intf_terms.push_back({cfg.tx_power_dbm, loss[d.typical_ue * nb + b],
                                  rect_gain(tx_al, rx_al, mp.rect)});
        }
    }
    else
    {
        RngStream ch_rng(seed, drop, "channel");

        // serving link: both arrays orient toward the strongest cluster (a
        // panel faces the user it actively serves), so its boresight azimuth
        // is uniform and the back-lobe filter can never erase the aimed-at
        // cluster
        ClusterSet serving_set = sample_cluster_set(mp, ch_rng);
        const Cluster& aim = strongest_cluster(serving_set);
        const double serving_bs_boresight = aim.aod_az_rad;
        const double probe_boresight = aim.aoa_az_rad;
        if (model == ChannelModel::Model3)
            apply_back_lobe_filter(serving_set, serving_bs_boresight, probe_boresight);

        BeamPair serving_beams;
        try
        {
            serving_beams = beamforming_vectors(serving_set, cfg.tx_array, cfg.rx_array);
        }
        catch (const std::domain_error&)
        {
            return out; // no steerable cluster left: unusable link
        }
        const ChannelMatrix h_s = channel_matrix(serving_set, cfg.tx_array, cfg.rx_array, model);
        serving_term.gain_db = linear_to_db(bf_gain(h_s, serving_beams));

        const double sqrt_ntx = std::sqrt(static_cast<double>(cfg.tx_array.elements));
        for (const int b : interferers)
        {
            const double link_loss = loss[d.typical_ue * nb + b];
            if (std::isinf(link_loss))
                continue; // outage link: contributes nothing, skip its draws

            // the interferer aims at its own scheduled link, whose cluster
            // draw fixes both its beam and its panel orientation
            ClusterSet sched = sample_cluster_set(mp, ch_rng);
            const Cluster& target = strongest_cluster(sched);
            BeamPair cross;
            cross.w_tx = spatial_signature(cfg.tx_array, target.aod_az_rad, target.aod_el_rad) /
                         sqrt_ntx;
            cross.w_rx = serving_beams.w_rx;

            ClusterSet link_set = sample_cluster_set(mp, ch_rng);
            if (model == ChannelModel::Model3)
                apply_back_lobe_filter(link_set, target.aod_az_rad, probe_boresight);
            const ChannelMatrix h_k = channel_matrix(link_set, cfg.tx_array, cfg.rx_array, model);
            intf_terms.push_back(
                {cfg.tx_power_dbm, link_loss, linear_to_db(bf_gain(h_k, cross))});
        }
    }

    const double noise_dbm = noise_power_dbm(spec.bandwidth_hz, cfg.noise_figure_db);
    out.sinr_linear = sinr_linear(serving_term, intf_terms, noise_dbm);
    out.rate_bps = rate_of(out.sinr_linear, spec.bandwidth_hz, out.serving_load,
                           cfg.half_duplex_factor);
    return out;
}

/*!
 * Runs num_drops independent drops. Results are ordered by drop index and
 * bit-identical for a fixed seed no matter how many worker threads run the
 * loop, because every drop derives its own RNG substreams.
 */
inline std::vector<DropResult> run_campaign(const SimulationConfig& cfg, int threads = 1)
{
    const ScenarioSpec spec = scenario_spec(cfg);
    std::vector<DropResult> results(static_cast<std::size_t>(cfg.num_drops));
    if (cfg.num_drops == 0)
        return results;
    if (threads < 1)
        threads = 1;
    if (threads == 1)
    {
        for (long i = 0; i < cfg.num_drops; ++i)
            results[static_cast<std::size_t>(i)] = run_drop(cfg, spec, i);
        return results;
    }
    std::atomic<long> next{0};
    auto worker = [&]() {
        for (;;)
        {
            const long i = next.fetch_add(1, std::memory_order_relaxed);
            if (i >= cfg.num_drops)
                return;
            results[static_cast<std::size_t>(i)] = run_drop(cfg, spec, i);
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t)
        pool.emplace_back(worker);
    for (auto& t : pool)
        t.join();
    return results;
}

} // namespace mmshare
