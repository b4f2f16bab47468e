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

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

#include "mmshare/config.hpp"
#include "mmshare/rng.hpp"

namespace mmshare {

enum class NodeKind { Bs, Ue };

struct Point {
    double x_m = 0.0;
    double y_m = 0.0;
};

struct Node {
    double x_m = 0.0;
    double y_m = 0.0;
    int op = 0; // operator tag, 0 or 1
    NodeKind kind = NodeKind::Ue;
};

// One drop's node placement. The probe UE sits at the exact area center and
// is always the last UE (index typical_ue); association maps each UE to a BS
// index, -1 when every candidate link is in outage.
struct Deployment {
    std::vector<Node> bss;
    std::vector<Node> ues;
    bool sites_colocated = false; // co-located BS pairs (infrastructure sharing)
    std::vector<int> association;
    std::size_t typical_ue = 0;
};

// Link distance floored at 1 m, the pathloss reference distance, so nodes
// falling arbitrarily close stay inside the law's domain.
inline double link_distance_m(const Node& a, const Node& b)
{
    const double dx = a.x_m - b.x_m;
    const double dy = a.y_m - b.y_m;
    return std::max(1.0, std::hypot(dx, dy));
}

// Homogeneous PPP on the square [0, sqrt(A)]^2: Poisson count, uniform
// positions, meters.
inline std::vector<Point> sample_ppp(double density_per_km2, double area_km2, RngStream& rng)
{
    if (density_per_km2 < 0.0)
        throw std::invalid_argument("sample_ppp: density must be >= 0");
    if (!(area_km2 > 0.0))
        throw std::invalid_argument("sample_ppp: area must be > 0");
    const long n = rng.poisson(density_per_km2 * area_km2);
    const double side_m = std::sqrt(area_km2) * 1000.0;
    std::vector<Point> pts(static_cast<std::size_t>(n));
    for (auto& p : pts)
    {
        p.x_m = rng.uniform(0.0, side_m);
        p.y_m = rng.uniform(0.0, side_m);
    }
    return pts;
}

/*!
 * Places one drop's nodes. Per-operator independent PPPs for BSs and UEs;
 * with infrastructure sharing the BS process is a site PPP instead, each
 * site hosting one co-located BS per operator (pairs adjacent in `bss`).
 * Pooled-spectrum open access changes who may associate where, not the
 * deployment, so the same point processes serve all scenarios.
 */
inline Deployment deploy(const SimulationConfig& cfg, RngStream& rng)
{
    Deployment d;
    d.sites_colocated = (cfg.scenario == Scenario::SpectrumInfra);
    if (d.sites_colocated)
    {
        const auto sites = sample_ppp(cfg.bs_density, cfg.area_km2, rng);
        d.bss.reserve(sites.size() * static_cast<std::size_t>(cfg.num_operators));
        for (const auto& s : sites)
            for (int op = 0; op < cfg.num_operators; ++op)
                d.bss.push_back({s.x_m, s.y_m, op, NodeKind::Bs});
    }
    else
    {
        for (int op = 0; op < cfg.num_operators; ++op)
            for (const auto& s : sample_ppp(cfg.bs_density, cfg.area_km2, rng))
                d.bss.push_back({s.x_m, s.y_m, op, NodeKind::Bs});
    }
    for (int op = 0; op < cfg.num_operators; ++op)
        for (const auto& s : sample_ppp(cfg.ue_density, cfg.area_km2, rng))
            d.ues.push_back({s.x_m, s.y_m, op, NodeKind::Ue});

    const double side_m = std::sqrt(cfg.area_km2) * 1000.0;
    d.typical_ue = d.ues.size();
    d.ues.push_back({0.5 * side_m, 0.5 * side_m, 0, NodeKind::Ue});
    return d;
}

/*!
 * Minimum pathloss+shadowing association. loss_db is row-major indexed
 * [ue * n_bs + bs], +inf for outage links. Candidates are same-operator BSs,
 * or every BS under open access. Exact ties go to the lowest BS index; a UE
 * with no finite candidate maps to -1.
 */
inline std::vector<int> associate(const Deployment& d, const std::vector<double>& loss_db,
                                  bool open_access)
{
    const std::size_t nb = d.bss.size();
    if (loss_db.size() != nb * d.ues.size())
        throw std::invalid_argument("associate: loss matrix size mismatch");
    std::vector<int> assoc(d.ues.size(), -1);
    for (std::size_t u = 0; u < d.ues.size(); ++u)
    {
        double best = std::numeric_limits<double>::infinity();
        int best_bs = -1;
        for (std::size_t b = 0; b < nb; ++b)
        {
            if (!open_access && d.bss[b].op != d.ues[u].op)
                continue;
            if (const double loss = loss_db[u * nb + b]; loss < best)
            {
                best = loss;
                best_bs = static_cast<int>(b);
            }
        }
        assoc[u] = best_bs;
    }
    return assoc;
}

// Number of UEs associated to one BS (the probe UE counts like any other).
inline int cell_load(const Deployment& d, int bs_index)
{
    if (d.association.size() != d.ues.size())
        throw std::logic_error("cell_load: association not computed");
    int n = 0;
    for (const int a : d.association)
        if (a == bs_index)
            ++n;
    return n;
}

} // namespace mmshare
