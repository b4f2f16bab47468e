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
#include <complex>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "mmshare/config.hpp"
#include "mmshare/rng.hpp"
#include "mmshare/units.hpp"

namespace mmshare {

struct Subpath {
    double aod_az_rad = 0.0; // departure azimuth
    double aod_el_rad = 0.0; // departure elevation
    double aoa_az_rad = 0.0; // arrival azimuth
    double aoa_el_rad = 0.0; // arrival elevation
    double power = 0.0;      // linear, normalized over the whole set
    double phase_rad = 0.0;  // in [0, 2*pi)
    double omega_rad = 0.0;  // Doppler angle; inert at the static snapshot
};

struct Cluster {
    double aod_az_rad = 0.0; // central departure azimuth
    double aod_el_rad = 0.0;
    double aoa_az_rad = 0.0; // central arrival azimuth
    double aoa_el_rad = 0.0;
    std::vector<Subpath> subpaths;
    bool suppressed = false; // set by the back-lobe filter (see Model 3)

    double power() const
    {
        double s = 0.0;
        for (const auto& sp : subpaths)
            s += sp.power;
        return s;
    }
};

struct ClusterSet {
    std::vector<Cluster> clusters;
    double doppler_hz = 0.0; // inert at the static snapshot

    std::size_t cluster_count() const { return clusters.size(); }

    double total_power() const
    {
        double s = 0.0;
        for (const auto& c : clusters)
            s += c.power();
        return s;
    }
};

struct BeamPair {
    Eigen::VectorXcd w_tx; // unit norm, length n_tx
    Eigen::VectorXcd w_rx; // unit norm, length n_rx
};

struct ChannelMatrix {
    Eigen::MatrixXcd h; // n_rx x n_tx
    ClusterSet source;  // the generating cluster set
};

// Per-subpath unnormalized power of a cluster with draw (u, v, z) and l
// subpaths: u^(r_tau-1) * 10^(-0.1 z + v) / l. Dividing by l spreads the
// cluster's power equally over its subpaths.
inline double subpath_power_weight(double u, double v, double z, int l, double r_tau)
{
    if (l < 1)
        throw std::invalid_argument("subpath_power_weight: subpath count must be >= 1");
    return std::pow(u, r_tau - 1.0) * std::pow(10.0, -0.1 * z + v) / static_cast<double>(l);
}

/*!
 * Draws one cluster/subpath set: cluster count max(1, Poisson(lambda)),
 * subpath counts uniform on {1..10}, per-cluster power from the delay-power
 * law, central angles uniform (azimuth full circle, elevation bounded),
 * subpath angle offsets within the configured spreads, phases uniform.
 * Subpath powers are normalized so they sum to 1 over the whole set.
 */
inline ClusterSet sample_cluster_set(const ModelParams& p, RngStream& rng)
{
    if (!(p.cluster_mean > 0.0))
        throw std::invalid_argument("sample_cluster_set: cluster mean must be > 0");
    const int k = static_cast<int>(std::max<long>(1, rng.poisson(p.cluster_mean)));
    const double el_spread = deg_to_rad(p.elevation_spread_deg);
    const double az_off = deg_to_rad(p.subpath_az_spread_deg);
    const double el_off = deg_to_rad(p.subpath_el_spread_deg);
    const double two_pi = 2.0 * std::numbers::pi;

    ClusterSet set;
    set.clusters.resize(k);
    double total = 0.0;
    for (auto& c : set.clusters)
    {
        const int l = rng.uniform_int(1, 10);
        const double u = rng.uniform();
        const double v = rng.uniform(0.0, 0.6);
        const double z = rng.normal(0.0, p.zeta_db);
        c.aod_az_rad = rng.uniform(0.0, two_pi);
        c.aod_el_rad = rng.uniform(-el_spread, el_spread);
        c.aoa_az_rad = rng.uniform(0.0, two_pi);
        c.aoa_el_rad = rng.uniform(-el_spread, el_spread);
        const double w = subpath_power_weight(u, v, z, l, p.r_tau);
        c.subpaths.resize(l);
        for (auto& sp : c.subpaths)
        {
            sp.aod_az_rad = c.aod_az_rad + rng.uniform(-az_off, az_off);
            sp.aod_el_rad = c.aod_el_rad + rng.uniform(-el_off, el_off);
            sp.aoa_az_rad = c.aoa_az_rad + rng.uniform(-az_off, az_off);
            sp.aoa_el_rad = c.aoa_el_rad + rng.uniform(-el_off, el_off);
            sp.phase_rad = rng.uniform(0.0, two_pi);
            sp.power = w;
            total += w;
        }
    }
    if (total > 0.0)
    {
        for (auto& c : set.clusters)
            for (auto& sp : c.subpaths)
                sp.power /= total;
    }
    else
    {
        // all power draws hit exactly zero (possible only when U rounds to 0):
        // fall back to an equal split, keeping the set normalized
        std::size_t n = 0;
        for (const auto& c : set.clusters)
            n += c.subpaths.size();
        for (auto& c : set.clusters)
            for (auto& sp : c.subpaths)
                sp.power = 1.0 / static_cast<double>(n);
    }
    return set;
}

/*!
 * Steering vector of a half-wavelength-spaced uniform planar array toward
 * horizontal angle theta and vertical angle phi: element (p, q) carries
 * phase pi*(p*sin(theta)*cos(phi) + q*sin(phi)), laid out as the Kronecker
 * combination of the vertical and horizontal progressions (index q*cols+p).
 */
inline Eigen::VectorXcd spatial_signature(const PlanarArray& a, double theta_rad, double phi_rad)
{
    if (a.rows < 1 || a.cols < 1 || a.elements != a.rows * a.cols)
        throw std::invalid_argument("spatial_signature: invalid array dimensions");
    const double pi = std::numbers::pi;
    const std::complex<double> step_h =
        std::polar(1.0, pi * std::sin(theta_rad) * std::cos(phi_rad));
    const std::complex<double> step_v = std::polar(1.0, pi * std::sin(phi_rad));
    Eigen::VectorXcd u(a.elements);
    std::complex<double> row_phase(1.0, 0.0);
    Eigen::Index i = 0;
    for (int q = 0; q < a.rows; ++q)
    {
        std::complex<double> ph = row_phase;
        for (int p = 0; p < a.cols; ++p)
        {
            u[i++] = ph;
            ph *= step_h;
        }
        row_phase *= step_v;
    }
    return u;
}

// Complex subpath amplitude sqrt(P) * e^(j psi). The Doppler factor of the
// underlying fading model equals 1 at the static snapshot t = 0.
inline std::complex<double> small_scale_gain(double power, double phase_rad)
{
    if (!(power >= 0.0) || power > 1.0 + 1e-12)
        throw std::invalid_argument("small_scale_gain: power must lie in [0, 1]");
    return std::polar(std::sqrt(power), phase_rad);
}

/*!
 * Marks clusters falling in an array back half-space, modeling a reflector
 * plane behind each array: a cluster is suppressed when its central
 * departure azimuth lies behind the TX array or its central arrival azimuth
 * lies behind the RX array. "Behind" means cos(azimuth - boresight) < 0.
 * Only Model 3 consults the flags.
 */
inline void apply_back_lobe_filter(ClusterSet& set, double tx_boresight_az_rad,
                                   double rx_boresight_az_rad)
{
    for (auto& c : set.clusters)
    {
        const bool tx_back = std::cos(c.aod_az_rad - tx_boresight_az_rad) < 0.0;
        const bool rx_back = std::cos(c.aoa_az_rad - rx_boresight_az_rad) < 0.0;
        c.suppressed = tx_back || rx_back;
    }
}

// H = sum over subpaths of g_kl * u_rx(arrival) * u_tx(departure)^H.
// Under Model 3, clusters flagged by the back-lobe filter contribute nothing.
inline ChannelMatrix channel_matrix(const ClusterSet& set, const PlanarArray& tx,
                                    const PlanarArray& rx, ChannelModel model)
{
    ChannelMatrix out;
    out.h = Eigen::MatrixXcd::Zero(rx.elements, tx.elements);
    const bool filtered = (model == ChannelModel::Model3);
    for (const auto& c : set.clusters)
    {
        if (filtered && c.suppressed)
            continue;
        for (const auto& sp : c.subpaths)
        {
            const std::complex<double> g = small_scale_gain(sp.power, sp.phase_rad);
            const Eigen::VectorXcd u_rx = spatial_signature(rx, sp.aoa_az_rad, sp.aoa_el_rad);
            const Eigen::VectorXcd u_tx = spatial_signature(tx, sp.aod_az_rad, sp.aod_el_rad);
            out.h.noalias() += g * (u_rx * u_tx.adjoint());
        }
    }
    out.source = set;
    return out;
}

// Strongest non-suppressed cluster; ties broken by lowest index.
inline const Cluster& strongest_cluster(const ClusterSet& set)
{
    const Cluster* best = nullptr;
    double best_power = -1.0;
    for (const auto& c : set.clusters)
    {
        if (c.suppressed)
            continue;
        if (const double pw = c.power(); pw > best_power)
        {
            best = &c;
            best_power = pw;
        }
    }
    if (best == nullptr)
        throw std::domain_error("beamforming_vectors: every cluster is suppressed");
    return *best;
}

/*!
 * Analog steering toward the central angles of the strongest cluster, one
 * vector per side, normalized to unit Euclidean norm. Steering to u/sqrt(n)
 * attains the Cauchy-Schwarz maximum |u^H w|^2 = n.
 * Throws std::domain_error when every cluster is suppressed (a Model 3 link
 * with all energy behind both arrays); callers treat that link as outage.
 */
inline BeamPair beamforming_vectors(const ClusterSet& set, const PlanarArray& tx,
                                    const PlanarArray& rx)
{
    const Cluster& c = strongest_cluster(set);
    BeamPair pair;
    pair.w_tx = spatial_signature(tx, c.aod_az_rad, c.aod_el_rad) /
                std::sqrt(static_cast<double>(tx.elements));
    pair.w_rx = spatial_signature(rx, c.aoa_az_rad, c.aoa_el_rad) /
                std::sqrt(static_cast<double>(rx.elements));
    return pair;
}

// G = |w_rx^H H w_tx|^2, linear.
inline double bf_gain(const ChannelMatrix& ch, const BeamPair& pair)
{
    if (pair.w_rx.size() != ch.h.rows() || pair.w_tx.size() != ch.h.cols())
        throw std::invalid_argument("bf_gain: beam/channel dimension mismatch");
    const std::complex<double> amp = pair.w_rx.dot(ch.h * pair.w_tx); // dot conjugates the lhs
    return std::norm(amp);
}

/*!
 * Two-valued aggregate beamforming pattern: each side contributes half the
 * aggregate extreme in dB (g_max/2 when the link falls inside the main lobe,
 * g_min/2 otherwise), so (aligned, aligned) -> g_max and (miss, miss) ->
 * g_min. The serving link is always (true, true).
 */
inline double rect_gain(bool tx_aligned, bool rx_aligned, const RectPattern& p)
{
    const double tx = tx_aligned ? 0.5 * p.g_max_db : 0.5 * p.g_min_db;
    const double rx = rx_aligned ? 0.5 * p.g_max_db : 0.5 * p.g_min_db;
    return tx + rx;
}

// Probability that an interfering link falls inside one side's main lobe of
// width 2*theta_b out of the full circle.
inline double rect_alignment_probability(const RectPattern& p)
{
    return 2.0 * p.theta_b_deg / 360.0;
}

/*!
 * Aggregate TX+RX gain of boresight-steered beams against a single path
 * swept over azimuth, one (angle_deg, gain_db) sample per point. Gains are
 * floored at -100 dB so pattern nulls stay plottable.
 */
inline std::vector<std::pair<double, double>> pattern_sweep(const PlanarArray& tx,
                                                            const PlanarArray& rx, int points)
{
    if (points < 2)
        throw std::invalid_argument("pattern_sweep: need at least 2 points");
    const Eigen::VectorXcd w_tx =
        spatial_signature(tx, 0.0, 0.0) / std::sqrt(static_cast<double>(tx.elements));
    const Eigen::VectorXcd w_rx =
        spatial_signature(rx, 0.0, 0.0) / std::sqrt(static_cast<double>(rx.elements));
    std::vector<std::pair<double, double>> sweep;
    sweep.reserve(points);
    for (int i = 0; i < points; ++i)
    {
        const double az_deg = -180.0 + 360.0 * i / (points - 1);
        const double az = deg_to_rad(az_deg);
        const Eigen::VectorXcd u_tx = spatial_signature(tx, az, 0.0);
        const Eigen::VectorXcd u_rx = spatial_signature(rx, az, 0.0);
        const double g = std::norm(w_tx.dot(u_tx)) * std::norm(w_rx.dot(u_rx));
        sweep.emplace_back(az_deg, std::max(-100.0, linear_to_db(g)));
    }
    return sweep;
}

} // namespace mmshare
