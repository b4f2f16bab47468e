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

// Cluster channel statistics, array steering, beamforming, and antenna patterns.

#include <catch2/catch_amalgamated.hpp>

#include <mmshare/mimo.hpp>
#include <mmshare/units.hpp>

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <numbers>

using namespace mmshare;
using Catch::Approx;

namespace {

constexpr double kPi = std::numbers::pi;

// One-subpath cluster whose subpath sits exactly on the cluster center.
Cluster make_cluster(double aod_az, double aoa_az, double power, double phase)
{
    Cluster c;
    c.aod_az_rad = aod_az;
    c.aoa_az_rad = aoa_az;
    Subpath sp;
    sp.aod_az_rad = aod_az;
    sp.aoa_az_rad = aoa_az;
    sp.power = power;
    sp.phase_rad = phase;
    c.subpaths.push_back(sp);
    return c;
}

} // namespace

TEST_CASE("subpath power weight follows the delay-power law")
{
    CHECK(subpath_power_weight(1.0, 0.0, 0.0, 1, 2.8) == Approx(1.0).margin(1e-15));
    // halving the delay fraction costs a factor 2^(r_tau - 1)
    CHECK(subpath_power_weight(0.5, 0.0, 0.0, 1, 2.8) ==
          Approx(0.2871745887492587).margin(1e-15));
    // per-cluster lognormal shadowing in dB
    CHECK(subpath_power_weight(1.0, 0.6, 0.0, 1, 2.8) ==
          Approx(3.9810717055349722).margin(1e-12));
    CHECK(subpath_power_weight(1.0, 0.0, 4.0, 1, 2.8) ==
          Approx(0.3981071705534972).margin(1e-13));
    // power splits evenly across the subpaths of a cluster
    CHECK(subpath_power_weight(1.0, 0.0, 0.0, 4, 2.8) == Approx(0.25).margin(1e-15));

    // two equal clusters with delay fractions 1 and 0.5 split 2^1.8 : 1
    const double w1 = subpath_power_weight(1.0, 0.0, 0.0, 1, 2.8);
    const double w2 = subpath_power_weight(0.5, 0.0, 0.0, 1, 2.8);
    CHECK(w1 / (w1 + w2) == Approx(0.7768953867957377).margin(1e-12));
    CHECK(w2 / (w1 + w2) == Approx(0.2231046132042623).margin(1e-12));
}

TEST_CASE("sampled cluster sets satisfy the structural invariants")
{
    const ModelParams p{};
    RngStream rng(5, 0, "cluster_test");
    const double el_limit = deg_to_rad(p.elevation_spread_deg) + 1e-12;
    const double az_off = deg_to_rad(p.subpath_az_spread_deg) + 1e-12;
    const double el_off = deg_to_rad(p.subpath_el_spread_deg) + 1e-12;

    for (int i = 0; i < 10000; ++i)
    {
        const ClusterSet set = sample_cluster_set(p, rng);
        REQUIRE(set.cluster_count() >= 1);
        CHECK(set.total_power() == Approx(1.0).margin(1e-9));
        for (const auto& c : set.clusters)
        {
            REQUIRE(!c.subpaths.empty());
            CHECK(c.subpaths.size() <= 10);
            CHECK(c.aod_az_rad >= 0.0);
            CHECK(c.aod_az_rad < 2.0 * kPi);
            CHECK(c.aoa_az_rad >= 0.0);
            CHECK(c.aoa_az_rad < 2.0 * kPi);
            CHECK(std::abs(c.aod_el_rad) <= el_limit);
            CHECK(std::abs(c.aoa_el_rad) <= el_limit);
            CHECK(!c.suppressed);
            for (const auto& sp : c.subpaths)
            {
                CHECK(sp.power >= 0.0);
                CHECK(sp.power <= 1.0 + 1e-12);
                CHECK(sp.phase_rad >= 0.0);
                CHECK(sp.phase_rad < 2.0 * kPi);
                CHECK(std::abs(sp.aod_az_rad - c.aod_az_rad) <= az_off);
                CHECK(std::abs(sp.aoa_az_rad - c.aoa_az_rad) <= az_off);
                CHECK(std::abs(sp.aod_el_rad - c.aod_el_rad) <= el_off);
                CHECK(std::abs(sp.aoa_el_rad - c.aoa_el_rad) <= el_off);
            }
        }
    }
}

TEST_CASE("cluster count matches the truncated Poisson mean")
{
    const ModelParams p{};
    RngStream rng(6, 0, "cluster_mean_test");
    const int n = 100000;
    double sum = 0.0;
    for (int i = 0; i < n; ++i)
        sum += static_cast<double>(sample_cluster_set(p, rng).cluster_count());
    // E[max(1, Poisson(1.8))] = 1.8 + exp(-1.8)
    CHECK(sum / n == Approx(1.9652988882215865).epsilon(0.02));
}

TEST_CASE("a tiny cluster mean still yields at least one cluster")
{
    ModelParams p{};
    p.cluster_mean = 1e-9;
    RngStream rng(7, 0, "cluster_min_test");
    for (int i = 0; i < 200; ++i)
    {
        const ClusterSet set = sample_cluster_set(p, rng);
        CHECK(set.cluster_count() == 1);
        CHECK(set.total_power() == Approx(1.0).margin(1e-12));
    }
}

TEST_CASE("array steering phases follow the planar geometry")
{
    const PlanarArray a{6, 2, 3}; // 2 rows, 3 columns
    const double theta = 0.7;
    const double phi = 0.3;
    const Eigen::VectorXcd u = spatial_signature(a, theta, phi);
    REQUIRE(u.size() == 6);
    for (int q = 0; q < 2; ++q)
    {
        for (int p = 0; p < 3; ++p)
        {
            const double phase =
                kPi * (p * std::sin(theta) * std::cos(phi) + q * std::sin(phi));
            const std::complex<double> expect = std::polar(1.0, phase);
            CHECK(std::abs(u(q * 3 + p) - expect) < 1e-12);
        }
    }
}

TEST_CASE("array steering basics: unit modulus, boresight, self-coherence")
{
    const PlanarArray a{16, 4, 4};

    const Eigen::VectorXcd bore = spatial_signature(a, 0.0, 0.0);
    for (int i = 0; i < bore.size(); ++i)
        CHECK(std::abs(bore(i) - std::complex<double>(1.0, 0.0)) < 1e-15);

    const Eigen::VectorXcd u = spatial_signature(a, 1.1, -0.4);
    for (int i = 0; i < u.size(); ++i)
        CHECK(std::abs(std::abs(u(i)) - 1.0) < 1e-12);
    CHECK(std::abs(u.dot(u)) == Approx(16.0).margin(1e-9));

    const PlanarArray single{1, 1, 1};
    const Eigen::VectorXcd s = spatial_signature(single, 0.9, 0.2);
    REQUIRE(s.size() == 1);
    CHECK(std::abs(s(0) - std::complex<double>(1.0, 0.0)) < 1e-15);
}

TEST_CASE("small-scale gain encodes power and phase and rejects bad power")
{
    const auto g = small_scale_gain(0.25, kPi / 2.0);
    CHECK(std::abs(g - std::complex<double>(0.0, 0.5)) < 1e-15);
    CHECK(std::abs(small_scale_gain(1.0, 0.0) - std::complex<double>(1.0, 0.0)) < 1e-15);
    CHECK_THROWS_AS(small_scale_gain(-0.1, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(small_scale_gain(2.0, 0.0), std::invalid_argument);
}

TEST_CASE("a single full-power path yields the aperture product gain")
{
    const PlanarArray tx{64, 8, 8};
    const PlanarArray rx{16, 4, 4};
    ClusterSet set;
    set.clusters.push_back(make_cluster(0.8, -0.5, 1.0, 1.3));

    const ChannelMatrix ch = channel_matrix(set, tx, rx, ChannelModel::Model2);
    REQUIRE(ch.h.rows() == 16);
    REQUIRE(ch.h.cols() == 64);
    CHECK(ch.h.squaredNorm() == Approx(1024.0).epsilon(1e-9));

    const BeamPair beams = beamforming_vectors(set, tx, rx);
    CHECK(beams.w_tx.norm() == Approx(1.0).margin(1e-12));
    CHECK(beams.w_rx.norm() == Approx(1.0).margin(1e-12));
    CHECK(bf_gain(ch, beams) == Approx(1024.0).epsilon(1e-9));
}

TEST_CASE("the back-lobe filter suppresses rearward departures or arrivals")
{
    ClusterSet set;
    set.clusters.push_back(make_cluster(kPi, 0.0, 0.5, 0.0));   // departs backwards
    set.clusters.push_back(make_cluster(0.0, kPi, 0.3, 0.0));   // arrives backwards
    set.clusters.push_back(make_cluster(0.3, -0.2, 0.2, 0.0));  // fully frontal

    apply_back_lobe_filter(set, 0.0, 0.0);
    CHECK(set.clusters[0].suppressed);
    CHECK(set.clusters[1].suppressed);
    CHECK(!set.clusters[2].suppressed);

    // Exactly sideways is still considered front.
    ClusterSet side;
    side.clusters.push_back(make_cluster(kPi / 2.0, 0.0, 1.0, 0.0));
    apply_back_lobe_filter(side, 0.0, 0.0);
    CHECK(!side.clusters[0].suppressed);

    // Boresight shifts move the front hemisphere with them.
    ClusterSet shifted;
    shifted.clusters.push_back(make_cluster(kPi, kPi, 1.0, 0.0));
    apply_back_lobe_filter(shifted, kPi, kPi);
    CHECK(!shifted.clusters[0].suppressed);
}

TEST_CASE("a path departing opposite the array contributes nothing under the filter")
{
    const PlanarArray tx{8, 2, 4};
    const PlanarArray rx{4, 2, 2};
    ClusterSet set;
    set.clusters.push_back(make_cluster(kPi, 0.0, 1.0, 0.7));
    apply_back_lobe_filter(set, 0.0, 0.0);

    const ChannelMatrix with = channel_matrix(set, tx, rx, ChannelModel::Model3);
    CHECK(with.h.norm() == 0.0);
    // The permissive model keeps the energy.
    const ChannelMatrix without = channel_matrix(set, tx, rx, ChannelModel::Model2);
    CHECK(without.h.norm() > 0.0);
}

TEST_CASE("filtering is a no-op when every cluster is frontal")
{
    const ModelParams p{};
    const PlanarArray tx{64, 8, 8};
    const PlanarArray rx{16, 4, 4};
    RngStream rng(8, 0, "front_test");

    int compared = 0;
    for (int i = 0; i < 200; ++i)
    {
        ClusterSet set = sample_cluster_set(p, rng);
        apply_back_lobe_filter(set, 0.0, 0.0);
        bool any = false;
        for (const auto& c : set.clusters)
            any = any || c.suppressed;
        if (any)
            continue;
        const ChannelMatrix h2 = channel_matrix(set, tx, rx, ChannelModel::Model2);
        const ChannelMatrix h3 = channel_matrix(set, tx, rx, ChannelModel::Model3);
        CHECK((h2.h - h3.h).norm() == 0.0);
        ++compared;
    }
    CHECK(compared > 0);
}

TEST_CASE("beam selection targets the strongest unsuppressed cluster")
{
    ClusterSet set;
    set.clusters.push_back(make_cluster(0.2, 0.1, 0.8, 0.0));
    set.clusters.push_back(make_cluster(1.0, -1.0, 0.2, 0.0));
    CHECK(&strongest_cluster(set) == &set.clusters[0]);

    // Ties resolve to the lowest index.
    ClusterSet tie;
    tie.clusters.push_back(make_cluster(0.5, 0.5, 0.5, 0.0));
    tie.clusters.push_back(make_cluster(1.5, 1.5, 0.5, 0.0));
    CHECK(&strongest_cluster(tie) == &tie.clusters[0]);

    // Suppression disqualifies a cluster even if it is the strongest.
    set.clusters[0].suppressed = true;
    CHECK(&strongest_cluster(set) == &set.clusters[1]);

    // With everything suppressed there is nothing to aim at.
    set.clusters[1].suppressed = true;
    CHECK_THROWS_AS(beamforming_vectors(set, PlanarArray{4, 2, 2}, PlanarArray{4, 2, 2}),
                    std::domain_error);
}

TEST_CASE("beamforming gain is bounded by the dominant singular value")
{
    const PlanarArray tx{16, 4, 4};
    const PlanarArray rx{4, 2, 2};
    const ModelParams p{};
    RngStream rng(9, 0, "svd_test");

    for (int rep = 0; rep < 20; ++rep)
    {
        const ClusterSet set = sample_cluster_set(p, rng);
        const ChannelMatrix ch = channel_matrix(set, tx, rx, ChannelModel::Model2);
        const BeamPair beams = beamforming_vectors(set, tx, rx);
        const double g = bf_gain(ch, beams);

        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(ch.h);
        const double smax = svd.singularValues()(0);
        CHECK(g <= smax * smax * (1.0 + 1e-9));
    }
}

TEST_CASE("beamforming gain ignores a global channel phase")
{
    const PlanarArray tx{16, 4, 4};
    const PlanarArray rx{4, 2, 2};
    const ModelParams p{};
    RngStream rng(10, 0, "phase_test");
    const ClusterSet set = sample_cluster_set(p, rng);
    ChannelMatrix ch = channel_matrix(set, tx, rx, ChannelModel::Model2);
    const BeamPair beams = beamforming_vectors(set, tx, rx);

    const double before = bf_gain(ch, beams);
    ch.h *= std::polar(1.0, 1.234);
    CHECK(bf_gain(ch, beams) == Approx(before).epsilon(1e-12));

    ch.h.setZero();
    CHECK(bf_gain(ch, beams) == 0.0);
}

TEST_CASE("suppressing rear clusters lowers the average cross gain")
{
    const PlanarArray tx{64, 8, 8};
    const PlanarArray rx{16, 4, 4};
    const ModelParams p{};
    RngStream rng(12, 0, "xgain_test");

    // Fixed boresight beams, as seen from an unintended receiver.
    BeamPair beams;
    beams.w_tx = spatial_signature(tx, 0.0, 0.0) / std::sqrt(64.0);
    beams.w_rx = spatial_signature(rx, 0.0, 0.0) / std::sqrt(16.0);

    double sum2 = 0.0;
    double sum3 = 0.0;
    for (int i = 0; i < 2000; ++i)
    {
        ClusterSet set = sample_cluster_set(p, rng);
        apply_back_lobe_filter(set, 0.0, 0.0);
        sum2 += bf_gain(channel_matrix(set, tx, rx, ChannelModel::Model2), beams);
        sum3 += bf_gain(channel_matrix(set, tx, rx, ChannelModel::Model3), beams);
    }
    CHECK(sum3 < sum2);
}

TEST_CASE("two-state sector pattern combines per-side gains")
{
    const RectPattern p{};
    CHECK(rect_gain(true, true, p) == Approx(26.0).margin(1e-12));
    CHECK(rect_gain(false, false, p) == Approx(-4.0).margin(1e-12));
    CHECK(rect_gain(true, false, p) == Approx(11.0).margin(1e-12));
    CHECK(rect_gain(false, true, p) == Approx(11.0).margin(1e-12));
    CHECK(rect_alignment_probability(p) == Approx(56.0 / 360.0).margin(1e-15));
}

TEST_CASE("the swept array pattern peaks at boresight with the full aperture gain")
{
    const PlanarArray tx{64, 8, 8};
    const PlanarArray rx{16, 4, 4};
    const auto sweep = pattern_sweep(tx, rx, 361);
    REQUIRE(sweep.size() == 361);
    CHECK(sweep.front().first == Approx(-180.0).margin(1e-12));
    CHECK(sweep.back().first == Approx(180.0).margin(1e-12));

    double best_gain = -1e9;
    double worst_gain = 1e9;
    for (const auto& [angle, gain] : sweep)
    {
        CHECK(gain >= -100.0); // nulls are floored
        CHECK(gain <= 30.1029995663981218 + 1e-9);
        best_gain = std::max(best_gain, gain);
        worst_gain = std::min(worst_gain, gain);
    }
    // Index 180 of 361 is the 0 degree sample. The horizontal array factor
    // depends on sin(angle), so the +/-180 degree samples tie with it; no
    // other direction may exceed it.
    CHECK(sweep[180].first == Approx(0.0).margin(1e-12));
    CHECK(sweep[180].second == Approx(30.1029995663981218).margin(1e-9));
    CHECK(best_gain == Approx(30.1029995663981218).margin(1e-9));
    CHECK(worst_gain < 0.0); // the sweep does traverse deep sidelobes

    CHECK_THROWS_AS(pattern_sweep(tx, rx, 1), std::invalid_argument);
}
