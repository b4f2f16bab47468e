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
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace mmshare {

enum class MetricKind { SinrDb, RateBps };

inline std::string to_string(MetricKind k)
{
    return k == MetricKind::SinrDb ? "sinr_db" : "rate_bps";
}

// Empirical complementary CDF over a threshold grid.
struct CoverageCurve {
    MetricKind kind = MetricKind::SinrDb;
    std::vector<double> thresholds; // dB for SINR, bit/s for rate
    std::vector<double> coverage;   // P[sample > threshold], in [0, 1]
    std::size_t sample_count = 0;
};

/*!
 * Shannon-based user rate: half_duplex * (bw / n_users) * log2(1 + sinr).
 * The cell's bandwidth is shared equally by its n_users attached users.
 * An outage sample (the -inf marker, carrying no usable signal) rates 0.
 */
inline double rate_of(double sinr_linear, double bw_hz, int n_users, double half_duplex)
{
    if (n_users < 1)
        throw std::invalid_argument("rate_of: user count must be >= 1");
    if (!(bw_hz > 0.0))
        throw std::invalid_argument("rate_of: bandwidth must be > 0");
    if (!(sinr_linear >= 0.0))
        return 0.0;
    return half_duplex * (bw_hz / static_cast<double>(n_users)) * std::log2(1.0 + sinr_linear);
}

/*!
 * Fraction of samples strictly above each threshold. -inf samples (outage)
 * count below every threshold. Thresholds must be in ascending order, which
 * makes the returned coverage nonincreasing.
 */
inline CoverageCurve coverage(const std::vector<double>& samples,
                              const std::vector<double>& thresholds,
                              MetricKind kind = MetricKind::SinrDb)
{
    if (samples.empty())
        throw std::invalid_argument("coverage: sample list is empty");
    if (!std::is_sorted(thresholds.begin(), thresholds.end()))
        throw std::invalid_argument("coverage: thresholds must be ascending");
    std::vector<double> sorted = samples;
    std::sort(sorted.begin(), sorted.end());
    CoverageCurve c;
    c.kind = kind;
    c.thresholds = thresholds;
    c.sample_count = samples.size();
    c.coverage.reserve(thresholds.size());
    const double n = static_cast<double>(sorted.size());
    for (const double t : thresholds)
    {
        // first element strictly above t; everything from there on is covered
        const auto it = std::upper_bound(sorted.begin(), sorted.end(), t);
        c.coverage.push_back(static_cast<double>(sorted.end() - it) / n);
    }
    return c;
}

// -20..60 dB in 1 dB steps.
inline std::vector<double> default_sinr_grid_db()
{
    std::vector<double> g;
    g.reserve(81);
    for (int t = -20; t <= 60; ++t)
        g.push_back(static_cast<double>(t));
    return g;
}

// 50 logarithmically spaced points over 1e5..1e10 bit/s.
inline std::vector<double> default_rate_grid_bps()
{
    std::vector<double> g;
    g.reserve(50);
    for (int i = 0; i < 50; ++i)
        g.push_back(std::pow(10.0, 5.0 + 5.0 * i / 49.0));
    return g;
}

// Empirical median; -inf outage samples participate like any other value.
inline double median(std::vector<double> samples)
{
    if (samples.empty())
        throw std::invalid_argument("median: sample list is empty");
    std::sort(samples.begin(), samples.end());
    const std::size_t n = samples.size();
    if (n % 2 == 1)
        return samples[n / 2];
    return 0.5 * (samples[n / 2 - 1] + samples[n / 2]);
}

} // namespace mmshare
