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
#include <cstdint>
#include <numbers>
#include <random>
#include <string_view>

namespace mmshare {

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t& state)
{
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline std::uint64_t fnv1a64(std::string_view text)
{
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char c : text)
    {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    return h;
}

} // namespace detail

/*!
 * Deterministic substream generator keyed by (seed, drop index, purpose).
 *
 * Every Monte Carlo repetition derives its own independent streams from the
 * campaign seed, so results do not depend on execution order or thread
 * count, and adding a new purpose tag never perturbs the draws of existing
 * ones. Samplers are implemented here rather than taken from
 * <random>'s distributions so that the produced sequences are identical
 * across standard library implementations.
 */
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t drop_index, std::string_view purpose)
    {
        std::uint64_t s = seed;
        std::uint64_t k1 = detail::splitmix64(s);
        s ^= 0x9E3779B97F4A7C15ULL * (drop_index + 1);
        std::uint64_t k2 = detail::splitmix64(s);
        s ^= detail::fnv1a64(purpose);
        std::uint64_t k3 = detail::splitmix64(s);
        gen_.seed(k1 ^ (k2 << 1) ^ k3);
    }

    std::uint64_t next_u64() { return gen_(); }

    // Uniform on [0, 1), 53-bit resolution.
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    // Uniform on (0, 1); safe as a log() argument.
    double uniform_open() { return (static_cast<double>(gen_() >> 12) + 0.5) * 0x1.0p-52; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Uniform integer on {lo, ..., hi}, inclusive.
    int uniform_int(int lo, int hi)
    {
        const auto span = static_cast<std::uint64_t>(hi - lo + 1);
        return lo + static_cast<int>(gen_() % span);
    }

    double normal(double mean = 0.0, double stddev = 1.0)
    {
        if (has_spare_)
        {
            has_spare_ = false;
            return mean + stddev * spare_;
        }
        const double u1 = uniform_open();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(a);
        has_spare_ = true;
        return mean + stddev * r * std::cos(a);
    }

    // Exact Poisson sampling. Knuth's product method, chunked so that
    // exp(-mean) stays representable for large means.
    long poisson(double mean)
    {
        long total = 0;
        while (mean > 500.0)
        {
            total += poisson_knuth(500.0);
            mean -= 500.0;
        }
        return total + poisson_knuth(mean);
    }

    bool bernoulli(double p) { return uniform() < p; }

private:
    long poisson_knuth(double mean)
    {
        if (mean <= 0.0)
            return 0;
        const double limit = std::exp(-mean);
        long count = -1;
        double product = 1.0;
        do
        {
            product *= uniform();
            ++count;
        } while (product > limit);
        return count;
    }

    std::mt19937_64 gen_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace mmshare
