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
#include <numbers>

namespace mmshare {

// All configuration values are stored in dB/dBm as given; conversion to
// linear happens only at the point of computation, through this pair.
inline double db_to_linear(double value_db) { return std::pow(10.0, 0.1 * value_db); }
inline double linear_to_db(double value_linear) { return 10.0 * std::log10(value_linear); }

// dBm <-> mW. Same pair, kept separate so call sites read in power units.
inline double dbm_to_mw(double value_dbm) { return db_to_linear(value_dbm); }
inline double mw_to_dbm(double value_mw) { return linear_to_db(value_mw); }

inline double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }
inline double rad_to_deg(double rad) { return rad * 180.0 / std::numbers::pi; }

// Wrap an angle to (-pi, pi].
inline double wrap_angle(double rad)
{
    double x = std::remainder(rad, 2.0 * std::numbers::pi);
    if (x <= -std::numbers::pi)
        x += 2.0 * std::numbers::pi;
    return x;
}

} // namespace mmshare
