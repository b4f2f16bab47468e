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

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mmshare {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Resource-sharing configurations between the two operators.
enum class Scenario {
    NoSharing,      // exclusive spectrum and infrastructure, closed access
    SpectrumAccess, // pooled spectrum, users may attach to any operator
    Spectrum,       // pooled spectrum, separate infrastructures, closed access
    SpectrumInfra   // pooled spectrum, co-located sites, closed access
};

// Channel/antenna model combinations.
enum class ChannelModel {
    Model1, // distance-power pathloss, rect-shaped antenna pattern
    Model2, // measurement-based 28 GHz channel, full MIMO beamforming
    Model3, // Model2 with the array back lobe removed
    Model4  // Model1 pathloss with Model2 MIMO beamforming
};

struct PlanarArray {
    int elements = 0;
    int rows = 0; // vertical dimension
    int cols = 0; // horizontal dimension

    bool operator==(const PlanarArray&) const = default;
};

// PL(d) = alpha + beta * 10 * log10(d), shadowing ~ N(0, sigma^2), d in meters.
struct PathlossParams {
    double alpha_db = 0.0;
    double beta = 0.0;
    double sigma_db = 0.0;

    bool operator==(const PathlossParams&) const = default;
};

// Two-valued aggregate beamforming pattern with half beamwidth theta_b.
struct RectPattern {
    double theta_b_deg = 28.0;
    double g_max_db = 26.0;
    double g_min_db = -4.0;

    bool operator==(const RectPattern&) const = default;
};

// Simplified distance-power law used by Models 1 and 4:
// PL(d) = ref_loss_db + 10 * n * log10(d), no shadowing, no outage state.
struct SimplifiedPathloss {
    double ref_loss_db = 61.4; // free-space reference at 1 m, 28 GHz
    double n_los = 2.0;
    double n_nlos = 4.0;

    bool operator==(const SimplifiedPathloss&) const = default;
};

struct ModelParams {
    // Three-state blockage model, 28 GHz urban measurements.
    double a_out = 0.0334; // 1/m
    double b_out = 5.2;
    double a_los = 0.0149; // 1/m

    PathlossParams los_pl{61.4, 2.0, 5.8};
    PathlossParams nlos_pl{72.0, 2.92, 8.7};

    // Cluster/subpath channel statistics.
    double cluster_mean = 1.8; // Poisson mean for the cluster count
    double r_tau = 2.8;        // power-delay proportionality exponent
    double zeta_db = 4.0;      // per-cluster shadowing spread

    // Angle statistics: cluster centers uniform in azimuth, bounded in
    // elevation; subpaths spread around the cluster center.
    double elevation_spread_deg = 30.0;  // cluster center elevation in [-x, +x]
    double subpath_az_spread_deg = 10.0; // subpath offset within +/- x of center
    double subpath_el_spread_deg = 5.0;

    RectPattern rect{};
    SimplifiedPathloss model1_pl{};

    bool operator==(const ModelParams&) const = default;
};

struct SimulationConfig {
    int num_operators = 2;
    double ue_density = 200.0; // per km^2, per operator
    double bs_density = 30.0;  // per km^2, per operator
    double area_km2 = 1.0;
    double tx_power_dbm = 30.0;
    double carrier_freq_hz = 28e9;
    double total_bandwidth_hz = 1e9;
    double noise_figure_db = 7.0;
    PlanarArray tx_array{64, 8, 8};
    PlanarArray rx_array{16, 4, 4};
    double half_duplex_factor = 0.5;
    long num_drops = 10000;
    Scenario scenario = Scenario::NoSharing;
    ChannelModel channel_model = ChannelModel::Model3;
    std::uint64_t rng_seed = 1;
    ModelParams model_params{};

    bool operator==(const SimulationConfig&) const = default;
};

inline std::string to_string(Scenario s)
{
    switch (s)
    {
    case Scenario::NoSharing:
        return "NoSharing";
    case Scenario::SpectrumAccess:
        return "SpectrumAccess";
    case Scenario::Spectrum:
        return "Spectrum";
    case Scenario::SpectrumInfra:
        return "SpectrumInfra";
    }
    return "NoSharing";
}

inline std::string to_string(ChannelModel m)
{
    switch (m)
    {
    case ChannelModel::Model1:
        return "Model1";
    case ChannelModel::Model2:
        return "Model2";
    case ChannelModel::Model3:
        return "Model3";
    case ChannelModel::Model4:
        return "Model4";
    }
    return "Model3";
}

// Accepts the long name or the CLI short form (s1..s4 / m1..m4).
inline Scenario parse_scenario(std::string_view text)
{
    if (text == "NoSharing" || text == "s1")
        return Scenario::NoSharing;
    if (text == "SpectrumAccess" || text == "s2")
        return Scenario::SpectrumAccess;
    if (text == "Spectrum" || text == "s3")
        return Scenario::Spectrum;
    if (text == "SpectrumInfra" || text == "s4")
        return Scenario::SpectrumInfra;
    throw ConfigError("unknown scenario '" + std::string(text) +
                      "' (expected NoSharing|SpectrumAccess|Spectrum|SpectrumInfra or s1..s4)");
}

inline ChannelModel parse_channel_model(std::string_view text)
{
    if (text == "Model1" || text == "m1")
        return ChannelModel::Model1;
    if (text == "Model2" || text == "m2")
        return ChannelModel::Model2;
    if (text == "Model3" || text == "m3")
        return ChannelModel::Model3;
    if (text == "Model4" || text == "m4")
        return ChannelModel::Model4;
    throw ConfigError("unknown channel model '" + std::string(text) +
                      "' (expected Model1..Model4 or m1..m4)");
}

/*!
 * Checks every invariant and returns the full list of violations; an empty
 * list means the configuration is valid. Never stops at the first problem.
 */
inline std::vector<std::string> validate(const SimulationConfig& c)
{
    std::vector<std::string> v;
    if (c.num_operators != 2)
        v.push_back("num_operators: the sharing configurations are defined for exactly 2 operators");
    if (!(c.ue_density > 0.0))
        v.push_back("ue_density (lambda_ue) must be strictly positive");
    if (!(c.bs_density > 0.0))
        v.push_back("bs_density (lambda_bs) must be strictly positive");
    if (!(c.area_km2 > 0.0))
        v.push_back("area (area_km2) must be strictly positive");
    if (!(c.total_bandwidth_hz > 0.0))
        v.push_back("total_bandwidth (bw_hz) must be strictly positive");
    if (!(c.carrier_freq_hz > 0.0))
        v.push_back("carrier_freq (f_hz) must be strictly positive");
    if (c.tx_array.rows < 1 || c.tx_array.cols < 1 ||
        c.tx_array.elements != c.tx_array.rows * c.tx_array.cols)
        v.push_back("tx_array: array dims product != element count");
    if (c.rx_array.rows < 1 || c.rx_array.cols < 1 ||
        c.rx_array.elements != c.rx_array.rows * c.rx_array.cols)
        v.push_back("rx_array: array dims product != element count");
    if (!(c.half_duplex_factor > 0.0) || c.half_duplex_factor > 1.0)
        v.push_back("half_duplex_factor must satisfy 0 < value <= 1");
    if (c.num_drops < 0)
        v.push_back("num_drops must be >= 0");

    const ModelParams& p = c.model_params;
    if (p.los_pl.sigma_db < 0.0)
        v.push_back("sigma_los_db must be >= 0");
    if (p.nlos_pl.sigma_db < 0.0)
        v.push_back("sigma_nlos_db must be >= 0");
    if (p.zeta_db < 0.0)
        v.push_back("zeta_db must be >= 0");
    if (!(p.cluster_mean > 0.0))
        v.push_back("lambda_k (cluster_mean) must be strictly positive");
    if (!(p.rect.theta_b_deg > 0.0) || p.rect.theta_b_deg >= 90.0)
        v.push_back("theta_b_deg must lie in (0, 90)");
    if (!(p.rect.g_max_db > p.rect.g_min_db))
        v.push_back("g_max_db must exceed g_min_db");
    if (p.elevation_spread_deg < 0.0 || p.subpath_az_spread_deg < 0.0 ||
        p.subpath_el_spread_deg < 0.0)
        v.push_back("angle spreads must be >= 0");
    return v;
}

namespace detail {

inline std::string trim(std::string s)
{
    const char* ws = " \t\r\n";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string::npos)
        return "";
    const auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

inline double parse_double(const std::string& value, const std::string& key)
{
    char* end = nullptr;
    const double x = std::strtod(value.c_str(), &end);
    if (end == value.c_str() || *end != '\0')
        throw ConfigError("value '" + value + "' for key '" + key + "' is not a number");
    return x;
}

inline long parse_long(const std::string& value, const std::string& key)
{
    char* end = nullptr;
    const long x = std::strtol(value.c_str(), &end, 10);
    if (end == value.c_str() || *end != '\0')
        throw ConfigError("value '" + value + "' for key '" + key + "' is not an integer");
    return x;
}

inline std::uint64_t parse_u64(const std::string& value, const std::string& key)
{
    char* end = nullptr;
    const unsigned long long x = std::strtoull(value.c_str(), &end, 10);
    if (end == value.c_str() || *end != '\0')
        throw ConfigError("value '" + value + "' for key '" + key + "' is not an unsigned integer");
    return static_cast<std::uint64_t>(x);
}

inline std::string format_double(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

// One switchboard shared by the file parser; returns false for unknown keys.
inline bool assign_key(SimulationConfig& c, const std::string& key, const std::string& value)
{
    ModelParams& p = c.model_params;
    if (key == "num_operators")
        c.num_operators = static_cast<int>(parse_long(value, key));
    else if (key == "lambda_ue")
        c.ue_density = parse_double(value, key);
    else if (key == "lambda_bs")
        c.bs_density = parse_double(value, key);
    else if (key == "area_km2")
        c.area_km2 = parse_double(value, key);
    else if (key == "p_tx_dbm")
        c.tx_power_dbm = parse_double(value, key);
    else if (key == "f_hz")
        c.carrier_freq_hz = parse_double(value, key);
    else if (key == "bw_hz")
        c.total_bandwidth_hz = parse_double(value, key);
    else if (key == "nf_db")
        c.noise_figure_db = parse_double(value, key);
    else if (key == "n_tx")
        c.tx_array.elements = static_cast<int>(parse_long(value, key));
    else if (key == "n_tx_rows")
        c.tx_array.rows = static_cast<int>(parse_long(value, key));
    else if (key == "n_tx_cols")
        c.tx_array.cols = static_cast<int>(parse_long(value, key));
    else if (key == "n_rx")
        c.rx_array.elements = static_cast<int>(parse_long(value, key));
    else if (key == "n_rx_rows")
        c.rx_array.rows = static_cast<int>(parse_long(value, key));
    else if (key == "n_rx_cols")
        c.rx_array.cols = static_cast<int>(parse_long(value, key));
    else if (key == "half_duplex_factor")
        c.half_duplex_factor = parse_double(value, key);
    else if (key == "num_drops")
        c.num_drops = parse_long(value, key);
    else if (key == "scenario")
        c.scenario = parse_scenario(value);
    else if (key == "channel_model")
        c.channel_model = parse_channel_model(value);
    else if (key == "rng_seed")
        c.rng_seed = parse_u64(value, key);
    else if (key == "a_out")
        p.a_out = parse_double(value, key);
    else if (key == "b_out")
        p.b_out = parse_double(value, key);
    else if (key == "a_los")
        p.a_los = parse_double(value, key);
    else if (key == "alpha_los_db")
        p.los_pl.alpha_db = parse_double(value, key);
    else if (key == "beta_los")
        p.los_pl.beta = parse_double(value, key);
    else if (key == "sigma_los_db")
        p.los_pl.sigma_db = parse_double(value, key);
    else if (key == "alpha_nlos_db")
        p.nlos_pl.alpha_db = parse_double(value, key);
    else if (key == "beta_nlos")
        p.nlos_pl.beta = parse_double(value, key);
    else if (key == "sigma_nlos_db")
        p.nlos_pl.sigma_db = parse_double(value, key);
    else if (key == "lambda_k")
        p.cluster_mean = parse_double(value, key);
    else if (key == "r_tau")
        p.r_tau = parse_double(value, key);
    else if (key == "zeta_db")
        p.zeta_db = parse_double(value, key);
    else if (key == "elevation_spread_deg")
        p.elevation_spread_deg = parse_double(value, key);
    else if (key == "subpath_az_spread_deg")
        p.subpath_az_spread_deg = parse_double(value, key);
    else if (key == "subpath_el_spread_deg")
        p.subpath_el_spread_deg = parse_double(value, key);
    else if (key == "theta_b_deg")
        p.rect.theta_b_deg = parse_double(value, key);
    else if (key == "g_max_db")
        p.rect.g_max_db = parse_double(value, key);
    else if (key == "g_min_db")
        p.rect.g_min_db = parse_double(value, key);
    else if (key == "pl1_ref_db")
        p.model1_pl.ref_loss_db = parse_double(value, key);
    else if (key == "pl1_n_los")
        p.model1_pl.n_los = parse_double(value, key);
    else if (key == "pl1_n_nlos")
        p.model1_pl.n_nlos = parse_double(value, key);
    else
        return false;
    return true;
}

} // namespace detail

// MMSHARE_SEED, when set, overrides rng_seed from any source.
inline void apply_env_overrides(SimulationConfig& c)
{
    if (const char* env = std::getenv("MMSHARE_SEED"))
    {
        c.rng_seed = detail::parse_u64(env, "MMSHARE_SEED");
    }
}

/*!
 * Loads a flat `key = value` configuration file. Lines may carry `#`
 * comments; unspecified keys keep their defaults; unknown or repeated keys
 * are hard errors. The returned configuration has passed validate().
 */
inline SimulationConfig load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file: " + path);

    SimulationConfig c{};
    std::vector<std::string> seen;
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw))
    {
        ++line_no;
        std::string line = raw;
        if (const auto cut = line.find('#'); cut != std::string::npos)
            line = line.substr(0, cut);
        line = detail::trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value', got '" +
                              detail::trim(raw) + "'");
        const std::string key = detail::trim(line.substr(0, eq));
        const std::string value = detail::trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ConfigError("line " + std::to_string(line_no) + ": empty key or value");
        for (const auto& s : seen)
            if (s == key)
                throw ConfigError("line " + std::to_string(line_no) + ": key '" + key +
                                  "' given more than once");
        seen.push_back(key);
        bool known;
        try
        {
            known = detail::assign_key(c, key, value);
        }
        catch (const ConfigError& e)
        {
            throw ConfigError("line " + std::to_string(line_no) + ": " + e.what());
        }
        if (!known)
            throw ConfigError("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }

    apply_env_overrides(c);

    if (const auto violations = validate(c); !violations.empty())
    {
        std::string msg = "invalid configuration (" + path + "):";
        for (const auto& v : violations)
            msg += "\n  - " + v;
        throw ConfigError(msg);
    }
    return c;
}

// Inverse of load_config for validated configs: load(save(c)) == c.
inline void save_config(const SimulationConfig& c, const std::string& path)
{
    std::ofstream out(path);
    if (!out)
        throw ConfigError("cannot write config file: " + path);
    const ModelParams& p = c.model_params;
    using detail::format_double;
    out << "num_operators = " << c.num_operators << "\n";
    out << "lambda_ue = " << format_double(c.ue_density) << "\n";
    out << "lambda_bs = " << format_double(c.bs_density) << "\n";
    out << "area_km2 = " << format_double(c.area_km2) << "\n";
    out << "p_tx_dbm = " << format_double(c.tx_power_dbm) << "\n";
    out << "f_hz = " << format_double(c.carrier_freq_hz) << "\n";
    out << "bw_hz = " << format_double(c.total_bandwidth_hz) << "\n";
    out << "nf_db = " << format_double(c.noise_figure_db) << "\n";
    out << "n_tx = " << c.tx_array.elements << "\n";
    out << "n_tx_rows = " << c.tx_array.rows << "\n";
    out << "n_tx_cols = " << c.tx_array.cols << "\n";
    out << "n_rx = " << c.rx_array.elements << "\n";
    out << "n_rx_rows = " << c.rx_array.rows << "\n";
    out << "n_rx_cols = " << c.rx_array.cols << "\n";
    out << "half_duplex_factor = " << format_double(c.half_duplex_factor) << "\n";
    out << "num_drops = " << c.num_drops << "\n";
    out << "scenario = " << to_string(c.scenario) << "\n";
    out << "channel_model = " << to_string(c.channel_model) << "\n";
    out << "rng_seed = " << c.rng_seed << "\n";
    out << "a_out = " << format_double(p.a_out) << "\n";
    out << "b_out = " << format_double(p.b_out) << "\n";
    out << "a_los = " << format_double(p.a_los) << "\n";
    out << "alpha_los_db = " << format_double(p.los_pl.alpha_db) << "\n";
    out << "beta_los = " << format_double(p.los_pl.beta) << "\n";
    out << "sigma_los_db = " << format_double(p.los_pl.sigma_db) << "\n";
    out << "alpha_nlos_db = " << format_double(p.nlos_pl.alpha_db) << "\n";
    out << "beta_nlos = " << format_double(p.nlos_pl.beta) << "\n";
    out << "sigma_nlos_db = " << format_double(p.nlos_pl.sigma_db) << "\n";
    out << "lambda_k = " << format_double(p.cluster_mean) << "\n";
    out << "r_tau = " << format_double(p.r_tau) << "\n";
    out << "zeta_db = " << format_double(p.zeta_db) << "\n";
    out << "elevation_spread_deg = " << format_double(p.elevation_spread_deg) << "\n";
    out << "subpath_az_spread_deg = " << format_double(p.subpath_az_spread_deg) << "\n";
    out << "subpath_el_spread_deg = " << format_double(p.subpath_el_spread_deg) << "\n";
    out << "theta_b_deg = " << format_double(p.rect.theta_b_deg) << "\n";
    out << "g_max_db = " << format_double(p.rect.g_max_db) << "\n";
    out << "g_min_db = " << format_double(p.rect.g_min_db) << "\n";
    out << "pl1_ref_db = " << format_double(p.model1_pl.ref_loss_db) << "\n";
    out << "pl1_n_los = " << format_double(p.model1_pl.n_los) << "\n";
    out << "pl1_n_nlos = " << format_double(p.model1_pl.n_nlos) << "\n";
    if (!out)
        throw ConfigError("write failed: " + path);
}

} // namespace mmshare
