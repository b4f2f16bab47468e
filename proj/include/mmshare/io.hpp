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
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "mmshare/config.hpp"
#include "mmshare/engine.hpp"
#include "mmshare/geometry.hpp"
#include "mmshare/metrics.hpp"
#include "mmshare/units.hpp"

namespace mmshare {

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class OutputFormat { Csv, Json };

inline OutputFormat parse_format(std::string_view text)
{
    if (text == "csv")
        return OutputFormat::Csv;
    if (text == "json")
        return OutputFormat::Json;
    throw ConfigError("unknown output format '" + std::string(text) + "' (expected csv|json)");
}

// Short codes used in file names and plot legends.
inline std::string scenario_code(Scenario s)
{
    switch (s)
    {
    case Scenario::NoSharing:
        return "s1";
    case Scenario::SpectrumAccess:
        return "s2";
    case Scenario::Spectrum:
        return "s3";
    case Scenario::SpectrumInfra:
        return "s4";
    }
    return "s1";
}

inline std::string model_code(ChannelModel m)
{
    switch (m)
    {
    case ChannelModel::Model1:
        return "m1";
    case ChannelModel::Model2:
        return "m2";
    case ChannelModel::Model3:
        return "m3";
    case ChannelModel::Model4:
        return "m4";
    }
    return "m3";
}

// Curve plus its legend label (by convention "scenario/model", e.g. "s3/m3").
struct LabeledCurve {
    std::string label;
    CoverageCurve curve;
};

namespace detail {

// Round-trip-exact decimal form: parsing the text recovers the same double.
inline std::string g17(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

// SINR sample text for the raw drop file; the outage marker stays symbolic.
inline std::string sinr_db_text(double sinr_linear)
{
    if (!(sinr_linear >= 0.0))
        return "-inf";
    return g17(linear_to_db(sinr_linear));
}

inline std::string sanitize_label(std::string label)
{
    for (auto& ch : label)
        if (ch == '/' || ch == ' ')
            ch = '_';
    return label;
}

inline std::ofstream open_out(const std::string& path)
{
    std::ofstream out(path);
    if (!out)
        throw IoError("cannot open output file: " + path);
    return out;
}

inline void finish(std::ofstream& out, const std::string& path)
{
    out.flush();
    if (!out)
        throw IoError("write failed: " + path);
}

} // namespace detail

// SINR samples in dB for coverage statistics; outage keeps the -inf marker.
inline std::vector<double> sinr_db_samples(const std::vector<DropResult>& results)
{
    std::vector<double> s;
    s.reserve(results.size());
    for (const auto& r : results)
        s.push_back(r.sinr_linear >= 0.0 ? linear_to_db(r.sinr_linear)
                                         : -std::numeric_limits<double>::infinity());
    return s;
}

inline std::vector<double> rate_samples(const std::vector<DropResult>& results)
{
    std::vector<double> s;
    s.reserve(results.size());
    for (const auto& r : results)
        s.push_back(r.rate_bps);
    return s;
}

// One `threshold,coverage` row per grid point.
inline void write_coverage_csv(const CoverageCurve& c, const std::string& path)
{
    auto out = detail::open_out(path);
    out << "threshold,coverage\n";
    for (std::size_t i = 0; i < c.thresholds.size(); ++i)
        out << detail::g17(c.thresholds[i]) << ',' << detail::g17(c.coverage[i]) << '\n';
    detail::finish(out, path);
}

// Raw per-drop records: drop,sinr_db,rate_bps,load,state.
inline void write_drops_csv(const std::vector<DropResult>& results, const std::string& path)
{
    auto out = detail::open_out(path);
    out << "drop,sinr_db,rate_bps,load,state\n";
    for (std::size_t i = 0; i < results.size(); ++i)
    {
        const auto& r = results[i];
        out << i << ',' << detail::sinr_db_text(r.sinr_linear) << ','
            << detail::g17(r.rate_bps) << ',' << r.serving_load << ','
            << to_string(r.serving_state) << '\n';
    }
    detail::finish(out, path);
}

// Config echo with the same keys and order as the config-file format.
inline nlohmann::ordered_json config_json(const SimulationConfig& c)
{
    const ModelParams& p = c.model_params;
    nlohmann::ordered_json j;
    j["num_operators"] = c.num_operators;
    j["lambda_ue"] = c.ue_density;
    j["lambda_bs"] = c.bs_density;
    j["area_km2"] = c.area_km2;
    j["p_tx_dbm"] = c.tx_power_dbm;
    j["f_hz"] = c.carrier_freq_hz;
    j["bw_hz"] = c.total_bandwidth_hz;
    j["nf_db"] = c.noise_figure_db;
    j["n_tx"] = c.tx_array.elements;
    j["n_tx_rows"] = c.tx_array.rows;
    j["n_tx_cols"] = c.tx_array.cols;
    j["n_rx"] = c.rx_array.elements;
    j["n_rx_rows"] = c.rx_array.rows;
    j["n_rx_cols"] = c.rx_array.cols;
    j["half_duplex_factor"] = c.half_duplex_factor;
    j["num_drops"] = c.num_drops;
    j["scenario"] = to_string(c.scenario);
    j["channel_model"] = to_string(c.channel_model);
    j["rng_seed"] = c.rng_seed;
    j["a_out"] = p.a_out;
    j["b_out"] = p.b_out;
    j["a_los"] = p.a_los;
    j["alpha_los_db"] = p.los_pl.alpha_db;
    j["beta_los"] = p.los_pl.beta;
    j["sigma_los_db"] = p.los_pl.sigma_db;
    j["alpha_nlos_db"] = p.nlos_pl.alpha_db;
    j["beta_nlos"] = p.nlos_pl.beta;
    j["sigma_nlos_db"] = p.nlos_pl.sigma_db;
    j["lambda_k"] = p.cluster_mean;
    j["r_tau"] = p.r_tau;
    j["zeta_db"] = p.zeta_db;
    j["elevation_spread_deg"] = p.elevation_spread_deg;
    j["subpath_az_spread_deg"] = p.subpath_az_spread_deg;
    j["subpath_el_spread_deg"] = p.subpath_el_spread_deg;
    j["theta_b_deg"] = p.rect.theta_b_deg;
    j["g_max_db"] = p.rect.g_max_db;
    j["g_min_db"] = p.rect.g_min_db;
    j["pl1_ref_db"] = p.model1_pl.ref_loss_db;
    j["pl1_n_los"] = p.model1_pl.n_los;
    j["pl1_n_nlos"] = p.model1_pl.n_nlos;
    return j;
}

// One self-contained document: seed, config echo, and every curve. All
// values are finite (raw drops, which can be -inf, live in the CSV path).
inline void write_results_json(const SimulationConfig& cfg,
                               const std::vector<LabeledCurve>& curves, const std::string& path)
{
    nlohmann::ordered_json j;
    j["seed"] = cfg.rng_seed;
    j["config"] = config_json(cfg);
    j["curves"] = nlohmann::ordered_json::array();
    for (const auto& lc : curves)
    {
        nlohmann::ordered_json cj;
        cj["label"] = lc.label;
        cj["metric"] = to_string(lc.curve.kind);
        cj["sample_count"] = lc.curve.sample_count;
        cj["thresholds"] = lc.curve.thresholds;
        cj["coverage"] = lc.curve.coverage;
        j["curves"].push_back(std::move(cj));
    }
    auto out = detail::open_out(path);
    out << j.dump(2) << '\n';
    detail::finish(out, path);
}

/*!
 * Writes one run's artifacts into out_dir and returns the file paths.
 * CSV format: one `threshold,coverage` file per curve plus the raw per-drop
 * file. JSON format: a single document with config echo, seed, and curves.
 * Refuses empty results before touching the filesystem.
 */
inline std::vector<std::string> export_results(const SimulationConfig& cfg,
                                               const std::vector<DropResult>& results,
                                               const std::vector<LabeledCurve>& curves,
                                               const std::string& out_dir, OutputFormat format)
{
    if (results.empty())
        throw std::invalid_argument("export_results: no results to export");
    std::filesystem::create_directories(out_dir);
    const std::string tag =
        detail::sanitize_label(scenario_code(cfg.scenario) + "_" + model_code(cfg.channel_model));
    std::vector<std::string> written;
    if (format == OutputFormat::Json)
    {
        const std::string path = out_dir + "/results_" + tag + ".json";
        write_results_json(cfg, curves, path);
        written.push_back(path);
        return written;
    }
    for (const auto& lc : curves)
    {
        const std::string metric = (lc.curve.kind == MetricKind::SinrDb) ? "sinr" : "rate";
        const std::string path =
            out_dir + "/coverage_" + metric + "_" + detail::sanitize_label(lc.label) + ".csv";
        write_coverage_csv(lc.curve, path);
        written.push_back(path);
    }
    const std::string raw = out_dir + "/drops_" + tag + ".csv";
    write_drops_csv(results, raw);
    written.push_back(raw);
    return written;
}

// Deployment snapshot for debugging: kind,operator,x_m,y_m,assoc_bs.
// BS rows leave assoc_bs empty; unassociated UEs record -1.
inline void write_deployment_csv(const Deployment& d, const std::string& path)
{
    auto out = detail::open_out(path);
    out << "kind,operator,x_m,y_m,assoc_bs\n";
    for (const auto& b : d.bss)
        out << "bs," << b.op << ',' << detail::g17(b.x_m) << ',' << detail::g17(b.y_m) << ",\n";
    for (std::size_t u = 0; u < d.ues.size(); ++u)
    {
        const auto& n = d.ues[u];
        const int assoc = d.association.size() == d.ues.size() ? d.association[u] : -1;
        out << "ue," << n.op << ',' << detail::g17(n.x_m) << ',' << detail::g17(n.y_m) << ','
            << assoc << '\n';
    }
    detail::finish(out, path);
}

// Gain pattern sweep rows: angle_deg,gain_db.
inline void write_pattern_csv(const std::vector<std::pair<double, double>>& sweep,
                              const std::string& path)
{
    auto out = detail::open_out(path);
    out << "angle_deg,gain_db\n";
    for (const auto& [angle, gain] : sweep)
        out << detail::g17(angle) << ',' << detail::g17(gain) << '\n';
    detail::finish(out, path);
}

namespace detail {

inline std::string f2(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.2f", x);
    return buf;
}

inline const char* plot_color(std::size_t i)
{
    static const char* palette[16] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                      "#ff7f0e", "#8c564b", "#e377c2", "#7f7f7f",
                                      "#bcbd22", "#17becf", "#aec7e8", "#ffbb78",
                                      "#98df8a", "#ff9896", "#c5b0d5", "#c49c94"};
    return palette[i % 16];
}

} // namespace detail

/*!
 * Self-contained SVG coverage plot: x = threshold (dB linear axis for SINR,
 * log axis for rate), y = coverage probability, one polyline per curve with
 * a legend entry each. All curves must share the metric kind.
 */
inline void emit_plot(const std::vector<LabeledCurve>& curves, const std::string& path)
{
    if (curves.empty())
        throw std::invalid_argument("emit_plot: need at least one curve");
    const MetricKind kind = curves.front().curve.kind;
    for (const auto& lc : curves)
    {
        if (lc.curve.kind != kind)
            throw std::invalid_argument("emit_plot: curves mix metric kinds");
        if (lc.curve.thresholds.empty())
            throw std::invalid_argument("emit_plot: curve '" + lc.label + "' has no points");
    }
    const bool log_x = (kind == MetricKind::RateBps);
    const auto x_of = [log_x](double t) { return log_x ? std::log10(t) : t; };

    double x_min = std::numeric_limits<double>::infinity();
    double x_max = -std::numeric_limits<double>::infinity();
    for (const auto& lc : curves)
        for (const double t : lc.curve.thresholds)
        {
            x_min = std::min(x_min, x_of(t));
            x_max = std::max(x_max, x_of(t));
        }
    if (!(x_max > x_min))
        x_max = x_min + 1.0; // degenerate single-threshold grid

    // plot box in pixel space
    const double px0 = 70.0, px1 = 640.0, py0 = 30.0, py1 = 500.0;
    const double width = 880.0, height = 560.0;
    const auto sx = [&](double x) { return px0 + (x - x_min) / (x_max - x_min) * (px1 - px0); };
    const auto sy = [&](double cov) { return py1 - cov * (py1 - py0); };
    using detail::f2;

    auto out = detail::open_out(path);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    out << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
    out << "<rect x=\"" << f2(px0) << "\" y=\"" << f2(py0) << "\" width=\"" << f2(px1 - px0)
        << "\" height=\"" << f2(py1 - py0) << "\" fill=\"none\" stroke=\"black\"/>\n";

    // y ticks every 0.2
    for (int i = 0; i <= 5; ++i)
    {
        const double cov = i / 5.0;
        const double y = sy(cov);
        out << "<line x1=\"" << f2(px0 - 5) << "\" y1=\"" << f2(y) << "\" x2=\"" << f2(px0)
            << "\" y2=\"" << f2(y) << "\" stroke=\"black\"/>\n";
        out << "<line x1=\"" << f2(px0) << "\" y1=\"" << f2(y) << "\" x2=\"" << f2(px1)
            << "\" y2=\"" << f2(y) << "\" stroke=\"#dddddd\"/>\n";
        out << "<text x=\"" << f2(px0 - 10) << "\" y=\"" << f2(y + 4)
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">" << f2(cov)
            << "</text>\n";
    }

    // x ticks: integer decades for rate, steps of 10 dB for SINR
    const double tick_step = log_x ? 1.0 : 10.0;
    const double first_tick = std::ceil(x_min / tick_step) * tick_step;
    for (double x = first_tick; x <= x_max + 1e-9; x += tick_step)
    {
        const double px = sx(x);
        out << "<line x1=\"" << f2(px) << "\" y1=\"" << f2(py1) << "\" x2=\"" << f2(px)
            << "\" y2=\"" << f2(py1 + 5) << "\" stroke=\"black\"/>\n";
        std::string label;
        if (log_x)
        {
            char buf[24];
            std::snprintf(buf, sizeof(buf), "1e%d", static_cast<int>(std::lround(x)));
            label = buf;
        }
        else
        {
            char buf[24];
            std::snprintf(buf, sizeof(buf), "%g", x);
            label = buf;
        }
        out << "<text x=\"" << f2(px) << "\" y=\"" << f2(py1 + 20)
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" << label
            << "</text>\n";
    }

    const std::string x_title =
        log_x ? "Rate threshold [bit/s]" : "SINR threshold [dB]";
    out << "<text x=\"" << f2(0.5 * (px0 + px1)) << "\" y=\"" << f2(py1 + 42)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">" << x_title
        << "</text>\n";
    out << "<text x=\"18\" y=\"" << f2(0.5 * (py0 + py1))
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\" "
           "transform=\"rotate(-90 18 "
        << f2(0.5 * (py0 + py1)) << ")\">Coverage probability</text>\n";

    for (std::size_t ci = 0; ci < curves.size(); ++ci)
    {
        const auto& lc = curves[ci];
        out << "<polyline fill=\"none\" stroke=\"" << detail::plot_color(ci)
            << "\" stroke-width=\"1.8\" points=\"";
        for (std::size_t i = 0; i < lc.curve.thresholds.size(); ++i)
        {
            if (i > 0)
                out << ' ';
            out << f2(sx(x_of(lc.curve.thresholds[i]))) << ',' << f2(sy(lc.curve.coverage[i]));
        }
        out << "\"/>\n";

        // legend entry
        const double ly = py0 + 14.0 + 18.0 * static_cast<double>(ci);
        out << "<line x1=\"" << f2(px1 + 16) << "\" y1=\"" << f2(ly) << "\" x2=\"" << f2(px1 + 44)
            << "\" y2=\"" << f2(ly) << "\" stroke=\"" << detail::plot_color(ci)
            << "\" stroke-width=\"1.8\"/>\n";
        out << "<text x=\"" << f2(px1 + 50) << "\" y=\"" << f2(ly + 4)
            << "\" font-family=\"sans-serif\" font-size=\"12\">" << lc.label << "</text>\n";
    }
    out << "</svg>\n";
    detail::finish(out, path);
}

} // namespace mmshare
