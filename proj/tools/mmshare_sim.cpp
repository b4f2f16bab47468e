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
//
// Command line front end: `run` evaluates one scenario/model combination,
// `sweep` covers the full 4x4 grid with combined comparison plots, and
// `pattern` dumps the aggregate beamforming gain pattern sweep.

#include <cstdint>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "mmshare/mmshare.hpp"

namespace {

struct CommonOpts {
    std::string config_path;
    long drops = 0;
    std::uint64_t seed = 0;
    std::string out_dir = "out";
    std::string format = "csv";
    int threads = 0; // 0 = hardware default
    double sinr_min = -20.0;
    double sinr_max = 60.0;
    double sinr_step = 1.0;
    double rate_min = 1e5;
    double rate_max = 1e10;
    int rate_points = 50;
    CLI::Option* drops_opt = nullptr;
    CLI::Option* seed_opt = nullptr;
};

void add_common_options(CLI::App* cmd, CommonOpts& o)
{
    cmd->add_option("--config", o.config_path, "configuration file (flat key = value lines)")
        ->required();
    o.drops_opt = cmd->add_option("--drops", o.drops, "Monte Carlo drops (overrides config)");
    o.seed_opt =
        cmd->add_option("--seed", o.seed, "RNG seed (overrides config file and MMSHARE_SEED)");
    cmd->add_option("--out", o.out_dir, "output directory")->capture_default_str();
    cmd->add_option("--format", o.format, "export format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    cmd->add_option("--threads", o.threads, "worker threads, 0 = hardware default")
        ->capture_default_str();
    cmd->add_option("--sinr-min", o.sinr_min, "SINR grid start, dB")->capture_default_str();
    cmd->add_option("--sinr-max", o.sinr_max, "SINR grid end, dB")->capture_default_str();
    cmd->add_option("--sinr-step", o.sinr_step, "SINR grid step, dB")->capture_default_str();
    cmd->add_option("--rate-min", o.rate_min, "rate grid start, bit/s")->capture_default_str();
    cmd->add_option("--rate-max", o.rate_max, "rate grid end, bit/s")->capture_default_str();
    cmd->add_option("--rate-points", o.rate_points, "rate grid point count (log spaced)")
        ->capture_default_str();
}

void validate_or_throw(const mmshare::SimulationConfig& cfg)
{
    if (const auto violations = mmshare::validate(cfg); !violations.empty())
    {
        std::string msg = "invalid configuration:";
        for (const auto& v : violations)
            msg += "\n  - " + v;
        throw mmshare::ConfigError(msg);
    }
}

std::vector<double> build_sinr_grid(const CommonOpts& o)
{
    if (!(o.sinr_step > 0.0) || o.sinr_max < o.sinr_min)
        throw mmshare::ConfigError("invalid SINR threshold grid (need step > 0, max >= min)");
    std::vector<double> g;
    for (double t = o.sinr_min; t <= o.sinr_max + 1e-9; t += o.sinr_step)
        g.push_back(t);
    return g;
}

std::vector<double> build_rate_grid(const CommonOpts& o)
{
    if (!(o.rate_min > 0.0) || !(o.rate_max > o.rate_min) || o.rate_points < 2)
        throw mmshare::ConfigError(
            "invalid rate threshold grid (need 0 < min < max and >= 2 points)");
    const double lo = std::log10(o.rate_min);
    const double hi = std::log10(o.rate_max);
    std::vector<double> g;
    g.reserve(static_cast<std::size_t>(o.rate_points));
    for (int i = 0; i < o.rate_points; ++i)
        g.push_back(std::pow(10.0, lo + (hi - lo) * i / (o.rate_points - 1)));
    return g;
}

int effective_threads(int requested)
{
    if (requested > 0)
        return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

mmshare::SimulationConfig load_with_overrides(const CommonOpts& o, const std::string& scenario,
                                              const std::string& model)
{
    mmshare::SimulationConfig cfg = mmshare::load_config(o.config_path);
    if (!scenario.empty())
        cfg.scenario = mmshare::parse_scenario(scenario);
    if (!model.empty())
        cfg.channel_model = mmshare::parse_channel_model(model);
    if (o.drops_opt != nullptr && o.drops_opt->count() > 0)
        cfg.num_drops = o.drops;
    if (o.seed_opt != nullptr && o.seed_opt->count() > 0)
        cfg.rng_seed = o.seed;
    validate_or_throw(cfg);
    return cfg;
}

// Runs one campaign and writes its artifacts; fills the per-metric curves.
std::vector<std::string> run_one(const mmshare::SimulationConfig& cfg, const CommonOpts& o,
                                 mmshare::OutputFormat fmt, mmshare::LabeledCurve& sinr_curve,
                                 mmshare::LabeledCurve& rate_curve)
{
    const auto results = mmshare::run_campaign(cfg, effective_threads(o.threads));
    const std::string label =
        mmshare::scenario_code(cfg.scenario) + "/" + mmshare::model_code(cfg.channel_model);
    sinr_curve = {label, mmshare::coverage(mmshare::sinr_db_samples(results), build_sinr_grid(o),
                                           mmshare::MetricKind::SinrDb)};
    rate_curve = {label, mmshare::coverage(mmshare::rate_samples(results), build_rate_grid(o),
                                           mmshare::MetricKind::RateBps)};
    return mmshare::export_results(cfg, results, {sinr_curve, rate_curve}, o.out_dir, fmt);
}

int cmd_run(const CommonOpts& o, const std::string& scenario, const std::string& model, bool plot,
            bool dump_deployment)
{
    const mmshare::SimulationConfig cfg = load_with_overrides(o, scenario, model);
    const mmshare::OutputFormat fmt = mmshare::parse_format(o.format);
    mmshare::LabeledCurve sinr_curve, rate_curve;
    std::vector<std::string> files = run_one(cfg, o, fmt, sinr_curve, rate_curve);

    const std::string tag = mmshare::scenario_code(cfg.scenario) + "_" +
                            mmshare::model_code(cfg.channel_model);
    if (plot)
    {
        const std::string sp = o.out_dir + "/coverage_sinr_" + tag + ".svg";
        const std::string rp = o.out_dir + "/coverage_rate_" + tag + ".svg";
        mmshare::emit_plot({sinr_curve}, sp);
        mmshare::emit_plot({rate_curve}, rp);
        files.push_back(sp);
        files.push_back(rp);
    }
    if (dump_deployment)
    {
        const auto rd = mmshare::realize_deployment(cfg, mmshare::scenario_spec(cfg), 0);
        const std::string dp = o.out_dir + "/deployment_" + tag + ".csv";
        mmshare::write_deployment_csv(rd.d, dp);
        files.push_back(dp);
    }

    std::printf("run %s: drops=%ld seed=%llu\n", tag.c_str(), cfg.num_drops,
                static_cast<unsigned long long>(cfg.rng_seed));
    for (const auto& f : files)
        std::printf("wrote %s\n", f.c_str());
    return 0;
}

int cmd_sweep(const CommonOpts& o)
{
    const mmshare::OutputFormat fmt = mmshare::parse_format(o.format);
    const char* scenarios[4] = {"s1", "s2", "s3", "s4"};
    const char* models[4] = {"m1", "m2", "m3", "m4"};
    std::vector<mmshare::LabeledCurve> sinr_curves, rate_curves;
    std::vector<std::string> files;
    for (const char* s : scenarios)
    {
        for (const char* m : models)
        {
            const mmshare::SimulationConfig cfg = load_with_overrides(o, s, m);
            mmshare::LabeledCurve sc, rc;
            const auto written = run_one(cfg, o, fmt, sc, rc);
            files.insert(files.end(), written.begin(), written.end());
            sinr_curves.push_back(std::move(sc));
            rate_curves.push_back(std::move(rc));
            std::fprintf(stderr, "completed %s/%s\n", s, m);
        }
    }
    const std::string sp = o.out_dir + "/sweep_sinr.svg";
    const std::string rp = o.out_dir + "/sweep_rate.svg";
    mmshare::emit_plot(sinr_curves, sp);
    mmshare::emit_plot(rate_curves, rp);
    files.push_back(sp);
    files.push_back(rp);
    for (const auto& f : files)
        std::printf("wrote %s\n", f.c_str());
    return 0;
}

int cmd_pattern(const std::string& config_path, int points, const std::string& out_dir)
{
    const mmshare::SimulationConfig cfg = mmshare::load_config(config_path);
    const auto sweep = mmshare::pattern_sweep(cfg.tx_array, cfg.rx_array, points);
    std::filesystem::create_directories(out_dir);
    const std::string path = out_dir + "/pattern.csv";
    mmshare::write_pattern_csv(sweep, path);
    std::printf("wrote %s\n", path.c_str());
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"system-level Monte Carlo simulator for multi-operator mmWave networks"};
    app.require_subcommand(1);

    CommonOpts run_opts;
    std::string run_scenario, run_model;
    bool run_plot = false;
    bool run_dump = false;
    CLI::App* run = app.add_subcommand("run", "run one scenario/model campaign");
    add_common_options(run, run_opts);
    run->add_option("--scenario", run_scenario, "sharing scenario (overrides config)")
        ->check(CLI::IsMember({"s1", "s2", "s3", "s4"}));
    run->add_option("--model", run_model, "channel model (overrides config)")
        ->check(CLI::IsMember({"m1", "m2", "m3", "m4"}));
    run->add_flag("--plot", run_plot, "emit SVG coverage plots");
    run->add_flag("--dump-deployment", run_dump, "write drop 0's deployment as CSV");

    CommonOpts sweep_opts;
    CLI::App* sweep =
        app.add_subcommand("sweep", "run the full 4x4 scenario/model grid with comparison plots");
    add_common_options(sweep, sweep_opts);

    std::string pattern_config;
    std::string pattern_out = "out";
    int pattern_points = 721;
    CLI::App* pattern = app.add_subcommand("pattern", "dump the beamforming gain pattern sweep");
    pattern->add_option("--config", pattern_config, "configuration file")->required();
    pattern->add_option("--points", pattern_points, "sweep sample count")->capture_default_str();
    pattern->add_option("--out", pattern_out, "output directory")->capture_default_str();

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp& e)
    {
        return app.exit(e);
    }
    catch (const CLI::ParseError& e)
    {
        app.exit(e);
        return 1; // bad invocation/config input
    }

    try
    {
        if (run->parsed())
            return cmd_run(run_opts, run_scenario, run_model, run_plot, run_dump);
        if (sweep->parsed())
            return cmd_sweep(sweep_opts);
        if (pattern->parsed())
            return cmd_pattern(pattern_config, pattern_points, pattern_out);
        return 1;
    }
    catch (const mmshare::ConfigError& e)
    {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    catch (const std::invalid_argument& e)
    {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    catch (const mmshare::IoError& e)
    {
        std::fprintf(stderr, "I/O error: %s\n", e.what());
        return 2;
    }
    catch (const std::filesystem::filesystem_error& e)
    {
        std::fprintf(stderr, "I/O error: %s\n", e.what());
        return 2;
    }
    catch (const std::exception& e)
    {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
