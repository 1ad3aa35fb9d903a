// SPDX-License-Identifier: Apache-2.0
//
// swhbf - switch-based hybrid beamforming for wideband multi-carrier receivers
// Copyright (C) 2026 The swhbf authors
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

#ifndef SWHBF_CLI_HPP
#define SWHBF_CLI_HPP

#include "config.hpp"
#include "experiment.hpp"
#include "report.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace swhbf
{

enum ExitCode : int
{
    exit_ok = 0,
    exit_config = 2,
    exit_dimension = 3,
    exit_io = 4,
};

namespace detail
{
struct CommonFlags
{
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<int> trials;
    std::optional<std::string> out;
    std::optional<std::string> schemes;
    std::optional<std::string> preset;
    std::optional<double> snr_db;
    std::optional<std::string> values;
    bool timing = false;
};

inline void add_common(CLI::App *cmd, CommonFlags &f, bool with_values)
{
    cmd->add_option("--config", f.config, "Key-value config file ([system], [experiment], [tabu], [pga], [power])");
    cmd->add_option("--seed", f.seed, "Master seed");
    cmd->add_option("--trials", f.trials, "Channel realizations per axis point");
    cmd->add_option("--out", f.out, "Output directory");
    cmd->add_option("--schemes", f.schemes, "Comma list of dbf,sw-es,sw-ts,sw-pga-ts,sw-random,ps-baseline");
    cmd->add_option("--preset", f.preset, "Scenario preset: small or large");
    cmd->add_option("--snr-db", f.snr_db, "SNR in dB (P_b = K * SNR * noise)");
    cmd->add_flag("--timing", f.timing, "Record solver wall time (makes results.csv non-reproducible)");
    if (with_values)
        cmd->add_option("--values", f.values, "Comma list of sweep values");
}

// defaults < preset < config file < flags
inline ExperimentSpec build_spec(ExperimentSpec spec, const CommonFlags &f)
{
    if (f.preset)
        spec.base = preset_by_name(*f.preset);
    if (!f.config.empty())
        load_config_file(spec, f.config);
    if (f.seed)
        spec.base.seed = *f.seed;
    if (f.trials)
        spec.n_trials = *f.trials;
    if (f.out)
        spec.output_dir = *f.out;
    if (f.snr_db)
        spec.base.snr_linear = db_to_linear(*f.snr_db);
    if (f.timing)
        spec.record_wall_time = true;
    if (f.schemes)
    {
        spec.schemes.clear();
        for (const auto &s : split_list(*f.schemes))
            spec.schemes.push_back(parse_scheme(s));
    }
    if (f.values)
    {
        spec.sweep_values.clear();
        for (const auto &v : split_list(*f.values))
            spec.sweep_values.push_back(parse_double("--values", v));
    }
    return spec;
}

inline void print_means(const std::vector<ResultRow> &rows, std::ostream &out)
{
    out << "scheme        axis_value        mean_se   mean_ee\n";
    for (const auto &m : mean_by_scheme(rows))
    {
        char buf[160];
        std::snprintf(buf, sizeof(buf), "%-12s  %-16.6g  %8.4f  %8.4f\n", m.scheme.c_str(), m.axis_value, m.mean_se,
                      m.mean_ee);
        out << buf;
    }
}

inline int run_sweep(ExperimentSpec spec, std::optional<SweepAxis> forced_axis, std::ostream &out)
{
    if (forced_axis)
        spec.sweep_axis = *forced_axis;
    const auto rows = run_experiment(spec);
    const std::filesystem::path dir = spec.output_dir;
    emit_csv(rows, dir / "results.csv");
    emit_summary_plots(rows, dir);
    print_means(rows, out);
    out << "wrote " << (dir / "results.csv").string() << "\n";
    return exit_ok;
}
} // namespace detail

// Entry point shared by the swhbf executable and the tests.
inline int run_cli(int argc, const char *const *argv, std::ostream &out = std::cout, std::ostream &err = std::cerr)
{
    CLI::App app{"Switch-based hybrid beamforming experiments for wideband MIMO-OFDM receivers"};
    app.require_subcommand(1);

    detail::CommonFlags sim_f, bw_f, k_f, oc_f;
    std::string axis_name;

    auto *sim = app.add_subcommand("simulate", "Monte Carlo SE/EE evaluation (SNR sweep by default)");
    detail::add_common(sim, sim_f, true);
    sim->add_option("--axis", axis_name, "Sweep axis: none, snr, bandwidth, subcarriers");

    auto *bw = app.add_subcommand("sweep-bandwidth", "SE versus system bandwidth");
    detail::add_common(bw, bw_f, true);

    auto *ks = app.add_subcommand("sweep-subcarriers", "SE versus number of subcarriers");
    detail::add_common(ks, k_f, true);

    BeamPatternSpec bp;
    std::string bp_out = "out";
    std::string bp_freqs;
    auto *beam = app.add_subcommand("beampattern", "Beam-squint pattern figure");
    beam->add_option("--antennas", bp.n_ant, "Array size");
    beam->add_option("--focus", bp.focus_rad, "Beam focus angle (rad)");
    beam->add_option("--carrier", bp.carrier_hz, "Design (carrier) frequency in Hz");
    beam->add_option("--bandwidth", bp.bandwidth_hz, "Bandwidth in Hz; default curves at f_c - B/2, f_c, f_c + B/2");
    beam->add_option("--spacing", bp.spacing, "Element spacing in wavelengths");
    beam->add_option("--frequencies", bp_freqs, "Comma list of evaluation frequencies in Hz");
    beam->add_option("--out", bp_out, "Output directory");

    auto *oc = app.add_subcommand("oracle-compare", "TS and PGA-aided TS against exhaustive search");
    detail::add_common(oc, oc_f, false);

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_config;
    }

    try
    {
        if (sim->parsed())
        {
            ExperimentSpec def;
            def.sweep_axis = SweepAxis::snr;
            def.sweep_values = {-10, -5, 0, 5, 10};
            ExperimentSpec spec = detail::build_spec(def, sim_f);
            std::optional<SweepAxis> axis;
            if (!axis_name.empty())
                axis = parse_axis(axis_name);
            return detail::run_sweep(spec, axis, out);
        }
        if (bw->parsed())
        {
            ExperimentSpec def;
            def.sweep_values = {0.5e9, 1e9, 2e9, 4e9};
            ExperimentSpec spec = detail::build_spec(def, bw_f);
            return detail::run_sweep(spec, SweepAxis::bandwidth, out);
        }
        if (ks->parsed())
        {
            ExperimentSpec def;
            def.sweep_values = {16, 32, 64, 128};
            ExperimentSpec spec = detail::build_spec(def, k_f);
            return detail::run_sweep(spec, SweepAxis::subcarriers, out);
        }
        if (beam->parsed())
        {
            if (!bp_freqs.empty())
                for (const auto &v : split_list(bp_freqs))
                    bp.frequencies_hz.push_back(parse_double("--frequencies", v));
            const std::filesystem::path dir = bp_out;
            emit_beam_pattern_figure(bp, dir / "beam_pattern.svg", dir / "beam_pattern.csv");
            out << "wrote " << (dir / "beam_pattern.svg").string() << "\n";
            return exit_ok;
        }
        if (oc->parsed())
        {
            ExperimentSpec spec = detail::build_spec(oracle_default_spec(), oc_f);
            const OracleSummary s = oracle_compare(spec);
            const std::filesystem::path dir = spec.output_dir;
            emit_oracle_summary(s, dir / "oracle_summary.csv");
            for (const auto &r : s.schemes)
            {
                char buf[160];
                std::snprintf(buf, sizeof(buf), "%-10s mean %.4f  min %.4f  ratio>=0.95 in %.0f%% of %d trials\n",
                              r.scheme.c_str(), r.mean_ratio, r.min_ratio, 100.0 * r.frac_at_least_95, s.trials);
                out << buf;
            }
            return exit_ok;
        }
    }
    catch (const DimensionGuardError &e)
    {
        err << "error: " << e.what() << "\n";
        return exit_dimension;
    }
    catch (const IoError &e)
    {
        err << "error: " << e.what() << "\n";
        return exit_io;
    }
    catch (const ConfigError &e)
    {
        err << "config error: " << e.what() << "\n";
        return exit_config;
    }
    catch (const std::invalid_argument &e)
    {
        err << "config error: " << e.what() << "\n";
        return exit_config;
    }
    catch (const std::filesystem::filesystem_error &e)
    {
        err << "error: " << e.what() << "\n";
        return exit_io;
    }
    return exit_ok;
}

} // namespace swhbf

#endif
