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

#ifndef SWHBF_CONFIG_HPP
#define SWHBF_CONFIG_HPP

#include "channel.hpp"
#include "powermodel.hpp"
#include "solvers.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace swhbf
{

struct ConfigError : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

enum class SweepAxis
{
    none,
    snr,
    bandwidth,
    subcarriers,
};

enum class Scheme
{
    dbf,
    sw_es,
    sw_ts,
    sw_pga_ts,
    sw_random,
    ps_baseline,
};

inline constexpr Scheme all_schemes[] = {Scheme::dbf,       Scheme::sw_es,     Scheme::sw_ts,
                                         Scheme::sw_pga_ts, Scheme::sw_random, Scheme::ps_baseline};

inline std::string to_string(Scheme s)
{
    switch (s)
    {
    case Scheme::dbf:
        return "dbf";
    case Scheme::sw_es:
        return "sw-es";
    case Scheme::sw_ts:
        return "sw-ts";
    case Scheme::sw_pga_ts:
        return "sw-pga-ts";
    case Scheme::sw_random:
        return "sw-random";
    case Scheme::ps_baseline:
        return "ps-baseline";
    }
    return "unknown";
}

inline Scheme parse_scheme(const std::string &s)
{
    for (Scheme x : all_schemes)
        if (to_string(x) == s)
            return x;
    throw ConfigError("unknown scheme '" + s + "' (expected dbf, sw-es, sw-ts, sw-pga-ts, sw-random, ps-baseline)");
}

inline std::string to_string(SweepAxis a)
{
    switch (a)
    {
    case SweepAxis::none:
        return "none";
    case SweepAxis::snr:
        return "snr";
    case SweepAxis::bandwidth:
        return "bandwidth";
    case SweepAxis::subcarriers:
        return "subcarriers";
    }
    return "unknown";
}

inline SweepAxis parse_axis(const std::string &s)
{
    for (SweepAxis a : {SweepAxis::none, SweepAxis::snr, SweepAxis::bandwidth, SweepAxis::subcarriers})
        if (to_string(a) == s)
            return a;
    throw ConfigError("unknown sweep_axis '" + s + "' (expected none, snr, bandwidth, subcarriers)");
}

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

struct ExperimentSpec
{
    SystemConfig base;
    SweepAxis sweep_axis = SweepAxis::none;
    std::vector<double> sweep_values; // SNR in dB, bandwidth in Hz, or subcarrier counts
    std::vector<Scheme> schemes = {Scheme::dbf, Scheme::sw_ts, Scheme::sw_pga_ts, Scheme::sw_random,
                                   Scheme::ps_baseline};
    int n_trials = 100;
    std::string output_dir = "out";
    std::optional<TabuConfig> tabu; // unset: scaled to the instance size
    PgaConfig pga;
    DevicePowers powers;
    bool record_wall_time = false;

    void validate() const
    {
        try
        {
            base.validate();
            pga.validate();
            powers.validate();
            if (tabu)
                tabu->validate();
        }
        catch (const std::exception &e)
        {
            throw ConfigError(e.what());
        }
        if (n_trials < 1)
            throw ConfigError("n_trials must be >= 1");
        if (sweep_axis != SweepAxis::none && sweep_values.empty())
            throw ConfigError("sweep_values must be non-empty when sweep_axis is " + to_string(sweep_axis));
        if (schemes.empty())
            throw ConfigError("at least one scheme is required");
        for (double v : sweep_values)
        {
            if (sweep_axis == SweepAxis::bandwidth && !(v > 0.0))
                throw ConfigError("bandwidth sweep values must be positive");
            if (sweep_axis == SweepAxis::subcarriers && (v < 1.0 || v != std::floor(v)))
                throw ConfigError("subcarrier sweep values must be positive integers");
        }
    }
};

// N_t = 16, N_r = 8, N_RF = N_s = 2, K = 64.
inline SystemConfig small_preset()
{
    return SystemConfig{};
}

// N_t = N_r = 64, N_RF = N_s = 4. Exhaustive search is unavailable at this size.
inline SystemConfig large_preset()
{
    SystemConfig c;
    c.n_tx = 64;
    c.n_rx = 64;
    c.n_rf = 4;
    c.n_streams = 4;
    return c;
}

inline SystemConfig preset_by_name(const std::string &name)
{
    if (name == "small")
        return small_preset();
    if (name == "large")
        return large_preset();
    throw ConfigError("unknown preset '" + name + "' (expected small or large)");
}

// Configuration for one axis point.
inline SystemConfig apply_axis(SystemConfig cfg, SweepAxis axis, double value)
{
    switch (axis)
    {
    case SweepAxis::none:
        break;
    case SweepAxis::snr:
        cfg.snr_linear = db_to_linear(value);
        break;
    case SweepAxis::bandwidth:
        cfg.bandwidth_hz = value;
        break;
    case SweepAxis::subcarriers:
        cfg.n_subcarriers = static_cast<int>(value);
        break;
    }
    return cfg;
}

// ---------- key-value config files ----------
//
//   # comment
//   [system]
//   n_rx = 8
//   snr_db = 10
//   [experiment]
//   schemes = ["dbf", "sw-ts"]
//
// Keys are addressed as "section.key"; unknown keys are rejected.

namespace detail
{
inline std::string trim(const std::string &s)
{
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

inline std::string unquote(std::string s)
{
    s = trim(s);
    if (s.size() >= 2 && ((s.front() == '"' && s.back() == '"') || (s.front() == '\'' && s.back() == '\'')))
        return s.substr(1, s.size() - 2);
    return s;
}

inline std::string strip_comment(const std::string &line)
{
    bool in_quote = false;
    for (std::size_t i = 0; i < line.size(); ++i)
    {
        if (line[i] == '"')
            in_quote = !in_quote;
        if (line[i] == '#' && !in_quote)
            return line.substr(0, i);
    }
    return line;
}
} // namespace detail

inline std::vector<std::string> split_list(const std::string &raw)
{
    std::string s = detail::trim(raw);
    if (!s.empty() && s.front() == '[')
    {
        if (s.back() != ']')
            throw ConfigError("unterminated list: " + raw);
        s = s.substr(1, s.size() - 2);
    }
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
    {
        item = detail::unquote(item);
        if (!item.empty())
            out.push_back(item);
    }
    return out;
}

inline double parse_double(const std::string &key, const std::string &v)
{
    try
    {
        std::size_t pos = 0;
        const double d = std::stod(v, &pos);
        if (detail::trim(v.substr(pos)).empty() && std::isfinite(d))
            return d;
    }
    catch (const std::exception &)
    {
    }
    throw ConfigError("key '" + key + "': expected a number, got '" + v + "'");
}

inline long long parse_int(const std::string &key, const std::string &v)
{
    const double d = parse_double(key, v);
    if (d != std::floor(d))
        throw ConfigError("key '" + key + "': expected an integer, got '" + v + "'");
    return static_cast<long long>(d);
}

inline std::uint64_t parse_u64(const std::string &key, const std::string &v)
{
    std::uint64_t out = 0;
    const std::string t = detail::trim(v);
    const auto res = std::from_chars(t.data(), t.data() + t.size(), out);
    if (res.ec != std::errc() || res.ptr != t.data() + t.size())
        throw ConfigError("key '" + key + "': expected an unsigned 64-bit integer, got '" + v + "'");
    return out;
}

inline bool parse_bool(const std::string &key, const std::string &v)
{
    if (v == "true" || v == "1")
        return true;
    if (v == "false" || v == "0")
        return false;
    throw ConfigError("key '" + key + "': expected true/false, got '" + v + "'");
}

// Flat "section.key" -> raw value map, in file order of last assignment.
inline std::map<std::string, std::string> parse_key_values(std::istream &in, const std::string &origin)
{
    std::map<std::string, std::string> out;
    std::string section;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line))
    {
        ++lineno;
        line = detail::trim(detail::strip_comment(line));
        if (line.empty())
            continue;
        if (line.front() == '[' && line.back() == ']' && line.find('=') == std::string::npos)
        {
            section = detail::trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": expected 'key = value'");
        const std::string key = detail::trim(line.substr(0, eq));
        const std::string value = detail::trim(line.substr(eq + 1));
        if (key.empty())
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty key");
        out[section.empty() ? key : section + "." + key] = value;
    }
    return out;
}

// Applies parsed values on top of `spec`.
inline void apply_key_values(ExperimentSpec &spec, const std::map<std::string, std::string> &kv)
{
    if (auto it = kv.find("system.preset"); it != kv.end())
    {
        const auto seed = spec.base.seed;
        spec.base = preset_by_name(detail::unquote(it->second));
        spec.base.seed = seed;
    }

    auto &b = spec.base;
    for (const auto &[key, raw] : kv)
    {
        const std::string v = detail::unquote(raw);
        auto as_int = [&] { return static_cast<int>(parse_int(key, v)); };
        auto as_dbl = [&] { return parse_double(key, v); };

        if (key == "system.preset")
            continue;
        else if (key == "system.n_tx")
            b.n_tx = as_int();
        else if (key == "system.n_rx")
            b.n_rx = as_int();
        else if (key == "system.n_rf")
            b.n_rf = as_int();
        else if (key == "system.n_streams")
            b.n_streams = as_int();
        else if (key == "system.n_subcarriers")
            b.n_subcarriers = as_int();
        else if (key == "system.bandwidth_hz")
            b.bandwidth_hz = as_dbl();
        else if (key == "system.carrier_hz")
            b.carrier_hz = as_dbl();
        else if (key == "system.n_clusters")
            b.n_clusters = as_int();
        else if (key == "system.cp_length")
            b.cp_length = as_int();
        else if (key == "system.antenna_spacing_wavelengths")
            b.antenna_spacing_wavelengths = as_dbl();
        else if (key == "system.snr_db")
            b.snr_linear = db_to_linear(as_dbl());
        else if (key == "system.snr_linear")
            b.snr_linear = as_dbl();
        else if (key == "system.noise_power")
            b.noise_power = as_dbl();
        else if (key == "system.seed")
            b.seed = parse_u64(key, v);
        else if (key == "system.rolloff")
            b.rolloff = as_dbl();
        else if (key == "system.normalize_gain")
            b.normalize_gain = parse_bool(key, v);
        else if (key == "experiment.sweep_axis")
            spec.sweep_axis = parse_axis(v);
        else if (key == "experiment.sweep_values")
        {
            spec.sweep_values.clear();
            for (const auto &item : split_list(raw))
                spec.sweep_values.push_back(parse_double(key, item));
        }
        else if (key == "experiment.schemes")
        {
            spec.schemes.clear();
            for (const auto &item : split_list(raw))
                spec.schemes.push_back(parse_scheme(item));
        }
        else if (key == "experiment.n_trials")
            spec.n_trials = as_int();
        else if (key == "experiment.output_dir")
            spec.output_dir = v;
        else if (key == "experiment.record_wall_time")
            spec.record_wall_time = parse_bool(key, v);
        else if (key.starts_with("tabu."))
        {
            if (!spec.tabu)
                spec.tabu = TabuConfig::defaults(b.n_rx, b.n_rf);
            if (key == "tabu.list_length")
                spec.tabu->list_length = as_int();
            else if (key == "tabu.max_iterations")
                spec.tabu->max_iterations = as_int();
            else if (key == "tabu.stall_limit")
                spec.tabu->stall_limit = as_int();
            else
                throw ConfigError("unknown config key '" + key + "'");
        }
        else if (key == "pga.step_scale")
            spec.pga.step_scale = as_dbl();
        else if (key == "pga.max_iterations")
            spec.pga.max_iterations = as_int();
        else if (key == "pga.convergence_tol")
            spec.pga.convergence_tol = as_dbl();
        else if (key == "power.lna_mw")
            spec.powers.lna_mw = as_dbl();
        else if (key == "power.splitter_mw")
            spec.powers.splitter_mw = as_dbl();
        else if (key == "power.combiner_mw")
            spec.powers.combiner_mw = as_dbl();
        else if (key == "power.phase_shifter_mw")
            spec.powers.phase_shifter_mw = as_dbl();
        else if (key == "power.switch_mw")
            spec.powers.switch_mw = as_dbl();
        else if (key == "power.mixer_mw")
            spec.powers.mixer_mw = as_dbl();
        else if (key == "power.lo_mw")
            spec.powers.lo_mw = as_dbl();
        else if (key == "power.lpf_mw")
            spec.powers.lpf_mw = as_dbl();
        else if (key == "power.bb_amp_mw")
            spec.powers.bb_amp_mw = as_dbl();
        else if (key == "power.adc_mw")
            spec.powers.adc_mw = as_dbl();
        else
            throw ConfigError("unknown config key '" + key + "'");
    }
}

inline void load_config_file(ExperimentSpec &spec, const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file '" + path + "'");
    apply_key_values(spec, parse_key_values(in, path));
}

} // namespace swhbf

#endif
