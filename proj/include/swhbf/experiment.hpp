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

#ifndef SWHBF_EXPERIMENT_HPP
#define SWHBF_EXPERIMENT_HPP

#include "channel.hpp"
#include "config.hpp"
#include "powermodel.hpp"
#include "rxbeam.hpp"
#include "solvers.hpp"
#include "txbeam.hpp"

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <random>
#include <string>
#include <vector>

namespace swhbf
{

struct ResultRow
{
    std::string scheme;
    std::string axis;
    double axis_value = 0.0;
    int trial = 0;
    double se = 0.0;          // bits/s/Hz
    double ee = 0.0;          // bits/s/Hz/W
    long solver_evaluations = 0;
    double wall_time_s = 0.0;
};

// splitmix64 finaliser.
inline std::uint64_t mix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Child seed from a master seed and a path of indices. Depends only on the inputs, never on generator state.
inline std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> path)
{
    std::uint64_t h = mix64(master);
    for (std::uint64_t p : path)
        h = mix64(h ^ mix64(p + 0x632be59bd9b4e019ULL));
    return h;
}

// Everything shared by the schemes evaluated on one channel draw.
struct TrialInstance
{
    SystemConfig cfg;
    ChannelRealization channel;
    PrecoderSet precoders;
    EffectiveCovarianceSet cov;
};

// Draws trial `trial` for the given configuration. The channel stream depends on (seed, trial) only, so every point
// of a sweep sees the same cluster draw (angles, gains and delays in units of the sample period).
inline TrialInstance make_trial(const SystemConfig &cfg, int trial)
{
    TrialInstance t;
    t.cfg = cfg;
    std::mt19937_64 rng(derive_seed(cfg.seed, {static_cast<std::uint64_t>(trial), 0}));
    t.channel = draw_channel(rng, cfg);
    t.precoders = design_precoders(t.channel.subcarrier_channels, cfg);
    t.cov = effective_covariances(t.channel.subcarrier_channels, t.precoders.precoders);
    return t;
}

struct SchemeOutcome
{
    double se = 0.0;
    double objective = 0.0; // analog objective for switch schemes, SE otherwise
    long evaluations = 0;
    double solver_seconds = 0.0;
    Architecture arch = Architecture::switch_hybrid;
};

inline TabuConfig resolve_tabu(const std::optional<TabuConfig> &tabu, const SystemConfig &cfg)
{
    return tabu ? *tabu : TabuConfig::defaults(cfg.n_rx, cfg.n_rf);
}

inline SchemeOutcome evaluate_scheme(Scheme scheme, const TrialInstance &t, int trial, const TabuConfig &tabu_cfg,
                                     const PgaConfig &pga_cfg)
{
    const auto &cfg = t.cfg;
    const auto &H = t.channel.subcarrier_channels;
    const auto &F = t.precoders.precoders;
    const double noise = cfg.noise_power;
    std::mt19937_64 rng(derive_seed(cfg.seed, {static_cast<std::uint64_t>(trial), 1 + static_cast<std::uint64_t>(scheme)}));

    SchemeOutcome out;
    const auto start = std::chrono::steady_clock::now();
    auto stop_clock = [&] {
        out.solver_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    };

    auto finish_switch = [&](const SolveResult &r) {
        stop_clock();
        out.objective = r.objective;
        out.evaluations = r.evaluations;
        out.se = hybrid_spectral_efficiency(r.combiner.to_complex(), H, F, noise);
        out.arch = Architecture::switch_hybrid;
    };

    switch (scheme)
    {
    case Scheme::dbf:
        stop_clock();
        out.se = dbf_spectral_efficiency(H, F, noise);
        out.objective = out.se;
        out.arch = Architecture::fully_digital;
        break;
    case Scheme::sw_es:
        finish_switch(exhaustive_search(t.cov, noise, cfg.n_rf, cfg.n_streams));
        break;
    case Scheme::sw_ts:
        finish_switch(tabu_search(t.cov, noise, cfg.n_streams,
                                  default_tabu_start(cfg.n_rx, cfg.n_rf, cfg.n_streams), tabu_cfg));
        break;
    case Scheme::sw_pga_ts:
        finish_switch(pga_aided_tabu(t.cov, noise, cfg.n_rf, cfg.n_streams, tabu_cfg, pga_cfg, rng));
        break;
    case Scheme::sw_random: {
        SolveResult r;
        r.combiner = random_combiner(rng, cfg.n_rx, cfg.n_rf, cfg.n_streams);
        r.objective = analog_objective(r.combiner, t.cov, noise);
        finish_switch(r);
        out.evaluations = 0;
        break;
    }
    case Scheme::ps_baseline: {
        const ComplexMatrix W = ps_baseline_combiner(H, cfg.n_rf);
        stop_clock();
        out.se = hybrid_spectral_efficiency(W, H, F, noise);
        out.objective = out.se;
        out.arch = Architecture::phase_shifter_hybrid;
        break;
    }
    }
    return out;
}

inline std::vector<double> axis_points(const ExperimentSpec &spec)
{
    if (spec.sweep_axis == SweepAxis::none)
        return {0.0};
    return spec.sweep_values;
}

inline double axis_value_for_row(const ExperimentSpec &spec, double v)
{
    return spec.sweep_axis == SweepAxis::none ? linear_to_db(spec.base.snr_linear) : v;
}

inline void check_dimension_guard(const ExperimentSpec &spec)
{
    const bool wants_es = std::find(spec.schemes.begin(), spec.schemes.end(), Scheme::sw_es) != spec.schemes.end();
    if (wants_es && spec.base.n_rx * spec.base.n_rf > exhaustive_max_bits)
        throw DimensionGuardError("scheme sw-es needs n_rx * n_rf <= " + std::to_string(exhaustive_max_bits) +
                                  ", got " + std::to_string(spec.base.n_rx * spec.base.n_rf));
}

// One row per (scheme, axis value, trial). All schemes of a trial share one channel draw and one precoder design.
inline std::vector<ResultRow> run_experiment(const ExperimentSpec &spec)
{
    spec.validate();
    check_dimension_guard(spec);

    std::vector<ResultRow> rows;
    const std::string axis_name = to_string(spec.sweep_axis);
    for (double value : axis_points(spec))
    {
        const SystemConfig cfg = apply_axis(spec.base, spec.sweep_axis, value);
        try
        {
            cfg.validate();
        }
        catch (const std::exception &e)
        {
            throw ConfigError(std::string("axis value ") + std::to_string(value) + ": " + e.what());
        }
        const TabuConfig tabu_cfg = resolve_tabu(spec.tabu, cfg);

        for (int trial = 0; trial < spec.n_trials; ++trial)
        {
            const TrialInstance t = make_trial(cfg, trial);
            for (Scheme s : spec.schemes)
            {
                const SchemeOutcome o = evaluate_scheme(s, t, trial, tabu_cfg, spec.pga);
                ResultRow r;
                r.scheme = to_string(s);
                r.axis = axis_name;
                r.axis_value = axis_value_for_row(spec, value);
                r.trial = trial;
                r.se = std::max(0.0, o.se);
                r.ee = energy_efficiency(r.se, total_power(o.arch, cfg.n_rx, cfg.n_rf, spec.powers));
                r.solver_evaluations = o.evaluations;
                r.wall_time_s = spec.record_wall_time ? o.solver_seconds : 0.0;
                rows.push_back(std::move(r));
            }
        }
    }
    return rows;
}

inline std::vector<ResultRow> run_snr_sweep(ExperimentSpec spec)
{
    spec.sweep_axis = SweepAxis::snr;
    return run_experiment(spec);
}

// T_s = 1/B is re-derived per point; D stays K/4.
inline std::vector<ResultRow> run_bandwidth_sweep(ExperimentSpec spec)
{
    spec.sweep_axis = SweepAxis::bandwidth;
    return run_experiment(spec);
}

// D = K/4 is re-derived per point unless cp_length is pinned.
inline std::vector<ResultRow> run_subcarrier_sweep(ExperimentSpec spec)
{
    spec.sweep_axis = SweepAxis::subcarriers;
    return run_experiment(spec);
}

// Mean SE per (scheme, axis value), ordered by scheme then axis value.
struct MeanPoint
{
    std::string scheme;
    double axis_value;
    double mean_se;
    double mean_ee;
    int count;
};

inline std::vector<MeanPoint> mean_by_scheme(const std::vector<ResultRow> &rows)
{
    std::vector<MeanPoint> out;
    for (const auto &r : rows)
    {
        auto it = std::find_if(out.begin(), out.end(), [&](const MeanPoint &m) {
            return m.scheme == r.scheme && m.axis_value == r.axis_value;
        });
        if (it == out.end())
            out.push_back({r.scheme, r.axis_value, r.se, r.ee, 1});
        else
        {
            it->mean_se += r.se;
            it->mean_ee += r.ee;
            ++it->count;
        }
    }
    for (auto &m : out)
    {
        m.mean_se /= m.count;
        m.mean_ee /= m.count;
    }
    std::sort(out.begin(), out.end(), [](const MeanPoint &a, const MeanPoint &b) {
        return a.scheme != b.scheme ? a.scheme < b.scheme : a.axis_value < b.axis_value;
    });
    return out;
}

inline double mean_se(const std::vector<ResultRow> &rows, const std::string &scheme, double axis_value)
{
    double acc = 0.0;
    int n = 0;
    for (const auto &r : rows)
        if (r.scheme == scheme && r.axis_value == axis_value)
        {
            acc += r.se;
            ++n;
        }
    return n ? acc / n : std::numeric_limits<double>::quiet_NaN();
}

// ---------- oracle comparison ----------

struct RatioStats
{
    std::string scheme;
    double mean_ratio = 0.0;
    double min_ratio = 0.0;
    double frac_at_least_95 = 0.0;
    std::vector<double> ratios;
};

struct OracleSummary
{
    int trials = 0;
    std::vector<RatioStats> schemes; // sw-es, sw-ts, sw-pga-ts
};

// N_r = 4, N_RF = N_s = 2, K = 4 at 10 dB: small enough for exhaustive search on every trial.
inline ExperimentSpec oracle_default_spec()
{
    ExperimentSpec s;
    s.base.n_rx = 4;
    s.base.n_rf = 2;
    s.base.n_streams = 2;
    s.base.n_subcarriers = 4;
    s.base.snr_linear = db_to_linear(10.0);
    s.n_trials = 50;
    s.schemes = {Scheme::sw_es, Scheme::sw_ts, Scheme::sw_pga_ts};
    return s;
}

// Ratio f(scheme) / f(ES) of the analog objective on paired instances.
inline OracleSummary oracle_compare(const ExperimentSpec &spec)
{
    spec.validate();
    if (spec.base.n_rx * spec.base.n_rf > exhaustive_max_bits)
        throw DimensionGuardError("oracle-compare needs n_rx * n_rf <= " + std::to_string(exhaustive_max_bits));
    const SystemConfig &cfg = spec.base;
    const TabuConfig tabu_cfg = resolve_tabu(spec.tabu, cfg);

    OracleSummary out;
    out.trials = spec.n_trials;
    const std::vector<Scheme> compared = {Scheme::sw_es, Scheme::sw_ts, Scheme::sw_pga_ts};
    for (Scheme s : compared)
        out.schemes.push_back({to_string(s), 0.0, 0.0, 0.0, {}});

    for (int trial = 0; trial < spec.n_trials; ++trial)
    {
        const TrialInstance t = make_trial(cfg, trial);
        const double es = evaluate_scheme(Scheme::sw_es, t, trial, tabu_cfg, spec.pga).objective;
        for (std::size_t i = 0; i < compared.size(); ++i)
        {
            const double f = i == 0 ? es : evaluate_scheme(compared[i], t, trial, tabu_cfg, spec.pga).objective;
            out.schemes[i].ratios.push_back(es > 0.0 ? f / es : 1.0);
        }
    }
    for (auto &s : out.schemes)
    {
        double acc = 0.0;
        double lo = std::numeric_limits<double>::infinity();
        int good = 0;
        for (double r : s.ratios)
        {
            acc += r;
            lo = std::min(lo, r);
            if (r >= 0.95)
                ++good;
        }
        s.mean_ratio = acc / static_cast<double>(s.ratios.size());
        s.min_ratio = lo;
        s.frac_at_least_95 = static_cast<double>(good) / static_cast<double>(s.ratios.size());
    }
    return out;
}

} // namespace swhbf

#endif
