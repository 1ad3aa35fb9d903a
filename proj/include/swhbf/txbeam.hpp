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

#ifndef SWHBF_TXBEAM_HPP
#define SWHBF_TXBEAM_HPP

#include "channel.hpp"
#include "numkernel.hpp"

#include <algorithm>
#include <numeric>
#include <span>
#include <vector>

namespace swhbf
{

struct WaterFillResult
{
    std::vector<double> powers;
    double water_level = 0.0;
};

// Fully digital per-subcarrier precoders F_k = V_k diag(sqrt(p_k)).
struct PrecoderSet
{
    std::vector<ComplexMatrix> precoders; // K matrices, n_tx x n_streams
    RealMatrix powers;                    // K x n_streams
    double water_level = 0.0;

    double total_power() const { return powers.sum(); }
};

// Water-filling over parallel channels with gains lambda_i: p_i = max(mu - noise / lambda_i, 0), sum p_i = budget.
// The water level is found in closed form from the sorted breakpoints noise / lambda_i.
inline WaterFillResult water_fill(std::span<const double> gains, double budget, double noise)
{
    if (gains.empty())
        throw InvalidInputError("water_fill: empty gain list");
    if (!(budget > 0.0))
        throw InvalidInputError("water_fill: budget must be positive");
    if (!(noise > 0.0))
        throw InvalidInputError("water_fill: noise must be positive");
    for (double g : gains)
        if (!(g > 0.0) || !std::isfinite(g))
            throw InvalidInputError("water_fill: gains must be positive and finite");

    const std::size_t n = gains.size();
    std::vector<double> floor_level(n);
    for (std::size_t i = 0; i < n; ++i)
        floor_level[i] = noise / gains[i];

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return floor_level[a] < floor_level[b]; });

    // Largest active set m with mu_m > floor of its m-th member.
    double prefix = 0.0;
    double mu = 0.0;
    for (std::size_t m = 1; m <= n; ++m)
    {
        prefix += floor_level[order[m - 1]];
        const double candidate = (budget + prefix) / static_cast<double>(m);
        if (candidate > floor_level[order[m - 1]])
            mu = candidate;
        else
            break;
    }

    WaterFillResult out;
    out.water_level = mu;
    out.powers.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        out.powers[i] = std::max(mu - floor_level[i], 0.0);
    return out;
}

// SVD precoding with one water level shared by all K * n_streams modes.
inline PrecoderSet design_precoders(std::span<const ComplexMatrix> channels, const SystemConfig &cfg)
{
    const int K = static_cast<int>(channels.size());
    const int Ns = cfg.n_streams;

    PrecoderSet out;
    out.powers = RealMatrix::Zero(K, Ns);
    out.precoders.assign(static_cast<std::size_t>(K), ComplexMatrix::Zero(cfg.n_tx, Ns));

    std::vector<SvdResult> decomp;
    decomp.reserve(static_cast<std::size_t>(K));
    double s_max = 0.0;
    for (const auto &H : channels)
    {
        decomp.push_back(svd(H));
        if (decomp.back().s.size() > 0)
            s_max = std::max(s_max, decomp.back().s(0));
    }
    if (s_max == 0.0)
        return out;

    // Modes with a zero singular value never receive power.
    struct Mode
    {
        int k;
        int i;
    };
    std::vector<Mode> modes;
    std::vector<double> gains;
    for (int k = 0; k < K; ++k)
    {
        const auto &s = decomp[static_cast<std::size_t>(k)].s;
        for (int i = 0; i < std::min<int>(Ns, static_cast<int>(s.size())); ++i)
        {
            if (s(i) > 1e-12 * s_max)
            {
                modes.push_back({k, i});
                gains.push_back(s(i) * s(i));
            }
        }
    }

    const WaterFillResult wf = water_fill(gains, cfg.power_budget(), cfg.noise_power);
    out.water_level = wf.water_level;
    for (std::size_t m = 0; m < modes.size(); ++m)
    {
        const auto [k, i] = modes[m];
        out.powers(k, i) = wf.powers[m];
        out.precoders[static_cast<std::size_t>(k)].col(i) =
            decomp[static_cast<std::size_t>(k)].V.col(i) * std::sqrt(wf.powers[m]);
    }
    return out;
}

// Fully digital receiver bound: (1/K) sum_k log2 det(I + H_k F_k F_k^H H_k^H / noise).
inline double dbf_spectral_efficiency(std::span<const ComplexMatrix> channels, std::span<const ComplexMatrix> precoders,
                                      double noise)
{
    if (channels.size() != precoders.size())
        throw InvalidInputError("dbf_spectral_efficiency: channel/precoder count mismatch");
    if (channels.empty())
        return 0.0;
    double acc = 0.0;
    for (std::size_t k = 0; k < channels.size(); ++k)
    {
        const ComplexMatrix G = channels[k] * precoders[k];
        // det(I + G G^H / noise) = det(I + G^H G / noise)
        acc += logdet2_eye_plus(G.adjoint() * G, 1.0 / noise);
    }
    return acc / static_cast<double>(channels.size());
}

} // namespace swhbf

#endif
