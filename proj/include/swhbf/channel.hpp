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

#ifndef SWHBF_CHANNEL_HPP
#define SWHBF_CHANNEL_HPP

#include "numkernel.hpp"

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace swhbf
{

// Scenario scalars shared by every module.
struct SystemConfig
{
    int n_tx = 16;                           // transmit antennas
    int n_rx = 8;                            // receive antennas
    int n_rf = 2;                            // receive RF chains
    int n_streams = 2;                       // data streams per subcarrier
    int n_subcarriers = 64;                  // K
    double bandwidth_hz = 1e9;               // B
    double carrier_hz = 60e9;                // f_c
    int n_clusters = 10;                     // scattering clusters
    int cp_length = 0;                       // D; 0 selects K/4 (at least 1)
    double antenna_spacing_wavelengths = 0.5;
    double snr_linear = 10.0;                // P_b / (K * noise_power)
    double noise_power = 1.0;
    std::uint64_t seed = 1;
    double rolloff = 1.0;                    // raised-cosine roll-off
    bool normalize_gain = false;             // scale taps by sqrt(n_tx * n_rx / n_clusters)

    int taps() const
    {
        if (cp_length > 0)
            return cp_length;
        return std::max(1, n_subcarriers / 4);
    }
    double sample_period() const { return 1.0 / bandwidth_hz; }
    double power_budget() const { return n_subcarriers * snr_linear * noise_power; }

    void validate() const
    {
        auto fail = [](const std::string &what) { throw InvalidInputError("SystemConfig: " + what); };
        if (n_tx < 1 || n_rx < 1 || n_rf < 1 || n_streams < 1)
            fail("antenna, RF-chain and stream counts must be >= 1");
        if (n_streams > n_rf)
            fail("n_streams must not exceed n_rf");
        if (n_rf > n_rx)
            fail("n_rf must not exceed n_rx");
        if (n_streams > n_tx)
            fail("n_streams must not exceed n_tx");
        if (n_subcarriers < 1)
            fail("n_subcarriers must be >= 1");
        if (!(bandwidth_hz > 0.0))
            fail("bandwidth_hz must be positive");
        if (!(carrier_hz > bandwidth_hz / 2.0))
            fail("carrier_hz must exceed bandwidth_hz / 2");
        if (n_clusters < 1)
            fail("n_clusters must be >= 1");
        if (cp_length < 0)
            fail("cp_length must be >= 0 (0 selects K/4)");
        if (!(antenna_spacing_wavelengths > 0.0))
            fail("antenna_spacing_wavelengths must be positive");
        if (!(snr_linear > 0.0))
            fail("snr must be positive");
        if (!(noise_power > 0.0))
            fail("noise_power must be positive");
        if (!(rolloff > 0.0 && rolloff <= 1.0))
            fail("rolloff must lie in (0, 1]");
    }
};

struct ClusterParams
{
    cdouble gain;
    double delay_s = 0.0;
    double aoa_rad = 0.0;
    double aod_rad = 0.0;
};

struct ChannelRealization
{
    std::vector<ClusterParams> clusters;
    std::vector<ComplexMatrix> subcarrier_channels; // K matrices, n_rx x n_tx
};

// Centre frequency of subcarrier k (1-based).
inline double subcarrier_frequency(int k, const SystemConfig &cfg)
{
    const int K = cfg.n_subcarriers;
    if (k < 1 || k > K)
        throw std::out_of_range("subcarrier_frequency: k=" + std::to_string(k) + " outside [1, " +
                                std::to_string(K) + "]");
    return cfg.carrier_hz + (k - (K + 1) / 2.0) * cfg.bandwidth_hz / K;
}

// ULA response; element n is exp(-j 2 pi n spacing sin(theta) f / f_c).
inline ComplexVector steering_vector(double theta, double f, int n_ant, double spacing, double f_c)
{
    ComplexVector a(n_ant);
    const double phase_step = -2.0 * std::numbers::pi * spacing * std::sin(theta) * f / f_c;
    for (int n = 0; n < n_ant; ++n)
        a(n) = std::polar(1.0, phase_step * n);
    return a;
}

// Raised-cosine pulse with normalised sinc.
inline double pulse_shape(double t, double sample_period, double beta)
{
    auto sinc = [](double x) {
        if (x == 0.0)
            return 1.0;
        const double px = std::numbers::pi * x;
        return std::sin(px) / px;
    };
    const double x = t / sample_period;
    const double edge = 1.0 / (2.0 * beta);
    if (std::abs(std::abs(x) - edge) <= 1e-12 * std::max(1.0, edge))
        return std::numbers::pi / 4.0 * sinc(edge);
    const double d = 2.0 * beta * x;
    return sinc(x) * std::cos(std::numbers::pi * beta * x) / (1.0 - d * d);
}

// L clusters: CN(0,1) gains, delays uniform on [0, (D-1) T_s], AoA/AoD uniform on [0, 2 pi).
template <typename Rng>
std::vector<ClusterParams> draw_clusters(Rng &rng, const SystemConfig &cfg)
{
    std::normal_distribution<double> gauss(0.0, std::sqrt(0.5));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double max_delay = (cfg.taps() - 1) * cfg.sample_period();

    std::vector<ClusterParams> out(static_cast<std::size_t>(cfg.n_clusters));
    for (auto &c : out)
    {
        const double re = gauss(rng);
        const double im = gauss(rng);
        c.gain = {re, im};
        c.delay_s = unit(rng) * max_delay;
        c.aoa_rad = unit(rng) * 2.0 * std::numbers::pi;
        c.aod_rad = unit(rng) * 2.0 * std::numbers::pi;
    }
    return out;
}

namespace detail
{
inline double gain_scale(const SystemConfig &cfg)
{
    if (!cfg.normalize_gain)
        return 1.0;
    return std::sqrt(static_cast<double>(cfg.n_tx) * cfg.n_rx / cfg.n_clusters);
}
} // namespace detail

// Tap d of the channel at frequency f.
inline ComplexMatrix channel_tap(std::span<const ClusterParams> clusters, int d, double f, const SystemConfig &cfg)
{
    if (d < 0 || d >= cfg.taps())
        throw std::out_of_range("channel_tap: tap index " + std::to_string(d) + " outside [0, D)");
    const double Ts = cfg.sample_period();
    const double spacing = cfg.antenna_spacing_wavelengths;
    ComplexMatrix H = ComplexMatrix::Zero(cfg.n_rx, cfg.n_tx);
    for (const auto &c : clusters)
    {
        const double p = pulse_shape(d * Ts - c.delay_s, Ts, cfg.rolloff);
        if (p == 0.0)
            continue;
        const ComplexVector ar = steering_vector(c.aoa_rad, f, cfg.n_rx, spacing, cfg.carrier_hz);
        const ComplexVector at = steering_vector(c.aod_rad, f, cfg.n_tx, spacing, cfg.carrier_hz);
        H.noalias() += (c.gain * p) * ar * at.adjoint();
    }
    return H * detail::gain_scale(cfg);
}

// H_k = sum_d H_{f_k}[d] exp(-j 2 pi k d / K), with the taps re-evaluated at f_k.
// The tap sum is accumulated per cluster so each steering outer product is formed once per subcarrier.
inline std::vector<ComplexMatrix> subcarrier_channels(std::span<const ClusterParams> clusters, const SystemConfig &cfg)
{
    const int K = cfg.n_subcarriers;
    const int D = cfg.taps();
    const double Ts = cfg.sample_period();
    const double spacing = cfg.antenna_spacing_wavelengths;
    const double scale = detail::gain_scale(cfg);

    // pulse[l][d] = p(d T_s - tau_l)
    std::vector<std::vector<double>> pulse(clusters.size(), std::vector<double>(static_cast<std::size_t>(D)));
    for (std::size_t l = 0; l < clusters.size(); ++l)
        for (int d = 0; d < D; ++d)
            pulse[l][static_cast<std::size_t>(d)] = pulse_shape(d * Ts - clusters[l].delay_s, Ts, cfg.rolloff);

    std::vector<ComplexMatrix> out;
    out.reserve(static_cast<std::size_t>(K));
    for (int k = 1; k <= K; ++k)
    {
        const double fk = subcarrier_frequency(k, cfg);
        ComplexMatrix H = ComplexMatrix::Zero(cfg.n_rx, cfg.n_tx);
        for (std::size_t l = 0; l < clusters.size(); ++l)
        {
            cdouble coeff = 0.0;
            for (int d = 0; d < D; ++d)
            {
                const double p = pulse[l][static_cast<std::size_t>(d)];
                if (p != 0.0)
                    coeff += p * std::polar(1.0, -2.0 * std::numbers::pi * k * d / K);
            }
            if (coeff == 0.0)
                continue;
            const ComplexVector ar = steering_vector(clusters[l].aoa_rad, fk, cfg.n_rx, spacing, cfg.carrier_hz);
            const ComplexVector at = steering_vector(clusters[l].aod_rad, fk, cfg.n_tx, spacing, cfg.carrier_hz);
            H.noalias() += (clusters[l].gain * coeff * scale) * ar * at.adjoint();
        }
        out.push_back(std::move(H));
    }
    return out;
}

template <typename Rng>
ChannelRealization draw_channel(Rng &rng, const SystemConfig &cfg)
{
    ChannelRealization r;
    r.clusters = draw_clusters(rng, cfg);
    r.subcarrier_channels = subcarrier_channels(r.clusters, cfg);
    return r;
}

// |a(focus, f_design)^H a(phi, f_eval)| / n_ant for every phi in the grid.
inline std::vector<double> beam_pattern(double focus, double f_design, double f_eval, int n_ant,
                                        std::span<const double> angle_grid, double spacing, double f_c)
{
    if (angle_grid.empty())
        throw InvalidInputError("beam_pattern: empty angle grid");
    const ComplexVector w = steering_vector(focus, f_design, n_ant, spacing, f_c);
    std::vector<double> out;
    out.reserve(angle_grid.size());
    for (double phi : angle_grid)
    {
        const ComplexVector a = steering_vector(phi, f_eval, n_ant, spacing, f_c);
        out.push_back(std::min(1.0, std::abs(w.dot(a)) / n_ant));
    }
    return out;
}

} // namespace swhbf

#endif
