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

#ifndef SWHBF_POWERMODEL_HPP
#define SWHBF_POWERMODEL_HPP

#include <stdexcept>
#include <string_view>

namespace swhbf
{

// Per-device power draw in milliwatts. Defaults are the reference receiver front-end values.
struct DevicePowers
{
    double lna_mw = 39.0;
    double splitter_mw = 19.5;
    double combiner_mw = 19.5;
    double phase_shifter_mw = 30.0;
    double switch_mw = 5.0;
    double mixer_mw = 19.0;
    double lo_mw = 5.0;
    double lpf_mw = 14.0;
    double bb_amp_mw = 5.0;
    double adc_mw = 240.0;

    void validate() const
    {
        for (double v : {lna_mw, splitter_mw, combiner_mw, phase_shifter_mw, switch_mw, mixer_mw, lo_mw, lpf_mw,
                         bb_amp_mw, adc_mw})
            if (!(v >= 0.0))
                throw std::invalid_argument("DevicePowers: all device powers must be >= 0");
    }
};

enum class Architecture
{
    fully_digital,
    phase_shifter_hybrid,
    switch_hybrid,
};

inline std::string_view to_string(Architecture a)
{
    switch (a)
    {
    case Architecture::fully_digital:
        return "fully-digital";
    case Architecture::phase_shifter_hybrid:
        return "phase-shifter-hybrid";
    case Architecture::switch_hybrid:
        return "switch-hybrid";
    }
    return "unknown";
}

// Mixer + LO + LPF + baseband amplifier.
inline double rf_chain_power(const DevicePowers &p)
{
    return p.mixer_mw + p.lo_mw + p.lpf_mw + p.bb_amp_mw;
}

// Receiver total in mW. Each RF chain feeds two ADCs (I and Q).
inline double total_power(Architecture arch, int n_rx, int n_rf, const DevicePowers &p)
{
    if (n_rx < 1)
        throw std::invalid_argument("total_power: n_rx must be >= 1");
    const double p_rf = rf_chain_power(p);
    switch (arch)
    {
    case Architecture::fully_digital:
        return n_rx * (p.lna_mw + p_rf + 2.0 * p.adc_mw);
    case Architecture::phase_shifter_hybrid:
    case Architecture::switch_hybrid: {
        if (n_rf < 1)
            throw std::invalid_argument("total_power: n_rf must be >= 1 for hybrid receivers");
        const double per_link = arch == Architecture::switch_hybrid ? p.switch_mw : p.phase_shifter_mw;
        return n_rx * (p.lna_mw + p.splitter_mw + n_rf * per_link) + n_rf * (p_rf + p.combiner_mw + 2.0 * p.adc_mw);
    }
    }
    throw std::invalid_argument("total_power: unknown architecture");
}

// bits/s/Hz per watt; power is given in mW.
inline double energy_efficiency(double se, double total_power_mw)
{
    if (!(total_power_mw > 0.0))
        throw std::domain_error("energy_efficiency: total power must be positive");
    return se / (total_power_mw / 1000.0);
}

} // namespace swhbf

#endif
