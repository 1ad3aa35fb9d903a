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

#include <catch2/catch_amalgamated.hpp>

#include "test_helpers.hpp"

#include <numeric>

using namespace swhbf;
using swhbf::testing::random_complex;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("water filling closed-form cases", "[txbeam]")
{
    const std::vector<double> same{2.5, 2.5, 2.5};
    const auto a = water_fill(same, 3.0, 1.0);
    for (double p : a.powers)
        CHECK_THAT(p, WithinRel(1.0, 1e-14));

    const std::vector<double> single{0.3};
    CHECK_THAT(water_fill(single, 7.0, 2.0).powers[0], WithinRel(7.0, 1e-14));

    // Both channels active: mu - 1/2 + mu - 1 = 1.
    const std::vector<double> two{2.0, 1.0};
    const auto b = water_fill(two, 1.0, 1.0);
    CHECK_THAT(b.water_level, WithinAbs(1.25, 1e-12));
    CHECK_THAT(b.powers[0], WithinAbs(0.75, 1e-12));
    CHECK_THAT(b.powers[1], WithinAbs(0.25, 1e-12));

    CHECK_THROWS_AS(water_fill(std::vector<double>{}, 1.0, 1.0), InvalidInputError);
    CHECK_THROWS_AS(water_fill(two, 0.0, 1.0), InvalidInputError);
}

TEST_CASE("water filling satisfies the budget and KKT conditions", "[txbeam][property]")
{
    std::mt19937_64 rng(31);
    std::lognormal_distribution<double> gain(0.0, 2.0);
    std::uniform_real_distribution<double> budget(0.01, 100.0);
    for (int t = 0; t < 200; ++t)
    {
        std::vector<double> g(1 + rng() % 20);
        for (auto &x : g)
            x = gain(rng);
        const double P = budget(rng);
        const double noise = 0.5;
        const auto wf = water_fill(g, P, noise);
        const double total = std::accumulate(wf.powers.begin(), wf.powers.end(), 0.0);
        CHECK(std::abs(total - P) <= 1e-9 * P);
        for (std::size_t i = 0; i < g.size(); ++i)
        {
            const double floor = noise / g[i];
            CHECK(wf.powers[i] == std::max(wf.water_level - floor, 0.0));
            CHECK((wf.powers[i] > 0.0) == (wf.water_level > floor));
        }
    }
}

TEST_CASE("precoders for a single subcarrier and stream", "[txbeam]")
{
    SystemConfig cfg = swhbf::testing::small_dims(4, 3, 1, 1, 1);
    std::mt19937_64 rng(32);
    const std::vector<ComplexMatrix> H{random_complex(3, 4, rng)};
    const auto F = design_precoders(H, cfg);
    const ComplexMatrix &f = F.precoders[0];
    CHECK_THAT(f.squaredNorm(), WithinRel(cfg.power_budget(), 1e-12));
    const ComplexVector v = svd(H[0]).V.col(0);
    CHECK_THAT(std::abs(v.dot(f.col(0))), WithinRel(f.norm(), 1e-12)); // colinear with v
}

TEST_CASE("identical subcarriers receive identical power", "[txbeam]")
{
    SystemConfig cfg = swhbf::testing::small_dims(4, 4, 2, 2, 3);
    std::mt19937_64 rng(33);
    const ComplexMatrix h = random_complex(4, 4, rng);
    const std::vector<ComplexMatrix> H{h, h, h};
    const auto F = design_precoders(H, cfg);
    for (int k = 1; k < 3; ++k)
        for (int i = 0; i < 2; ++i)
            CHECK_THAT(F.powers(k, i), WithinRel(F.powers(0, i), 1e-12));
}

TEST_CASE("power allocation flattens at high SNR", "[txbeam]")
{
    SystemConfig cfg = swhbf::testing::small_dims(4, 4, 2, 2, 4);
    std::mt19937_64 rng(34);
    std::vector<ComplexMatrix> H;
    for (int k = 0; k < 4; ++k)
        H.push_back(random_complex(4, 4, rng));
    double prev_spread = std::numeric_limits<double>::infinity();
    for (double snr : {1.0, 1e2, 1e4, 1e6})
    {
        cfg.snr_linear = snr;
        const auto F = design_precoders(H, cfg);
        const double mean = F.powers.mean();
        const double spread = (F.powers.maxCoeff() - F.powers.minCoeff()) / mean;
        CHECK(spread < prev_spread);
        prev_spread = spread;
    }
    CHECK(prev_spread < 1e-4);
}

TEST_CASE("precoder power budget and zero-channel handling", "[txbeam][property]")
{
    std::mt19937_64 rng(35);
    for (int t = 0; t < 20; ++t)
    {
        const auto in = swhbf::testing::make_instance(swhbf::testing::small_dims(6, 4, 2, 2, 8), rng());
        double frob = 0.0;
        for (const auto &f : in.F.precoders)
            frob += f.squaredNorm();
        CHECK_THAT(frob, WithinRel(in.F.total_power(), 1e-10));
        CHECK(frob <= in.cfg.power_budget() * (1 + 1e-10));
        CHECK(std::abs(in.F.total_power() - in.cfg.power_budget()) <= 1e-9 * in.cfg.power_budget());
    }

    SystemConfig cfg = swhbf::testing::small_dims(3, 3, 1, 1, 2);
    const std::vector<ComplexMatrix> zero{ComplexMatrix::Zero(3, 3), ComplexMatrix::Zero(3, 3)};
    const auto F = design_precoders(zero, cfg);
    CHECK(F.total_power() == 0.0);
    CHECK(F.precoders[1].norm() == 0.0);
    CHECK(dbf_spectral_efficiency(zero, F.precoders, cfg.noise_power) == 0.0);
}

TEST_CASE("fully digital spectral efficiency", "[txbeam]")
{
    SystemConfig cfg = swhbf::testing::small_dims(1, 1, 1, 1, 1);
    cfg.snr_linear = 5.0;
    cfg.noise_power = 0.5;
    const std::vector<ComplexMatrix> H{ComplexMatrix::Constant(1, 1, cdouble(0.0, 2.0))};
    const auto F = design_precoders(H, cfg);
    const double Pb = cfg.power_budget();
    CHECK_THAT(dbf_spectral_efficiency(H, F.precoders, cfg.noise_power),
               WithinRel(std::log2(1.0 + 4.0 * Pb / cfg.noise_power), 1e-12));

    const std::vector<ComplexMatrix> Fz{ComplexMatrix::Zero(1, 1)};
    CHECK(dbf_spectral_efficiency(H, Fz, 1.0) == 0.0);
}

TEST_CASE("fully digital SE equals the per-mode capacity sum", "[txbeam][property]")
{
    std::mt19937_64 rng(36);
    for (int t = 0; t < 20; ++t)
    {
        const auto in = swhbf::testing::make_instance(swhbf::testing::small_dims(6, 4, 2, 2, 8), rng());
        double ref = 0.0;
        for (std::size_t k = 0; k < in.H.size(); ++k)
        {
            const RealVector s = singular_values(in.H[k]);
            for (int i = 0; i < 2; ++i)
                ref += std::log2(1.0 + in.F.powers(static_cast<Eigen::Index>(k), i) * s(i) * s(i) / in.cfg.noise_power);
        }
        ref /= static_cast<double>(in.H.size());
        CHECK_THAT(dbf_spectral_efficiency(in.H, in.F.precoders, in.cfg.noise_power), WithinRel(ref, 1e-9));
    }
}

TEST_CASE("fully digital SE never decreases with the power budget", "[txbeam][property]")
{
    std::mt19937_64 rng(37);
    auto in = swhbf::testing::make_instance(swhbf::testing::small_dims(6, 4, 2, 2, 8), 37);
    double prev = 0.0;
    for (double snr : {0.01, 0.1, 1.0, 10.0, 100.0, 1000.0})
    {
        in.cfg.snr_linear = snr;
        const auto F = design_precoders(in.H, in.cfg);
        const double se = dbf_spectral_efficiency(in.H, F.precoders, in.cfg.noise_power);
        CHECK(se >= prev);
        prev = se;
    }
}
