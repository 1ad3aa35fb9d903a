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

using namespace swhbf;
using swhbf::testing::diag_real;
using swhbf::testing::literal_objective;
using swhbf::testing::random_complex;
using swhbf::testing::single_cov;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("analog combiner storage and conversions", "[rxbeam]")
{
    const auto w = AnalogCombiner::from_mask(3, 2, 0b100001);
    CHECK(w(0, 0));
    CHECK(w(2, 1));
    CHECK_FALSE(w(1, 0));
    CHECK(w.rank() == 2);
    CHECK(w.feasible(2));
    CHECK_FALSE(w.feasible(3));

    AnalogCombiner v = w;
    v.flip(5);
    CHECK(v.rank() == 1);
    CHECK_FALSE(v == w);
    v.flip(5);
    CHECK(v == w);
    CHECK(v.key() == w.key());

    const RealMatrix m = w.to_real();
    CHECK(AnalogCombiner::from_matrix(m) == w);
    CHECK(AnalogCombiner::all_ones(4, 2).rank() == 1);
    CHECK(AnalogCombiner::identity_pattern(4, 3, 2).rank() == 2);

    RealMatrix bad = m;
    bad(0, 0) = 0.5;
    CHECK_THROWS_AS(AnalogCombiner::from_matrix(bad), InvalidInputError);
    CHECK_THROWS_AS(AnalogCombiner(0, 2), InvalidInputError);
    CHECK_THROWS_AS(AnalogCombiner::from_bits(2, 2, {1, 0, 2, 0}), InvalidInputError);
}

TEST_CASE("effective covariances are Hermitian PSD products", "[rxbeam]")
{
    std::mt19937_64 rng(41);
    std::vector<ComplexMatrix> H{random_complex(4, 3, rng), random_complex(4, 3, rng)};
    std::vector<ComplexMatrix> F{random_complex(3, 2, rng), random_complex(3, 2, rng)};
    const auto cov = effective_covariances(H, F);
    REQUIRE(cov.subcarriers() == 2);
    REQUIRE(cov.antennas() == 4);
    for (int k = 0; k < 2; ++k)
    {
        const ComplexMatrix ref = H[k] * F[k] * F[k].adjoint() * H[k].adjoint();
        CHECK((cov.matrix(k) - ref).norm() <= 1e-12 * ref.norm());
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(cov.matrix(k));
        CHECK(eig.eigenvalues().minCoeff() >= -1e-10 * ref.norm());
    }

    std::vector<ComplexMatrix> wrong{random_complex(4, 2, rng)};
    CHECK_THROWS_AS(effective_covariances(H, wrong), InvalidInputError);

    const std::vector<ComplexMatrix> indefinite{diag_real({1.0, -1.0})};
    CHECK_THROWS_AS(EffectiveCovarianceSet::from_matrices(indefinite), NotPsdError);
}

TEST_CASE("analog objective closed-form cases", "[rxbeam]")
{
    // W = e1 picks the first diagonal entry of Ftilde.
    const auto cov = single_cov(diag_real({3.0, 5.0}));
    RealMatrix e1 = RealMatrix::Zero(2, 1);
    e1(0, 0) = 1.0;
    CHECK_THAT(analog_objective(e1, cov, 1.0), WithinAbs(2.0, 1e-12));
    CHECK_THAT(analog_objective(RealMatrix(RealMatrix::Identity(2, 2)), cov, 1.0),
               WithinAbs(std::log2(4.0 * 6.0), 1e-12));
    CHECK(analog_objective(RealMatrix(RealMatrix::Zero(2, 2)), cov, 1.0) == 0.0);

    // Ftilde = 0 gives zero.
    const auto zero = single_cov(ComplexMatrix::Zero(3, 3));
    CHECK(analog_objective(RealMatrix(RealMatrix::Ones(3, 2)), zero, 1.0) == 0.0);
}

TEST_CASE("analog objective matches the literal pseudo-inverse formula", "[rxbeam][property]")
{
    std::mt19937_64 rng(42);
    std::bernoulli_distribution coin(0.5);
    for (int t = 0; t < 100; ++t)
    {
        const int nr = 2 + static_cast<int>(rng() % 7);
        const int nrf = 1 + static_cast<int>(rng() % std::min(nr, 4));
        const int K = 1 + static_cast<int>(rng() % 4);
        std::vector<ComplexMatrix> G;
        for (int k = 0; k < K; ++k)
            G.push_back(random_complex(nr, 1 + static_cast<int>(rng() % 3), rng));
        const auto cov = EffectiveCovarianceSet::from_factors(G);
        RealMatrix W(nr, nrf);
        for (Eigen::Index i = 0; i < W.size(); ++i)
            W.data()[i] = coin(rng) ? 1.0 : 0.0;
        if (numerical_rank(W) == 0)
            continue;
        const double ref = literal_objective(W.cast<cdouble>(), cov.matrices(), 0.7);
        CHECK_THAT(analog_objective(W, cov, 0.7), WithinRel(ref, 1e-9));
    }
}

TEST_CASE("analog objective is invariant under column permutation and duplication", "[rxbeam][property]")
{
    std::mt19937_64 rng(43);
    for (int t = 0; t < 50; ++t)
    {
        const auto in = swhbf::testing::make_instance(swhbf::testing::small_dims(4, 6, 3, 2, 4), rng());
        RealMatrix W = swhbf::testing::random_interior(6, 3, rng);
        RealMatrix P = W;
        P.col(0) = W.col(2);
        P.col(2) = W.col(0);
        const double f = analog_objective(W, in.cov, 1.0);
        CHECK_THAT(analog_objective(P, in.cov, 1.0), WithinRel(f, 1e-10));

        RealMatrix D(6, 4);
        D << W, W.col(1);
        CHECK_THAT(analog_objective(D, in.cov, 1.0), WithinRel(f, 1e-10));
        CHECK(f >= 0.0);
    }
}

TEST_CASE("analog objective grows with the column space", "[rxbeam][property]")
{
    std::mt19937_64 rng(44);
    for (int t = 0; t < 50; ++t)
    {
        const auto in = swhbf::testing::make_instance(swhbf::testing::small_dims(4, 6, 3, 2, 4), rng());
        const RealMatrix W = swhbf::testing::random_interior(6, 3, rng);
        CHECK(analog_objective(RealMatrix(W.leftCols(2)), in.cov, 1.0) <= analog_objective(W, in.cov, 1.0) + 1e-12);
    }
}

TEST_CASE("mmse digital combiner handles singular analog stages", "[rxbeam]")
{
    std::mt19937_64 rng(45);
    const ComplexMatrix H = random_complex(4, 3, rng);
    const ComplexMatrix F = random_complex(3, 2, rng);
    const auto full = mmse_digital_combiner(AnalogCombiner::identity_pattern(4, 2, 2), H, F, 1.0);
    CHECK_FALSE(full.used_pinv);
    CHECK(full.matrix.rows() == 2);
    CHECK(full.matrix.cols() == 2);

    const auto dup = mmse_digital_combiner(AnalogCombiner::all_ones(4, 2), H, F, 1.0);
    CHECK(dup.used_pinv);
    CHECK(dup.matrix.allFinite());

    CHECK_THROWS_AS(mmse_digital_combiner(AnalogCombiner::all_ones(3, 2), H, F, 1.0), InvalidInputError);
}

TEST_CASE("hybrid SE with an MMSE digital stage equals the analog objective", "[rxbeam][property]")
{
    std::mt19937_64 rng(46);
    std::bernoulli_distribution coin(0.5);
    for (int t = 0; t < 60; ++t)
    {
        const int nr = 2 + static_cast<int>(rng() % 7);
        const int nrf = 1 + static_cast<int>(rng() % std::min(nr, 3));
        const int ns = 1 + static_cast<int>(rng() % nrf);
        const auto in = swhbf::testing::make_instance(swhbf::testing::small_dims(ns + 2, nr, nrf, ns, 4), rng());
        AnalogCombiner w(nr, nrf);
        do
        {
            for (int i = 0; i < w.size(); ++i)
                if (coin(rng))
                    w.flip(i);
        } while (!w.feasible(ns));
        const double f = analog_objective(w, in.cov, in.cfg.noise_power);
        const double se = hybrid_spectral_efficiency(w.to_complex(), in.H, in.F.precoders, in.cfg.noise_power);
        CHECK_THAT(se, WithinRel(f, 1e-8));
    }
}
