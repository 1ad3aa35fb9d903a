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

// Generators and independent reference computations shared by the unit and acceptance tests.

#ifndef SWHBF_TEST_HELPERS_HPP
#define SWHBF_TEST_HELPERS_HPP

#include <swhbf/swhbf.hpp>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

namespace swhbf::testing
{

inline ComplexMatrix random_complex(int rows, int cols, std::mt19937_64 &rng)
{
    std::normal_distribution<double> g(0.0, 1.0);
    ComplexMatrix A(rows, cols);
    for (int c = 0; c < cols; ++c)
        for (int r = 0; r < rows; ++r)
            A(r, c) = {g(rng), g(rng)};
    return A;
}

inline RealMatrix random_interior(int rows, int cols, std::mt19937_64 &rng, double lo = 0.05, double hi = 0.95)
{
    std::uniform_real_distribution<double> u(lo, hi);
    RealMatrix W(rows, cols);
    for (int c = 0; c < cols; ++c)
        for (int r = 0; r < rows; ++r)
            W(r, c) = u(rng);
    return W;
}

inline ComplexMatrix diag_real(std::initializer_list<double> d)
{
    ComplexMatrix M = ComplexMatrix::Zero(static_cast<Eigen::Index>(d.size()), static_cast<Eigen::Index>(d.size()));
    Eigen::Index i = 0;
    for (double v : d)
        M(i, i) = v, ++i;
    return M;
}

inline EffectiveCovarianceSet single_cov(const ComplexMatrix &M)
{
    std::vector<ComplexMatrix> v{M};
    return EffectiveCovarianceSet::from_matrices(v);
}

// Literal evaluation of (1/K) sum_k log2 det(I + W^+ Ftilde_k W / noise): SVD pseudo-inverse, full covariance
// matrices and an LU determinant. Shares nothing with the basis/Cholesky route used by analog_objective.
inline double literal_objective(const ComplexMatrix &W, const std::vector<ComplexMatrix> &ftilde, double noise)
{
    const ComplexMatrix Wp = pinv(W);
    double acc = 0.0;
    for (const auto &F : ftilde)
    {
        const ComplexMatrix A = ComplexMatrix::Identity(W.cols(), W.cols()) + Wp * F * W / noise;
        acc += std::log2(std::abs(A.determinant()));
    }
    return acc / static_cast<double>(ftilde.size());
}

// Central finite-difference gradient of the relaxed objective.
inline RealMatrix finite_difference_gradient(const RealMatrix &W, const EffectiveCovarianceSet &cov, double noise,
                                             double h = 1e-6)
{
    RealMatrix g(W.rows(), W.cols());
    for (Eigen::Index c = 0; c < W.cols(); ++c)
        for (Eigen::Index r = 0; r < W.rows(); ++r)
        {
            RealMatrix wp = W, wm = W;
            wp(r, c) += h;
            wm(r, c) -= h;
            g(r, c) = (analog_objective(wp, cov, noise) - analog_objective(wm, cov, noise)) / (2.0 * h);
        }
    return g;
}

// |sin(N delta / 2) / (N sin(delta / 2))| with delta = 2 pi spacing sin(phi) (f / f_c - 1), the array factor of a
// ULA matched at f_c and evaluated at f along the focus direction.
inline double dirichlet_gain(int n, double spacing, double phi, double f, double fc)
{
    const double delta = 2.0 * std::numbers::pi * spacing * std::sin(phi) * (f / fc - 1.0);
    if (delta == 0.0)
        return 1.0;
    return std::abs(std::sin(n * delta / 2.0) / (n * std::sin(delta / 2.0)));
}

// A complete random instance with channel, precoders and covariances.
struct Instance
{
    SystemConfig cfg;
    std::vector<ComplexMatrix> H;
    PrecoderSet F;
    EffectiveCovarianceSet cov;
};

inline Instance make_instance(SystemConfig cfg, std::uint64_t seed)
{
    Instance in;
    in.cfg = cfg;
    std::mt19937_64 rng(seed);
    in.H = draw_channel(rng, cfg).subcarrier_channels;
    in.F = design_precoders(in.H, cfg);
    in.cov = effective_covariances(in.H, in.F.precoders);
    return in;
}

inline SystemConfig small_dims(int n_tx, int n_rx, int n_rf, int n_s, int K)
{
    SystemConfig c;
    c.n_tx = n_tx;
    c.n_rx = n_rx;
    c.n_rf = n_rf;
    c.n_streams = n_s;
    c.n_subcarriers = K;
    c.n_clusters = 4;
    return c;
}

} // namespace swhbf::testing

#endif
